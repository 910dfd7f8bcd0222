#include "mwkr/john.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mwkr/error.hpp"

namespace mwkr {

namespace {

using DMatrix = Eigen::MatrixXd;
using DVector = Eigen::VectorXd;

CVector random_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss;
  CVector v(d);
  for (int k = 0; k < d; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(k) = cplx(re, im);
  }
  return v;
}

DVector embed(const CVector& v) {
  const int d = static_cast<int>(v.size());
  DVector x(2 * d);
  for (int k = 0; k < d; ++k) {
    x(k) = v(k).real();
    x(d + k) = v(k).imag();
  }
  return x;
}

struct Mvee {
  DMatrix x_inv;
  double g_max = 0.0;
  int iterations = 0;
  double gap = 0.0;
};

void recompute(const DMatrix& pts, const DVector& w, DMatrix& x_inv, DVector& g) {
  const DMatrix x = pts * w.asDiagonal() * pts.transpose();
  x_inv = x.inverse();
  g = (pts.transpose() * x_inv).cwiseProduct(pts.transpose()).rowwise().sum();
}

// Centred minimum-volume enclosing ellipsoid {y : y^T (X^{-1} / g_max) y <= 1}.
Mvee centred_mvee(const DMatrix& pts, int max_iterations, double tolerance) {
  const auto m = pts.cols();
  const double dim = static_cast<double>(pts.rows());
  DVector w = DVector::Constant(m, 1.0 / static_cast<double>(m));
  DMatrix x_inv;
  DVector g;
  recompute(pts, w, x_inv, g);
  Mvee out;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    Eigen::Index j = 0;
    const double g_max = g.maxCoeff(&j);
    if (g_max / dim - 1.0 <= tolerance) break;
    Eigen::Index k = -1;
    double g_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i)
      if (w(i) > 0.0 && g(i) < g_min) {
        g_min = g(i);
        k = i;
      }

    Eigen::Index idx = j;
    double alpha = (g_max - dim) / (dim * (g_max - 1.0));
    bool drop = false;
    if (k >= 0 && dim - g_min > g_max - dim) {
      idx = k;
      const double floor = -w(k) / (1.0 - w(k));
      alpha = g_min < 1.0 ? floor : (g_min - dim) / (dim * (g_min - 1.0));
      if (alpha <= floor) {
        alpha = floor;
        drop = true;
      }
    }
    if (alpha == 0.0) break;

    const double t = alpha / (1.0 - alpha);
    const DVector y = x_inv * pts.col(idx);
    const double denom = 1.0 + t * g(idx);
    x_inv = (x_inv - (t / denom) * y * y.transpose()) / (1.0 - alpha);
    const DVector proj = pts.transpose() * y;
    g = (g - (t / denom) * proj.cwiseProduct(proj)) / (1.0 - alpha);
    w *= 1.0 - alpha;
    w(idx) += alpha;
    if (drop) w(idx) = 0.0;

    if ((iter + 1) % 200 == 0) recompute(pts, w, x_inv, g);
  }
  recompute(pts, w, x_inv, g);
  out.x_inv = x_inv;
  out.g_max = g.maxCoeff();
  out.iterations = iter;
  out.gap = out.g_max / dim - 1.0;
  return out;
}

double ratio(const Norm& rho, const CMatrix& w0, const CVector& v) {
  const double len = (w0 * v).norm();
  return len > 0.0 ? rho(v) / len : 0.0;
}

double inverse_ratio(const Norm& rho, const CMatrix& w0, const CVector& v) {
  const double r = rho(v);
  return r > 0.0 ? (w0 * v).norm() / r : 0.0;
}

// Pattern search on the real coordinates of v for a local maximum of a
// scale-invariant objective; only gains above round-off count.
template <class Objective>
std::pair<double, CVector> refine(const Objective& objective, CVector v) {
  const int d = static_cast<int>(v.size());
  v /= v.norm();
  double best = objective(v);
  double step = 0.05;
  int budget = 20000;
  while (step > 1e-9 && budget > 0) {
    bool improved = false;
    for (int k = 0; k < d && !improved; ++k) {
      for (cplx dir : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
        CVector trial = v;
        trial(k) += step * dir;
        trial /= trial.norm();
        const double r = objective(trial);
        --budget;
        if (r > best * (1.0 + 1e-14)) {
          best = r;
          v = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, v};
}

DMatrix sample_matrix(const std::vector<CVector>& sphere) {
  const int d = static_cast<int>(sphere.front().size());
  DMatrix pts(2 * d, 2 * static_cast<Eigen::Index>(sphere.size()));
  for (std::size_t s = 0; s < sphere.size(); ++s) {
    pts.col(2 * static_cast<Eigen::Index>(s)) = embed(sphere[s]);
    pts.col(2 * static_cast<Eigen::Index>(s) + 1) = embed(cplx(0.0, 1.0) * sphere[s]);
  }
  return pts;
}

CMatrix ellipsoid_root(const DMatrix& q, int d) {
  CMatrix h(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const double a = 0.5 * (q(r, c) + q(d + r, d + c));
      const double b = 0.5 * (q(d + r, c) - q(r, d + c));
      h(r, c) = cplx(a, b);
    }
  return mat_power(HermitianMatrix(CMatrix(0.5 * (h + h.adjoint()))), 0.5).matrix();
}

}  // namespace

JohnFit john_ellipsoid(const Norm& rho, const JohnOptions& options) {
  const int d = rho.dim();
  const int samples = options.sphere_samples > 0 ? options.sphere_samples : 200 * d;
  std::mt19937_64 rng(options.seed);
  const auto on_sphere = [&](const CVector& v) {
    const double r = rho(v);
    require(std::isfinite(r) && r > 0.0, ErrorCode::DegenerateNorm, "norm vanishes on a nonzero vector");
    return CVector(v / r);
  };

  CMatrix w0 = CMatrix::Identity(d, d);
  CMatrix whiten = CMatrix::Identity(d, d);
  std::vector<CVector> outer;
  std::vector<CVector> sphere;
  Mvee fit;
  for (int round = 0; round < options.rounds; ++round) {
    sphere.clear();
    for (int s = 0; s < samples; ++s) sphere.push_back(on_sphere(whiten * random_direction(rng, d)));
    for (const CVector& v : outer) sphere.push_back(on_sphere(v));
    const DMatrix pts = sample_matrix(sphere);
    if (round == 0) {
      Eigen::SelfAdjointEigenSolver<DMatrix> gram(pts * pts.transpose(), Eigen::EigenvaluesOnly);
      const auto& ev = gram.eigenvalues();
      require(ev(0) > 1e-12 * ev(ev.size() - 1), ErrorCode::DegenerateNorm, "sphere sample is rank-deficient");
    }
    fit = centred_mvee(pts, options.max_iterations, options.gap_tolerance);
    w0 = ellipsoid_root(fit.x_inv / fit.g_max, d);
    whiten = w0.inverse();

    std::vector<std::pair<double, CVector>> probes;
    for (int s = 0; s < samples; ++s) {
      const CVector v = whiten * random_direction(rng, d);
      probes.emplace_back(inverse_ratio(rho, w0, v), v);
    }
    std::stable_sort(probes.begin(), probes.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < std::min(options.probes, samples); ++k)
      outer.push_back(refine([&](const CVector& v) { return inverse_ratio(rho, w0, v); }, probes[k].second).second);
  }

  std::vector<std::pair<double, CVector>> candidates;
  for (const CVector& u : sphere) candidates.emplace_back(ratio(rho, w0, u), u);
  for (int s = 0; s < 20 * samples; ++s) {
    const CVector v = whiten * random_direction(rng, d);
    candidates.emplace_back(ratio(rho, w0, v), v);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double scale = candidates.front().first;
  const std::size_t starts = std::min<std::size_t>(8, candidates.size());
  for (std::size_t k = 0; k < starts; ++k)
    scale = std::max(scale, refine([&](const CVector& v) { return ratio(rho, w0, v); }, candidates[k].second).first);
  scale *= 1.0 + 1e-9;

  JohnFit out{HermitianMatrix(CMatrix(scale * w0)), 0.0, scale, fit.iterations, fit.gap,
              static_cast<int>(sphere.size())};
  for (const CVector& u : sphere) out.upper_ratio = std::max(out.upper_ratio, (out.w.matrix() * u).norm());
  return out;
}

SandwichCheck check_sandwich(const HermitianMatrix& w, const Norm& rho, int vectors, std::uint64_t seed,
                             double delta) {
  require(w.dim() == rho.dim(), ErrorCode::ShapeMismatch, "matrix and norm dimensions differ");
  std::mt19937_64 rng(seed);
  const double root_d = std::sqrt(static_cast<double>(w.dim()));
  SandwichCheck out;
  out.min_lower = std::numeric_limits<double>::infinity();
  for (int s = 0; s < vectors; ++s) {
    const CVector v = random_direction(rng, w.dim());
    const double r = rho(v);
    const double len = (w.matrix() * v).norm();
    out.min_lower = std::min(out.min_lower, len / r);
    out.max_upper = std::max(out.max_upper, len / (root_d * r));
  }
  if (vectors == 0) out.min_lower = 1.0;
  out.pass = out.min_lower >= 1.0 && out.max_upper <= 1.0 + delta;
  return out;
}

}  // namespace mwkr
