#include "mwkr/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"

namespace mwkr {

Norm::Norm(int dim, Eval eval, std::string name, std::optional<double> euclidean_bound)
    : dim_(dim), eval_(std::move(eval)), name_(std::move(name)), bound_(euclidean_bound) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::InvalidArgument, "norm dimension must be in [1, 8]");
}

namespace {

double euclid(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

double image_norm(const CMatrix& m, std::span<const cplx> v) {
  const int d = static_cast<int>(m.rows());
  if (d == 1) return std::abs(m(0, 0) * v[0]);
  double s = 0.0;
  for (int r = 0; r < d; ++r) {
    cplx acc = 0.0;
    for (int c = 0; c < d; ++c) acc += m(r, c) * v[static_cast<std::size_t>(c)];
    s += std::norm(acc);
  }
  return std::sqrt(s);
}

}  // namespace

Norm euclidean_norm(int dim) { return Norm(dim, euclid, "euclidean", 1.0); }

Norm lq_norm(int dim, double q) {
  require(q >= 1.0, ErrorCode::InvalidArgument, "l^q norms need q >= 1");
  const double bound = std::isinf(q) ? 1.0 : std::pow(static_cast<double>(dim), std::max(0.0, 1.0 / q - 0.5));
  std::string name = std::isinf(q) ? "l^inf" : "l^" + format_double(q);
  if (std::isinf(q)) {
    return Norm(
        dim,
        [](std::span<const cplx> v) {
          double m = 0.0;
          for (cplx z : v) m = std::max(m, std::abs(z));
          return m;
        },
        name, bound);
  }
  return Norm(
      dim,
      [q](std::span<const cplx> v) {
        double m = 0.0;
        for (cplx z : v) m = std::max(m, std::abs(z));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (cplx z : v) s += std::pow(std::abs(z) / m, q);
        return m * std::pow(s, 1.0 / q);
      },
      name, bound);
}

Norm linear_image_norm(const CMatrix& a) {
  require(a.rows() == a.cols(), ErrorCode::ShapeMismatch, "linear image norm needs a square matrix");
  return Norm(static_cast<int>(a.rows()), [a](std::span<const cplx> v) { return image_norm(a, v); }, "|Av|",
              spectral_norm(a));
}

NormFamily NormFamily::from_weight(const MatrixWeightField& w, double p) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive and finite");
  NormFamily out(w.grid(), w.dim(), "|W^{1/p} v|");
  out.matrices_ = w.powers(1.0 / p);
  out.bounds_.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.bounds_[i] = std::pow(w.spectrum(i).max_eigenvalue(), 1.0 / p);
  return out;
}

NormFamily NormFamily::euclidean(const Grid& grid, int dim) {
  NormFamily out = uniform(grid, euclidean_norm(dim));
  return out;
}

NormFamily NormFamily::uniform(const Grid& grid, const Norm& norm) {
  NormFamily out(grid, norm.dim(), norm.name());
  out.uniform_ = norm;
  if (norm.euclidean_bound()) out.bounds_.assign(grid.size(), *norm.euclidean_bound());
  return out;
}

NormFamily NormFamily::custom(const Grid& grid, int dim, PointEval eval, std::string name, std::vector<double> bounds) {
  require(bounds.empty() || bounds.size() == grid.size(), ErrorCode::ShapeMismatch, "norm bound size mismatch");
  NormFamily out(grid, dim, std::move(name));
  out.custom_ = std::move(eval);
  out.bounds_ = std::move(bounds);
  return out;
}

double NormFamily::operator()(std::size_t i, std::span<const cplx> v) const {
  if (!matrices_.empty()) return image_norm(matrices_[i], v);
  if (uniform_) return (*uniform_)(v);
  return custom_(i, v);
}

namespace {

void check_mask(const Grid& grid, CellMask mask) {
  require(mask.empty() || mask.size() == grid.size(), ErrorCode::ShapeMismatch, "mask size does not match grid");
}

bool active(CellMask mask, std::size_t i) { return mask.empty() || mask[i] != 0; }

void check_family(const SampledVectorField& f, const NormFamily& rho) {
  require_same_grid(f.grid(), rho.grid(), "norm family");
  require(f.dim() == rho.dim(), ErrorCode::ShapeMismatch, "field and norm family dimensions differ");
}

}  // namespace

double scalar_lp_norm(const SampledVectorField& f, const ScalarWeightField& w, double p, CellMask mask,
                      Backend backend) {
  require(f.dim() == 1, ErrorCode::ShapeMismatch, "scalar norm needs a d = 1 field");
  require_same_grid(f.grid(), w.grid(), "scalar weight");
  check_mask(f.grid(), mask);
  const double vol = f.grid().cell_volume();
  const double total = sum_terms(backend, f.size(), [&](std::size_t i) {
    if (!active(mask, i)) return 0.0;
    return w[i] * std::pow(std::abs(f.at(i)[0]), p) * vol;
  });
  return std::pow(total, 1.0 / p);
}

double lp_w_norm(const SampledVectorField& f, const MatrixWeightField& w, double p, CellMask mask, Backend backend) {
  require_same_grid(f.grid(), w.grid(), "matrix weight");
  require(f.dim() == w.dim(), ErrorCode::ShapeMismatch, "field and weight dimensions differ");
  if (w.dim() == 1) {
    std::vector<double> values(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) values[i] = w[i](0, 0).real();
    return scalar_lp_norm(f, ScalarWeightField(w.grid(), std::move(values)), p, mask, backend);
  }
  return lp_rho_norm(f, NormFamily::from_weight(w, p), p, nullptr, mask, backend);
}

double lp_rho_power(const SampledVectorField& f, const NormFamily& rho, double p, const MeasureDensity* mu,
                    CellMask mask, Backend backend) {
  check_family(f, rho);
  check_mask(f.grid(), mask);
  if (mu) require_same_grid(f.grid(), mu->grid(), "measure density");
  const double vol = f.grid().cell_volume();
  return sum_terms(backend, f.size(), [&](std::size_t i) {
    if (!active(mask, i)) return 0.0;
    const double u = mu ? (*mu)[i] : 1.0;
    if (u == 0.0) return 0.0;
    return std::pow(rho(i, f.at(i)), p) * u * vol;
  });
}

double lp_rho_norm(const SampledVectorField& f, const NormFamily& rho, double p, const MeasureDensity* mu,
                   CellMask mask, Backend backend) {
  return std::pow(lp_rho_power(f, rho, p, mu, mask, backend), 1.0 / p);
}

double modular(const SampledVectorField& f, const NormFamily& rho, const ExponentField& pf, CellMask mask,
               Backend backend) {
  check_family(f, rho);
  check_mask(f.grid(), mask);
  require_same_grid(f.grid(), pf.grid(), "exponent field");
  const double vol = f.grid().cell_volume();
  return sum_terms(backend, f.size(), [&](std::size_t i) {
    if (!active(mask, i)) return 0.0;
    return std::pow(rho(i, f.at(i)), pf[i]) * vol;
  });
}

double luxemburg_norm(const SampledVectorField& f, const NormFamily& rho, const ExponentField& pf, CellMask mask,
                      double tol, Backend backend) {
  check_family(f, rho);
  check_mask(f.grid(), mask);
  require_same_grid(f.grid(), pf.grid(), "exponent field");
  require(tol > 0.0, ErrorCode::InvalidArgument, "bisection tolerance must be positive");
  std::vector<double> a(f.size());
  for_each_index(backend, f.size(), [&](std::size_t i) { a[i] = active(mask, i) ? rho(i, f.at(i)) : 0.0; });
  const double vol = f.grid().cell_volume();
  const auto scaled = [&](double lambda) {
    return sum_terms(backend, a.size(), [&](std::size_t i) {
      return a[i] == 0.0 ? 0.0 : std::pow(a[i] / lambda, pf[i]) * vol;
    });
  };
  const double m0 = scaled(1.0);
  require(std::isfinite(m0), ErrorCode::NonFinite, "modular is not finite");
  if (m0 == 0.0) return 0.0;

  const double r1 = std::pow(m0, 1.0 / pf.p_minus());
  const double r2 = std::pow(m0, 1.0 / pf.p_plus());
  double lo = std::max(std::min(r1, r2), 1e-300);
  double hi = std::max(r1, r2);
  for (int k = 0; k < 200 && scaled(lo) <= 1.0; ++k) lo *= 0.5;
  for (int k = 0; k < 200 && scaled(hi) > 1.0; ++k) hi *= 2.0;
  require(scaled(hi) <= 1.0, ErrorCode::NonFinite, "Luxemburg bracket could not be established");
  if (scaled(lo) <= 1.0) return lo;

  for (int iter = 0; iter < 200 && hi - lo > tol * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (scaled(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

SampledVectorField gradient(const SampledVectorField& f) {
  require(f.dim() == 1, ErrorCode::ShapeMismatch, "gradient needs a d = 1 field");
  const Grid& g = f.grid();
  const int n = g.dim();
  const int pts = g.points_per_axis();
  const double h = g.spacing();
  SampledVectorField out(g, n);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Grid::Cell c = g.cell(i);
    for (int axis = 0; axis < n; ++axis) {
      Grid::Cell lo = c;
      Grid::Cell hi = c;
      double span = 2.0 * h;
      if (c[axis] == 0) {
        span = h;
      } else {
        lo[axis] -= 1;
      }
      if (c[axis] == pts - 1) {
        span = h;
      } else {
        hi[axis] += 1;
      }
      out.value(i)(axis) = (f.at(g.index(hi))[0] - f.at(g.index(lo))[0]) / span;
    }
  }
  return out;
}

double degenerate_sobolev_norm(const SampledVectorField& f, const MatrixWeightField& w, double p, Backend backend) {
  require(f.dim() == 1, ErrorCode::ShapeMismatch, "Sobolev norm needs a scalar field");
  require_same_grid(f.grid(), w.grid(), "matrix weight");
  require(w.dim() == f.grid().dim(), ErrorCode::ShapeMismatch, "weight dimension must equal the space dimension");
  require(p >= 1.0, ErrorCode::InvalidArgument, "Sobolev norm needs p >= 1");
  const ScalarWeightField v(w.grid(), w.operator_norms());
  return scalar_lp_norm(f, v, p, {}, backend) + lp_w_norm(gradient(f), w, p, {}, backend);
}

}  // namespace mwkr
