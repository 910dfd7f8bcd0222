#include "mwkr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"
#include "mwkr/john.hpp"
#include "mwkr/linalg.hpp"
#include "mwkr/operators.hpp"
#include "mwkr/spaces.hpp"

namespace mwkr {

namespace {

using Rng = std::mt19937_64;

std::uint64_t stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  std::uint64_t out = 0;
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out;
}

CMatrix gaussian_matrix(Rng& rng, int d) {
  std::normal_distribution<double> normal;
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

CMatrix random_unitary(Rng& rng, int d) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(rng, d));
  return qr.householderQ() * CMatrix::Identity(d, d);
}

HermitianMatrix with_spectrum(const CMatrix& q, const std::vector<double>& lambda) {
  const int d = static_cast<int>(lambda.size());
  CMatrix scaled = q;
  for (int k = 0; k < d; ++k) scaled.col(k) *= lambda[static_cast<std::size_t>(k)];
  return HermitianMatrix(CMatrix(scaled * q.adjoint()));
}

void record(SuiteResult& s, double excess) {
  s.worst_residual = std::max(s.worst_residual, excess);
  if (excess > s.tolerance) ++s.failures;
}

void finish(SuiteResult& s) { s.pass = s.failures == 0 && s.error_code.empty(); }

SampledVectorField random_field(Rng& rng, const Grid& grid, int d, double scale) {
  std::normal_distribution<double> normal;
  std::vector<cplx> data(grid.size() * static_cast<std::size_t>(d));
  for (auto& z : data) z = scale * cplx(normal(rng), normal(rng));
  return SampledVectorField(grid, d, std::move(data));
}

NormFamily random_norm_family(Rng& rng, const Grid& grid, int d, int kind) {
  if (kind == 0) {
    static const double qs[] = {1.0, 1.5, 3.0, INFINITY};
    std::uniform_int_distribution<int> pick(0, 3);
    return NormFamily::uniform(grid, lq_norm(d, qs[pick(rng)]));
  }
  std::vector<HermitianMatrix> values;
  values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CMatrix g = gaussian_matrix(rng, d);
    values.emplace_back(CMatrix(g * g.adjoint() + 0.05 * CMatrix::Identity(d, d)));
  }
  return NormFamily::from_weight(MatrixWeightField(grid, std::move(values)), 2.0);
}

ExponentField random_exponent(Rng& rng, const Grid& grid) {
  std::uniform_real_distribution<double> unit;
  const double p_plus = 1.0 + 3.0 * unit(rng);
  const double omega = 1.0 + 8.0 * unit(rng);
  const double phase = 6.283185307179586 * unit(rng);
  std::vector<double> p(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    p[i] = 1.0 + (p_plus - 1.0) * (0.5 + 0.5 * std::sin(omega * grid.point(i)[0] + phase));
  return ExponentField(grid, std::move(p));
}

/// Largest c found by bisection with modular(c f) <= target.
double scale_to_modular(const SampledVectorField& f, const NormFamily& rho, const ExponentField& pf, double target) {
  double lo = 0.0;
  double hi = 1.0;
  while (modular(cplx(hi) * f, rho, pf) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modular(cplx(mid) * f, rho, pf) <= target)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double max_deviation(const SampledVectorField& a, const SampledVectorField& b, CellMask mask) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    worst = std::max(worst, (a.value(i) - b.value(i)).norm());
  }
  return worst;
}

MatrixWeightField sample_a2_weight(const Grid& grid) {
  const double alpha[] = {0.5, 1.0 / 3.0};
  return make_power_weight(grid, alpha, planar_rotation([](const Grid::Point& x) { return x[0]; }, 2));
}

double average_bound_sup(const Grid& grid, std::uint64_t seed, int count, const std::vector<double>& scales) {
  const MatrixWeightField w = sample_a2_weight(grid);
  const MeasureDensity mu = MeasureDensity::lebesgue(grid);
  BumpOptions opts;
  opts.count = count;
  opts.center_min = -0.5;
  opts.center_max = 0.5;
  opts.width_min = 0.05;
  opts.width_max = 0.5;
  const FunctionFamily family = gaussian_bumps(grid, 2, seed, opts);
  double sup = 0.0;
  for (double r : scales) {
    const BallScheme scheme(grid, r);
    for (const auto& f : family.members()) {
      const double denom = lp_w_norm(f, w, 2.0);
      if (denom == 0.0) continue;
      sup = std::max(sup, lp_w_norm(ball_average(f, mu, scheme), w, 2.0) / denom);
    }
  }
  return sup;
}

}  // namespace

SuiteResult verify_spectral(std::uint64_t seed, int count) {
  SuiteResult s;
  s.name = "spectral";
  s.statement = "||A^s|| = max lambda^s (PSD); ||A^-s||^-1 = min lambda^s (PD); d <= 6, s in {1/3, 1/2, 1, 2}";
  s.tolerance = 1e-10;
  Rng rng(stream(seed, 1));
  std::uniform_int_distribution<int> dims(1, 6);
  std::uniform_real_distribution<double> unit;
  const double exponents[] = {1.0 / 3.0, 0.5, 1.0, 2.0};
  for (int k = 0; k < count; ++k) {
    const int d = dims(rng);
    const CMatrix q = random_unitary(rng, d);
    std::vector<double> psd(static_cast<std::size_t>(d));
    for (auto& l : psd) l = 10.0 * unit(rng);
    if (k % 3 == 0) psd[static_cast<std::size_t>(k) % psd.size()] = 0.0;
    std::vector<double> pd(static_cast<std::size_t>(d));
    for (auto& l : pd) l = 0.05 + 9.95 * unit(rng);
    const HermitianMatrix a = with_spectrum(q, psd);
    const HermitianMatrix b = with_spectrum(q, pd);
    const double top = *std::max_element(psd.begin(), psd.end());
    const double bottom = *std::min_element(pd.begin(), pd.end());
    for (double e : exponents) {
      const double expect_top = std::pow(top, e);
      const double got_top = spectral_norm(mat_power(a, e).matrix());
      record(s, std::abs(got_top - expect_top) / std::max(1.0, expect_top));
      const double expect_bottom = std::pow(bottom, e);
      const double got_bottom = 1.0 / spectral_norm(mat_power(b, -e).matrix());
      record(s, std::abs(got_bottom - expect_bottom) / std::max(1.0, expect_bottom));
    }
    ++s.instances;
  }
  finish(s);
  return s;
}

SuiteResult verify_john(std::uint64_t seed, int count, int vectors) {
  SuiteResult s;
  s.name = "john";
  s.statement = "rho(v) <= |W v| <= sqrt(d) * 1.05 * rho(v) on fresh vectors";
  s.tolerance = 0.0;
  Rng rng(stream(seed, 2));
  const double qs[] = {1.0, 1.5, 3.0, INFINITY};
  double worst_lower = INFINITY;
  double worst_upper = 0.0;
  for (int k = 0; k < count; ++k) {
    const int d = 2 + k % 2;
    const int kind = k % 5;
    Norm rho = euclidean_norm(d);
    if (kind < 4) {
      rho = lq_norm(d, qs[kind]);
    } else {
      CMatrix a;
      while (true) {
        a = gaussian_matrix(rng, d);
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(Eigen::MatrixXcd(a)).singularValues();
        if (sv(d - 1) > 0.05 * sv(0)) break;
      }
      rho = linear_image_norm(a);
    }
    JohnOptions opts;
    opts.seed = stream(seed, 1000 + static_cast<std::uint64_t>(k));
    const JohnFit fit = john_ellipsoid(rho, opts);
    const SandwichCheck check = check_sandwich(fit.w, rho, vectors, stream(seed, 5000 + static_cast<std::uint64_t>(k)));
    worst_lower = std::min(worst_lower, check.min_lower);
    worst_upper = std::max(worst_upper, check.max_upper);
    record(s, std::max(1.0 - check.min_lower, check.max_upper - 1.05));
    ++s.instances;
  }
  if (s.instances) {
    s.details["min_lower_ratio"] = worst_lower;
    s.details["max_upper_ratio"] = worst_upper;
  }
  finish(s);
  return s;
}

SuiteResult verify_luxemburg(std::uint64_t seed, int count) {
  SuiteResult s;
  s.name = "luxemburg";
  s.statement =
      "(a) norm <= 1 => modular <= norm; (b) norm > 1 => modular >= norm; (c) norm <= modular + 1; "
      "(d) modular <= lambda^{p+}, lambda <= 1 => norm <= lambda";
  s.tolerance = 2e-8;
  Rng rng(stream(seed, 3));
  std::uniform_real_distribution<double> unit;
  const Grid grid(1, 1.0, 64);
  std::size_t boundary_cases = 0;
  for (int k = 0; k < count; ++k) {
    const int d = 1 + k % 3;
    const NormFamily rho = random_norm_family(rng, grid, d, k % 2);
    const ExponentField pf = random_exponent(rng, grid);
    const SampledVectorField f = random_field(rng, grid, d, std::exp(-3.0 + 6.0 * unit(rng)));
    const double norm = luxemburg_norm(f, rho, pf);
    const double mod = modular(f, rho, pf);
    if (norm <= 1.0)
      record(s, (mod - norm) / std::max(norm, 1e-300));
    else
      record(s, (norm - mod) / norm);
    record(s, norm - mod - 1.0);
    const double lambda = k % 5 == 0 ? 1.0 : std::max(unit(rng), 1e-3);
    if (lambda == 1.0) ++boundary_cases;
    const double target = std::pow(lambda, pf.p_plus());
    const double c = scale_to_modular(f, rho, pf, target);
    const SampledVectorField g = cplx(c) * f;
    record(s, luxemburg_norm(g, rho, pf) / lambda - 1.0);
    ++s.instances;
  }
  s.details["boundary_lambda_one_cases"] = boundary_cases;
  finish(s);
  return s;
}

SuiteResult verify_average_bound(std::uint64_t seed, int count) {
  SuiteResult s;
  s.name = "average_bound";
  s.statement = "sup_{f, r} ||S_r f|| / ||f|| in L^2(W) finite and within 10% between N = 2048 and N = 4096";
  s.tolerance = 0.10;
  if (count <= 0) return s;
  const Grid coarse(1, 16.0, 2048);
  const Grid fine(1, 16.0, 4096);
  const std::vector<double> scales = default_ladders(coarse).scales;
  const std::uint64_t family_seed = stream(seed, 4);
  const double a = average_bound_sup(coarse, family_seed, count, scales);
  const double b = average_bound_sup(fine, family_seed, count, scales);
  s.instances = static_cast<std::size_t>(count);
  const double change = std::abs(b - a) / a;
  s.details["sup_n2048"] = a;
  s.details["sup_n4096"] = b;
  s.details["relative_change"] = change;
  s.details["scales"] = scales;
  s.worst_residual = change;
  if (!std::isfinite(a) || !std::isfinite(b) || !(change < s.tolerance)) s.failures = 1;
  finish(s);
  return s;
}

SuiteResult verify_differentiation(std::uint64_t seed, int count) {
  SuiteResult s;
  s.name = "differentiation";
  s.statement = "max_{|x| < L/2} |S_r f - f| non-increasing as r decreases from L/2 to 4h";
  s.tolerance = 1e-12;
  if (count <= 0) return s;
  const Grid grid(1, 16.0, 4096);
  const MeasureDensity mu = MeasureDensity::lebesgue(grid);
  const auto inside = grid.ball_mask(grid.half_width() / 2.0);
  std::vector<double> radii;
  for (double r = grid.half_width() / 2.0; r >= 4.0 * grid.spacing() * (1.0 - 1e-12); r /= 2.0) radii.push_back(r);
  BumpOptions opts;
  opts.count = count;
  const FunctionFamily family = gaussian_bumps(grid, 2, stream(seed, 5), opts);
  std::vector<std::vector<double>> deviations(family.size());
  for (double r : radii) {
    const BallScheme scheme(grid, r);
    for (std::size_t k = 0; k < family.size(); ++k)
      deviations[k].push_back(max_deviation(ball_average(family[k], mu, scheme, inside), family[k], inside));
  }
  double final_worst = 0.0;
  for (const auto& dev : deviations) {
    for (std::size_t j = 1; j < dev.size(); ++j) record(s, dev[j] - dev[j - 1]);
    final_worst = std::max(final_worst, dev.back());
    ++s.instances;
  }
  s.details["radii"] = radii;
  s.details["final_max_deviation"] = final_worst;
  finish(s);
  return s;
}

SuiteResult verify_weight(const std::function<MatrixWeightField()>& load) {
  SuiteResult s;
  s.name = "scenario_weight";
  s.statement = "scenario weight is PSD and invertible";
  s.instances = 1;
  try {
    const MatrixWeightField w = load();
    if (!w.invertible()) {
      s.failures = 1;
      s.error_code = std::string(to_string(ErrorCode::NotInvertible));
      s.details["message"] = "weight is PSD but not invertible";
    }
  } catch (const Error& e) {
    s.failures = 1;
    s.error_code = std::string(to_string(e.code()));
    s.details["message"] = e.what();
  }
  finish(s);
  return s;
}

VerifyReport verify_lemmas(std::uint64_t seed, int count) {
  const auto pick = [count](int fallback) { return count >= 0 ? count : fallback; };
  VerifyReport r;
  r.suites.push_back(verify_spectral(seed, pick(500)));
  r.suites.push_back(verify_john(seed, pick(50)));
  r.suites.push_back(verify_luxemburg(seed, pick(100)));
  r.suites.push_back(verify_average_bound(seed, pick(50)));
  r.suites.push_back(verify_differentiation(seed, pick(20)));
  for (const auto& s : r.suites) r.pass = r.pass && s.pass;
  return r;
}

nlohmann::ordered_json to_json(const SuiteResult& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["statement"] = s.statement;
  j["instances"] = s.instances;
  j["failures"] = s.failures;
  j["worst_residual"] = s.worst_residual;
  j["tolerance"] = s.tolerance;
  j["pass"] = s.pass;
  if (!s.error_code.empty()) j["error"] = s.error_code;
  if (!s.details.empty()) j["details"] = s.details;
  return j;
}

}  // namespace mwkr
