#include <algorithm>
#include <cmath>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"

namespace mwkr {

NecessityReport necessity_check(const FunctionFamily& family, const std::vector<double>& epsilons,
                                const FunctionSpace& space, std::size_t cap) {
  require(!space.variable_exponent() && space.p() > 1.0, ErrorCode::InvalidArgument,
          "the necessity check needs a constant exponent p > 1");
  const Grid& g = family.grid();
  const Ladders ladders = default_ladders(g);
  const MeasureDensity mu = space.measure() ? *space.measure() : MeasureDensity::lebesgue(g);
  const FunctionSpace inner = space.with_backend(Backend::serial);
  NecessityReport report;

  for (double eps : epsilons) {
    require(eps > 0.0, ErrorCode::InvalidArgument, "epsilon must be positive");
    NecessityRow row;
    row.epsilon = eps;
    const GreedyCover cover = greedy_cover(
        family.size(), eps, [&](std::size_t i, std::size_t j) { return inner.distance(family[i], family[j]); }, cap);
    row.net_size = cover.centers.size();

    bool radius_ok = true;
    for (std::size_t c : cover.centers) {
      double chosen = ladders.radii.back();
      bool found = false;
      for (double radius : ladders.radii) {
        if (inner.norm(family[c], g.ball_complement_mask(radius)) < eps) {
          chosen = radius;
          found = true;
          break;
        }
      }
      radius_ok = radius_ok && found;
      row.radius = std::max(row.radius, chosen);
    }
    row.tail = tail_modulus(family, row.radius, space);
    row.tail_bound = 2.0 * eps;

    bool ball_ok = true;
    row.ball_radius = ladders.scales.back();
    for (std::size_t c : cover.centers) {
      double chosen = ladders.scales.front();
      bool found = false;
      for (double r : ladders.scales) {
        const BallScheme scheme(g, r);
        const auto region = safe_region(g, r);
        const SampledVectorField avg = ball_average(family[c], mu, scheme, region, space.backend());
        if (inner.norm(avg - family[c], region) >= eps) break;
        chosen = r;
        found = true;
      }
      ball_ok = ball_ok && found;
      row.ball_radius = std::min(row.ball_radius, chosen);
    }
    row.average = averaging_modulus(family, row.ball_radius, space);

    const BallScheme scheme(g, row.ball_radius);
    const auto region = safe_region(g, row.ball_radius);
    std::vector<double> ratios(family.size(), 0.0);
    for_each_index(space.backend(), family.size(), [&](std::size_t i) {
      const SampledVectorField diff = family[i] - family[cover.centers[cover.nearest[i]]];
      const double base = inner.norm(diff);
      if (base == 0.0) return;
      ratios[i] = inner.norm(ball_average(diff, mu, scheme, region, Backend::serial), region) / base;
    });
    row.averaging_constant = *std::max_element(ratios.begin(), ratios.end());
    row.average_bound = (row.averaging_constant + 2.0) * eps;

    const double slack = 1.0 + 1e-12;
    row.pass = radius_ok && ball_ok && row.tail <= row.tail_bound * slack && row.average <= row.average_bound * slack;
    if (!radius_ok) row.note = "a center has tail >= eps at every ladder radius";
    if (!ball_ok) row.note += std::string(row.note.empty() ? "" : "; ") + "a center has S_r error >= eps at 2h";
    report.pass = report.pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

ComponentReduction componentwise_reduction(const FunctionFamily& family, const MatrixWeightField& w, double p,
                                           Backend backend) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive and finite");
  const FunctionFamily rotated = eigenbasis_family(family, w);
  const int d = w.dim();
  ComponentReduction out;
  out.weights = eigen_fields(w);
  const MatrixWeightField diag = eigenvalue_weight(w);
  const NormFamily rho = NormFamily::from_weight(diag, p);

  std::vector<std::vector<SampledVectorField>> parts(static_cast<std::size_t>(d));
  for (const auto& f : rotated.members()) {
    for (int c = 0; c < d; ++c) {
      SampledVectorField part(f.grid(), 1);
      for (std::size_t i = 0; i < f.size(); ++i) part.value(i)(0) = f.value(i)(c);
      parts[static_cast<std::size_t>(c)].push_back(std::move(part));
    }
  }
  for (int c = 0; c < d; ++c)
    out.components.emplace_back(std::move(parts[static_cast<std::size_t>(c)]),
                                "component " + std::to_string(c + 1) + " of " + rotated.description());

  out.lower_constant = std::numeric_limits<double>::infinity();
  out.upper_constant = 0.0;
  for (std::size_t k = 0; k < rotated.size(); ++k) {
    const double full = lp_rho_norm(rotated[k], rho, p, nullptr, {}, backend);
    std::vector<double> norms;
    double sum = 0.0;
    double squares = 0.0;
    for (int c = 0; c < d; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      const double n = scalar_lp_norm(out.components[cc][k], out.weights[cc], p, {}, backend);
      norms.push_back(n);
      sum += n;
      squares += n * n;
    }
    out.full_norms.push_back(full);
    out.component_norms.push_back(std::move(norms));
    if (sum > 0.0) {
      out.lower_constant = std::min(out.lower_constant, full / sum);
      out.upper_constant = std::max(out.upper_constant, full / sum);
    }
    if (p == 2.0 && full > 0.0)
      out.pythagorean_residual = std::max(out.pythagorean_residual, std::abs(full * full - squares) / (full * full));
  }
  if (!std::isfinite(out.lower_constant)) out.lower_constant = 0.0;
  return out;
}

}  // namespace mwkr
