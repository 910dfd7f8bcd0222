#include <algorithm>
#include <cmath>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"

namespace mwkr {

NetCertificate certify_net(const FunctionFamily& family, const std::vector<SampledVectorField>& centers,
                           double epsilon, double c_net, const FunctionSpace& space) {
  NetCertificate out;
  out.epsilon = epsilon;
  out.c_net = c_net;
  out.nearest.assign(family.size(), 0);
  out.distance.assign(family.size(), std::numeric_limits<double>::infinity());
  if (centers.empty()) return out;
  const FunctionSpace inner = space.with_backend(Backend::serial);
  for_each_index(space.backend(), family.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double dist = inner.distance(family[i], centers[k]);
      if (dist < out.distance[i]) {
        out.distance[i] = dist;
        out.nearest[i] = k;
      }
    }
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (out.distance[i] > out.worst_distance) {
      out.worst_distance = out.distance[i];
      out.worst_member = i;
    }
  }
  out.pass = out.worst_distance <= c_net * epsilon * (1.0 + 1e-12);
  return out;
}

namespace {

// Generations m with L/8 <= 2^m <= L whose box R_m is cell-aligned.
std::vector<int> outer_ladder(const Grid& grid) {
  std::vector<int> out;
  const double l = grid.half_width();
  for (int m = static_cast<int>(std::ceil(std::log2(l / 8.0) - 1e-12)); std::ldexp(1.0, m) <= l; ++m) {
    try {
      DyadicScheme(grid, m, m);
      out.push_back(m);
    } catch (const Error&) {
    }
  }
  return out;
}

// Generations t with 2h <= 2^t <= min(2^m, L/4) whose cubes are whole cells.
std::vector<int> inner_ladder(const Grid& grid, int m) {
  std::vector<int> out;
  const double top = std::min(std::ldexp(1.0, m), 0.25 * grid.half_width());
  for (int t = static_cast<int>(std::ceil(std::log2(2.0 * grid.spacing()) - 1e-12)); std::ldexp(1.0, t) <= top;
       ++t) {
    try {
      DyadicScheme(grid, m, t);
      out.push_back(t);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

EpsilonNet build_net_dyadic(const FunctionFamily& family, double epsilon, const FunctionSpace& space,
                            const MatrixWeightField* twisted_weight) {
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon must be positive");
  const Grid& g = family.grid();
  EpsilonNet net;
  net.epsilon = epsilon;
  net.route = "dyadic";

  bool found_m = false;
  for (int m : outer_ladder(g)) {
    net.tail_at_m = cube_tail_modulus(family, m, space);
    if (net.tail_at_m < epsilon) {
      net.outer_generation = m;
      found_m = true;
      break;
    }
  }
  require(found_m, ErrorCode::ModuliTooLarge, "no outer generation m has cube tail below epsilon");

  const std::vector<int> ts = inner_ladder(g, net.outer_generation);
  std::vector<double> scales;
  for (int t : ts) scales.push_back(std::ldexp(1.0, t));
  Curve curve;
  if (twisted_weight) {
    require(!space.variable_exponent(), ErrorCode::InvalidArgument, "twisted modulus needs a constant exponent");
    curve = twisted_curve(family, *twisted_weight, space.p(), scales, space.backend(), epsilon);
  } else {
    curve = translation_curve(family, scales, space, epsilon);
  }
  bool found_t = false;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve[k].second >= epsilon) break;
    net.inner_generation = ts[k];
    net.modulus_at_t = curve[k].second;
    found_t = true;
  }
  require(found_t, ErrorCode::ModuliTooLarge, "no inner generation t has equicontinuity modulus below epsilon");

  const DyadicScheme scheme(g, net.outer_generation, net.inner_generation);
  std::vector<SampledVectorField> images;
  images.reserve(family.size());
  for (const auto& f : family.members()) images.push_back(dyadic_average(f, scheme, space.backend()));

  const FunctionSpace inner = space.with_backend(Backend::serial);
  std::vector<double> approx(family.size());
  for_each_index(space.backend(), family.size(),
                 [&](std::size_t i) { approx[i] = inner.distance(family[i], images[i]); });
  net.approximation_error = *std::max_element(approx.begin(), approx.end());

  const GreedyCover cover = greedy_cover(family.size(), epsilon, [&](std::size_t i, std::size_t j) {
    return inner.distance(images[i], images[j]);
  });
  for (std::size_t c : cover.centers) {
    net.centers.push_back(images[c]);
    net.center_members.push_back(c);
  }
  net.c_net = 1.0 + net.approximation_error / epsilon;
  net.certificate = certify_net(family, net.centers, epsilon, net.c_net, space);
  return net;
}

EpsilonNet build_net_average(const FunctionFamily& family, double epsilon, const FunctionSpace& space) {
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon must be positive");
  require(!space.variable_exponent() && space.p() >= 1.0, ErrorCode::InvalidArgument,
          "the averaging route needs a constant exponent p >= 1");
  require(space.rho().has_bounds(), ErrorCode::InvalidArgument, "the averaging route needs pointwise norm bounds");
  const Grid& g = family.grid();
  const Ladders ladders = default_ladders(g);
  const double third = epsilon / 3.0;
  EpsilonNet net;
  net.epsilon = epsilon;
  net.route = "average";

  bool found_r = false;
  for (double radius : ladders.radii) {
    net.tail_at_r = tail_modulus(family, radius, space);
    if (net.tail_at_r < third) {
      net.radius = radius;
      found_r = true;
      break;
    }
  }
  require(found_r, ErrorCode::ModuliTooLarge, "no radius R has tail modulus below epsilon / 3");

  bool found_ball = false;
  for (double r : ladders.scales) {
    if (net.radius + r > g.half_width() * (1.0 + 1e-12)) break;
    const double value = averaging_modulus(family, r, space);
    if (value >= third) break;
    net.ball_radius = r;
    net.average_at_r = value;
    found_ball = true;
  }
  require(found_ball, ErrorCode::ModuliTooLarge, "no ball radius r has averaging modulus below epsilon / 3");

  const MeasureDensity mu = space.measure() ? *space.measure() : MeasureDensity::lebesgue(g);
  const auto inside = g.ball_mask(net.radius);
  const double p = space.p();
  const auto bounds = space.rho().bounds();
  std::vector<double> terms(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (inside[i]) terms[i] = std::pow(bounds[i], p) * mu[i] * g.cell_volume();
  net.scaling = 3.0 * std::pow(pairwise_sum(terms), 1.0 / p);
  net.cluster_radius = epsilon / net.scaling;

  const BallScheme scheme(g, net.ball_radius);
  std::vector<SampledVectorField> smoothed;
  smoothed.reserve(family.size());
  for (const auto& f : family.members())
    smoothed.push_back(ball_average(f, mu, scheme, inside, space.backend()).masked(inside));

  const auto uniform = [&](std::size_t i, std::size_t j) {
    double worst = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x)
      if (inside[x]) worst = std::max(worst, (smoothed[i].value(x) - smoothed[j].value(x)).norm());
    return worst;
  };
  const GreedyCover cover = greedy_cover(family.size(), net.cluster_radius, uniform);
  for (std::size_t c : cover.centers) {
    net.centers.push_back(smoothed[c]);
    net.center_members.push_back(c);
  }
  net.uniform_spread = *std::max_element(cover.distance.begin(), cover.distance.end());
  net.budget_bound = net.tail_at_r + net.average_at_r + net.scaling / 3.0 * net.uniform_spread;
  net.c_net = 1.0;
  net.certificate = certify_net(family, net.centers, epsilon, net.c_net, space);
  return net;
}

}  // namespace mwkr
