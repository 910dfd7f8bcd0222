#include <algorithm>
#include <cmath>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"

namespace mwkr {

std::string_view to_string(EquicontinuityNotion notion) {
  switch (notion) {
    case EquicontinuityNotion::translation: return "translation";
    case EquicontinuityNotion::twisted: return "twisted";
    case EquicontinuityNotion::averaging: return "averaging";
  }
  return "";
}

Ladders default_ladders(const Grid& grid) {
  const double l = grid.half_width();
  Ladders out;
  out.radii = {l / 8.0, l / 4.0, l / 2.0, 0.75 * l};
  for (double r = 2.0 * grid.spacing(); r <= 0.25 * l * (1.0 + 1e-12); r *= 2.0) out.scales.push_back(r);
  return out;
}

namespace {

void check_space(const FunctionFamily& family, const FunctionSpace& space) {
  require_same_grid(family.grid(), space.grid(), "function space");
  require(family.dim() == space.dim(), ErrorCode::ShapeMismatch, "family and space dimensions differ");
}

double masked_family_max(const FunctionFamily& family, const FunctionSpace& space, CellMask mask) {
  const FunctionSpace inner = space.with_backend(Backend::serial);
  return max_terms(space.backend(), family.size(), [&](std::size_t k) { return inner.gauge(family[k], mask); });
}

bool within(const Grid::Cell& s, double h, double r) {
  const double len2 = static_cast<double>(s[0]) * s[0] + static_cast<double>(s[1]) * s[1];
  return len2 * h * h <= r * r * (1.0 + 1e-12);
}

}  // namespace

double boundedness_modulus(const FunctionFamily& family, const FunctionSpace& space) {
  check_space(family, space);
  return masked_family_max(family, space, {});
}

double tail_modulus(const FunctionFamily& family, double radius, const FunctionSpace& space) {
  check_space(family, space);
  require(radius >= 0.0 && radius < family.grid().half_width(), ErrorCode::RadiusExceedsBox,
          "tail radius must lie in [0, L)");
  const auto mask = family.grid().ball_complement_mask(radius);
  return masked_family_max(family, space, mask);
}

double cube_tail_modulus(const FunctionFamily& family, int m, const FunctionSpace& space) {
  check_space(family, space);
  const Grid& g = family.grid();
  const double half = std::ldexp(1.0, m);
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Grid::Point x = g.point(i);
    for (int k = 0; k < g.dim(); ++k) {
      const double c = x[static_cast<std::size_t>(k)];
      if (c < -half || c >= half) mask[i] = 1;
    }
  }
  return masked_family_max(family, space, mask);
}

Curve translation_curve(const FunctionFamily& family, const std::vector<double>& scales, const FunctionSpace& space,
                        double stop_at) {
  check_space(family, space);
  require(std::is_sorted(scales.begin(), scales.end()), ErrorCode::InvalidArgument, "scales must be ascending");
  const Grid& g = family.grid();
  const FunctionSpace inner = space.with_backend(Backend::serial);
  Curve out;
  if (scales.empty()) return out;
  const std::vector<Grid::Cell> shifts = lattice_shifts(g, scales.back());
  std::vector<std::uint8_t> done(shifts.size(), 0);
  double running = 0.0;
  for (double r : scales) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      if (done[s] || !within(shifts[s], g.spacing(), r)) continue;
      done[s] = 1;
      if (shifts[s][0] == 0 && shifts[s][1] == 0) continue;
      for (std::size_t k = 0; k < family.size(); ++k) pairs.emplace_back(k, s);
    }
    const double step = max_terms(space.backend(), pairs.size(), [&](std::size_t q) {
      const auto [k, s] = pairs[q];
      return inner.gauge(translate_cells(family[k], shifts[s]) - family[k]);
    });
    running = std::max(running, step);
    out.emplace_back(r, running);
    if (running >= stop_at) break;
  }
  return out;
}

double translation_modulus(const FunctionFamily& family, double r, const FunctionSpace& space) {
  return translation_curve(family, {r}, space).front().second;
}

FunctionFamily eigenbasis_family(const FunctionFamily& family, const MatrixWeightField& w) {
  require_same_grid(family.grid(), w.grid(), "matrix weight");
  require(family.dim() == w.dim(), ErrorCode::ShapeMismatch, "family and weight dimensions differ");
  std::vector<SampledVectorField> rotated;
  rotated.reserve(family.size());
  for (const auto& f : family.members()) {
    SampledVectorField t(f.grid(), f.dim());
    for (std::size_t i = 0; i < f.size(); ++i) t.value(i) = w.spectrum(i).vectors.adjoint() * f.value(i);
    rotated.push_back(std::move(t));
  }
  return FunctionFamily(std::move(rotated), family.description() + ", eigenbasis of W");
}

Curve twisted_curve(const FunctionFamily& family, const MatrixWeightField& w, double p,
                    const std::vector<double>& scales, Backend backend, double stop_at) {
  require(w.invertible(), ErrorCode::NotInvertible, "twisted modulus needs an invertible weight");
  const FunctionFamily rotated = eigenbasis_family(family, w);
  const FunctionSpace space = FunctionSpace::weighted(eigenvalue_weight(w), p).with_backend(backend);
  return translation_curve(rotated, scales, space, stop_at);
}

double twisted_modulus(const FunctionFamily& family, const MatrixWeightField& w, double p, double r,
                       Backend backend) {
  return twisted_curve(family, w, p, {r}, backend).front().second;
}

std::vector<std::uint8_t> safe_region(const Grid& grid, double r) {
  return grid.ball_mask(grid.half_width() - r);
}

double averaging_modulus(const FunctionFamily& family, double r, const FunctionSpace& space) {
  check_space(family, space);
  const Grid& g = family.grid();
  require(r < g.half_width(), ErrorCode::RadiusExceedsBox, "ball radius must be below L");
  const BallScheme scheme(g, r);
  const MeasureDensity mu = space.measure() ? *space.measure() : MeasureDensity::lebesgue(g);
  const auto region = safe_region(g, r);
  const FunctionSpace inner = space.with_backend(Backend::serial);
  return max_terms(space.backend(), family.size(), [&](std::size_t k) {
    const SampledVectorField avg = ball_average(family[k], mu, scheme, region, Backend::serial);
    return inner.gauge(avg - family[k], region);
  });
}

ModuliReport compute_moduli(const FunctionFamily& family, const FunctionSpace& space, const Ladders& ladders,
                            EquicontinuityNotion notion, const MatrixWeightField* w) {
  ModuliReport out;
  out.notion = notion;
  out.gauge = space.variable_exponent() ? "modular" : "norm";
  out.bound = boundedness_modulus(family, space);
  for (double radius : ladders.radii) out.tail.emplace_back(radius, tail_modulus(family, radius, space));
  switch (notion) {
    case EquicontinuityNotion::translation:
      out.equicontinuity = translation_curve(family, ladders.scales, space);
      break;
    case EquicontinuityNotion::twisted:
      require(w != nullptr, ErrorCode::InvalidArgument, "twisted modulus needs the matrix weight");
      require(!space.variable_exponent(), ErrorCode::InvalidArgument, "twisted modulus needs a constant exponent");
      out.equicontinuity = twisted_curve(family, *w, space.p(), ladders.scales, space.backend());
      break;
    case EquicontinuityNotion::averaging:
      for (double r : ladders.scales) out.equicontinuity.emplace_back(r, averaging_modulus(family, r, space));
      break;
  }
  return out;
}

}  // namespace mwkr
