#include "mwkr/muckenhoupt.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mwkr/error.hpp"

namespace mwkr {

namespace {

void check_inputs(const Grid& weight_grid, double p, const CubeFamily& family) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive and finite");
  require(!family.empty(), ErrorCode::EmptyCubeFamily, "cube family is empty");
  require_same_grid(weight_grid, family.grid(), "cube family");
}

struct PowerTables {
  std::vector<CMatrix> forward;
  std::vector<CMatrix> inverse;
};

double matrix_cube_value(const PowerTables& t, double p, const std::vector<std::size_t>& cells, Backend backend) {
  const std::size_t n = cells.size();
  const double count = static_cast<double>(n);
  if (p > 1.0) {
    const double half_conj = 0.5 * p / (p - 1.0);
    const double outer = p - 1.0;
    std::vector<double> terms(n);
    for_each_index(backend, n, [&](std::size_t a) {
      const CMatrix& px = t.forward[cells[a]];
      std::vector<double> inner(n);
      for (std::size_t b = 0; b < n; ++b)
        inner[b] = std::pow(spectral_norm_squared(px * t.inverse[cells[b]]), half_conj);
      terms[a] = std::pow(pairwise_sum(inner) / count, outer);
    });
    return pairwise_sum(terms) / count;
  }
  const double half_p = 0.5 * p;
  return max_terms(backend, n, [&](std::size_t a) {
    const CMatrix& qx = t.inverse[cells[a]];
    std::vector<double> inner(n);
    for (std::size_t b = 0; b < n; ++b) inner[b] = std::pow(spectral_norm_squared(t.forward[cells[b]] * qx), half_p);
    return pairwise_sum(inner) / count;
  });
}

double scalar_cube_value(std::span<const double> w, double p, const std::vector<std::size_t>& cells) {
  const std::size_t n = cells.size();
  const double count = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t a = 0; a < n; ++a) terms[a] = w[cells[a]];
  const double mean = pairwise_sum(terms) / count;
  if (p > 1.0) {
    const double dual = -1.0 / (p - 1.0);
    for (std::size_t a = 0; a < n; ++a) terms[a] = std::pow(w[cells[a]], dual);
    return mean * std::pow(pairwise_sum(terms) / count, p - 1.0);
  }
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n; ++a) low = std::min(low, w[cells[a]]);
  return mean / low;
}

ApEstimate pick_worst(const CubeFamily& family, const std::vector<double>& values) {
  ApEstimate out;
  out.family = family.description();
  out.cubes_evaluated = values.size();
  out.value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] > out.value) {
      out.value = values[k];
      out.worst = family.cubes()[k];
    }
  }
  return out;
}

}  // namespace

ApEstimate scalar_ap_constant(const ScalarWeightField& w, double p, const CubeFamily& family, Backend backend) {
  check_inputs(w.grid(), p, family);
  for (double v : w.values())
    require(v > 0.0, ErrorCode::NotInvertible, "scalar weight vanishes at a grid point");
  std::vector<double> values(family.size());
  for_each_index(backend, family.size(), [&](std::size_t k) {
    values[k] = scalar_cube_value(w.values(), p, family.cells(family.cubes()[k]));
  });
  return pick_worst(family, values);
}

ApEstimate ap_constant(const MatrixWeightField& w, double p, const CubeFamily& family, Backend backend) {
  check_inputs(w.grid(), p, family);
  require(w.invertible(), ErrorCode::NotInvertible, "A_p constant needs an invertible weight");
  if (w.dim() == 1) {
    std::vector<double> values(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) values[i] = w[i](0, 0).real();
    return scalar_ap_constant(ScalarWeightField(w.grid(), std::move(values)), p, family, backend);
  }
  const PowerTables tables{w.powers(1.0 / p), w.powers(-1.0 / p)};
  std::vector<double> values(family.size());
  for (std::size_t k = 0; k < family.size(); ++k)
    values[k] = matrix_cube_value(tables, p, family.cells(family.cubes()[k]), backend);
  return pick_worst(family, values);
}

double ap_cube_value(const MatrixWeightField& w, double p, const CubeFamily& family, const Cube& cube,
                     Backend backend) {
  check_inputs(w.grid(), p, family);
  require(w.invertible(), ErrorCode::NotInvertible, "A_p constant needs an invertible weight");
  const auto cells = family.cells(cube);
  if (w.dim() == 1) {
    std::vector<double> values(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) values[i] = w[i](0, 0).real();
    return scalar_cube_value(values, p, cells);
  }
  const PowerTables tables{w.powers(1.0 / p), w.powers(-1.0 / p)};
  return matrix_cube_value(tables, p, cells, backend);
}

}  // namespace mwkr
