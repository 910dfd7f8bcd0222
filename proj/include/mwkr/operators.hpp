#pragma once

// Translation, dyadic averaging, ball averaging, the Christ-Goldberg maximal
// operator and the symmetric-difference probe of metric continuity.

#include <cstddef>
#include <vector>

#include "mwkr/fields.hpp"
#include "mwkr/parallel.hpp"
#include "mwkr/spaces.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

/// (tau f)(x) = f(x - shift h), zero outside the box. `shift` is in cells.
SampledVectorField translate_cells(const SampledVectorField& f, const Grid::Cell& shift);

/// (tau_y f)(x) = f(x - y) for a lattice vector y; throws OffLattice otherwise.
SampledVectorField translate(const SampledVectorField& f, const Grid::Point& y);

/// Lattice shifts s (in cells) with |s| h <= r, ordered by axis-0 then axis-1 offset.
std::vector<Grid::Cell> lattice_shifts(const Grid& grid, double r);

/// Cubes of side 2^t partitioning R_m = [-2^m, 2^m)^n.
class DyadicScheme {
 public:
  /// Throws SchemeMismatch unless t <= m, R_m lies in the box and the cube
  /// edges fall on cell boundaries.
  DyadicScheme(const Grid& grid, int m, int t);

  const Grid& grid() const noexcept { return grid_; }
  int outer() const noexcept { return m_; }
  int inner() const noexcept { return t_; }
  /// 2^{(m+1-t) n}.
  std::size_t cube_count() const noexcept { return cube_count_; }
  int cells_per_side() const noexcept { return side_; }
  std::size_t cells_per_cube() const noexcept;
  /// Cube containing grid point i, or -1 outside R_m.
  std::ptrdiff_t cube_of(std::size_t i) const noexcept { return owner_[i]; }
  /// Cells of cube j, row-major.
  std::vector<std::size_t> cube_cells(std::size_t j) const;
  /// 1 on R_m.
  std::vector<std::uint8_t> support_mask() const;

 private:
  Grid grid_;
  int m_;
  int t_;
  int side_;
  int first_;
  int cubes_per_axis_;
  std::size_t cube_count_;
  std::vector<std::ptrdiff_t> owner_;
};

/// Means of f over every cube, cube-major then component.
std::vector<cplx> dyadic_coefficients(const SampledVectorField& f, const DyadicScheme& scheme,
                                      Backend backend = Backend::openmp);

/// The piecewise-constant field with the given cube means, zero off R_m.
SampledVectorField dyadic_expand(std::span<const cplx> coefficients, const DyadicScheme& scheme, int dim);

/// Phi f: cube means on R_m, zero elsewhere. Exactly idempotent.
SampledVectorField dyadic_average(const SampledVectorField& f, const DyadicScheme& scheme,
                                  Backend backend = Backend::openmp);

/// Open discrete balls B(x, r): cells whose integer offset s from x has |s| h < r.
class BallScheme {
 public:
  /// Requires r >= 2h.
  BallScheme(const Grid& grid, double radius);

  const Grid& grid() const noexcept { return grid_; }
  double radius() const noexcept { return radius_; }
  /// Largest per-axis offset inside the ball.
  int reach() const noexcept { return reach_; }
  const std::vector<Grid::Cell>& offsets() const noexcept { return offsets_; }
  bool contains(const Grid::Cell& offset) const noexcept;
  /// Cells of B(x_center, r) clipped to the box.
  std::vector<std::size_t> cells(std::size_t center) const;

 private:
  Grid grid_;
  double radius_;
  int reach_;
  std::vector<Grid::Cell> offsets_;
};

/// S_r f(x) = mu[B(x,r)]^{-1} sum_{B(x,r)} f u h^n over clipped balls.
/// Points with eval[i] == 0 are left at zero; an empty mask evaluates all.
/// Throws EmptyBall when an evaluated ball has zero mass.
SampledVectorField ball_average(const SampledVectorField& f, const MeasureDensity& mu, const BallScheme& scheme,
                                CellMask eval = {}, Backend backend = Backend::openmp);

/// 2h, 4h, ... up to L.
std::vector<double> dyadic_radii(const Grid& grid);

/// M f(x) = max over balls B(z, r) containing x, z a grid point, r in `radii`,
/// of the Lebesgue mean over B of |W^{1/p}(x) W^{-1/p}(y) f(y)|.
ScalarWeightField christ_goldberg_maximal(const SampledVectorField& f, const MatrixWeightField& w, double p,
                                          const std::vector<double>& radii, Backend backend = Backend::openmp);

struct DominationRatio {
  double ratio = 0.0;
  std::size_t worst_point = 0;
};

/// max_x |W^{1/p}(x) S_r f(x)| / M(W^{1/p} f)(x) over points where the
/// maximal function is positive, S_r taken with Lebesgue measure.
DominationRatio maximal_domination_ratio(const SampledVectorField& f, const MatrixWeightField& w, double p, double r,
                                         const std::vector<double>& radii, Backend backend = Backend::openmp);

/// mu[B(x, r) symmetric-difference B(y, r)] for grid points x, y.
double symdiff_measure(std::size_t x, std::size_t y, double r, const MeasureDensity& mu);

}  // namespace mwkr
