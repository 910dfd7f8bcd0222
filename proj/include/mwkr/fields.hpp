#pragma once

// Sampled fields on a Grid: scalar weights, measure densities, exponent
// functions and C^d-valued functions.

#include <functional>
#include <span>
#include <vector>

#include "mwkr/grid.hpp"
#include "mwkr/linalg.hpp"

namespace mwkr {

/// Non-negative finite values per grid point.
class ScalarWeightField {
 public:
  ScalarWeightField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Density u >= 0 of a measure dmu = u dx; mu(E) is the midpoint quadrature of
/// u over the cells of E.
class MeasureDensity {
 public:
  MeasureDensity(Grid grid, std::vector<double> values);
  static MeasureDensity lebesgue(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_lebesgue() const noexcept { return lebesgue_; }
  double total_mass() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  bool lebesgue_ = false;
};

/// p(x) in [1, p_+] with p_+ finite.
class ExponentField {
 public:
  ExponentField(Grid grid, std::vector<double> values);
  static ExponentField constant(const Grid& grid, double p);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double p_minus() const noexcept { return p_minus_; }
  double p_plus() const noexcept { return p_plus_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  double p_minus_;
  double p_plus_;
};

/// f : grid -> C^d, stored point-major.
class SampledVectorField {
 public:
  using ConstValue = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, 1>>;
  using Value = Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, 1>>;

  SampledVectorField(Grid grid, int dim);
  SampledVectorField(Grid grid, int dim, std::vector<cplx> data);

  static SampledVectorField from_function(const Grid& grid, int dim,
                                          const std::function<CVector(const Grid::Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return grid_.size(); }

  ConstValue value(std::size_t i) const { return ConstValue(data_.data() + i * dim_, dim_); }
  Value value(std::size_t i) { return Value(data_.data() + i * dim_, dim_); }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> at(std::size_t i) const { return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }

  SampledVectorField& operator+=(const SampledVectorField& other);
  SampledVectorField& operator-=(const SampledVectorField& other);
  SampledVectorField& operator*=(cplx c);

  friend SampledVectorField operator+(SampledVectorField a, const SampledVectorField& b) { return a += b; }
  friend SampledVectorField operator-(SampledVectorField a, const SampledVectorField& b) { return a -= b; }
  friend SampledVectorField operator*(cplx c, SampledVectorField a) { return a *= c; }

  /// Copy with values zeroed wherever mask == 0.
  SampledVectorField masked(std::span<const std::uint8_t> mask) const;

  friend bool operator==(const SampledVectorField& a, const SampledVectorField& b) {
    return a.grid_ == b.grid_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  Grid grid_;
  int dim_;
  std::vector<cplx> data_;
};

void require_same_shape(const SampledVectorField& a, const SampledVectorField& b);
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace mwkr
