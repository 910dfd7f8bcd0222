#include "mwkr/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mwkr/error.hpp"
#include "mwkr/parallel.hpp"

namespace mwkr {

namespace {

void require_grid_values(const Grid& grid, std::size_t count, const char* what) {
  require(count == grid.size(), ErrorCode::ShapeMismatch,
          std::string(what) + ": expected " + std::to_string(grid.size()) + " values, got " + std::to_string(count));
}

}  // namespace

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  require(a == b, ErrorCode::ShapeMismatch, std::string(what) + ": grids differ");
}

void require_same_shape(const SampledVectorField& a, const SampledVectorField& b) {
  require_same_grid(a.grid(), b.grid(), "vector fields");
  require(a.dim() == b.dim(), ErrorCode::ShapeMismatch, "vector fields have different component counts");
}

ScalarWeightField::ScalarWeightField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require_grid_values(grid_, values_.size(), "scalar weight");
  for (double v : values_)
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument, "scalar weight values must be finite and >= 0");
}

MeasureDensity::MeasureDensity(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require_grid_values(grid_, values_.size(), "measure density");
  for (double v : values_)
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument, "density values must be finite and >= 0");
  require(total_mass() > 0.0, ErrorCode::InvalidArgument, "measure of the box must be positive");
}

MeasureDensity MeasureDensity::lebesgue(const Grid& grid) {
  MeasureDensity mu(grid, std::vector<double>(grid.size(), 1.0));
  mu.lebesgue_ = true;
  return mu;
}

double MeasureDensity::total_mass() const { return pairwise_sum(values_) * grid_.cell_volume(); }

ExponentField::ExponentField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require_grid_values(grid_, values_.size(), "exponent field");
  require(!values_.empty(), ErrorCode::InvalidArgument, "empty exponent field");
  for (double v : values_)
    require(std::isfinite(v) && v >= 1.0, ErrorCode::InvalidArgument, "exponent values must be finite and >= 1");
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  p_minus_ = *lo;
  p_plus_ = *hi;
}

ExponentField ExponentField::constant(const Grid& grid, double p) {
  return ExponentField(grid, std::vector<double>(grid.size(), p));
}

SampledVectorField::SampledVectorField(Grid grid, int dim)
    : grid_(std::move(grid)), dim_(dim), data_(grid_.size() * static_cast<std::size_t>(dim)) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::ShapeMismatch, "vector dimension must be in [1, 8]");
}

SampledVectorField::SampledVectorField(Grid grid, int dim, std::vector<cplx> data)
    : grid_(std::move(grid)), dim_(dim), data_(std::move(data)) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::ShapeMismatch, "vector dimension must be in [1, 8]");
  require(data_.size() == grid_.size() * static_cast<std::size_t>(dim), ErrorCode::ShapeMismatch,
          "vector field data size does not match grid");
  for (const cplx& z : data_)
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::NonFinite, "vector field value is not finite");
}

SampledVectorField SampledVectorField::from_function(const Grid& grid, int dim,
                                                     const std::function<CVector(const Grid::Point&)>& fn) {
  SampledVectorField f(grid, dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CVector v = fn(grid.point(i));
    require(v.size() == dim, ErrorCode::ShapeMismatch, "generator returned wrong dimension");
    f.value(i) = v;
  }
  return f;
}

SampledVectorField& SampledVectorField::operator+=(const SampledVectorField& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SampledVectorField& SampledVectorField::operator-=(const SampledVectorField& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SampledVectorField& SampledVectorField::operator*=(cplx c) {
  for (cplx& z : data_) z *= c;
  return *this;
}

SampledVectorField SampledVectorField::masked(std::span<const std::uint8_t> mask) const {
  require(mask.size() == size(), ErrorCode::ShapeMismatch, "mask size does not match grid");
  SampledVectorField out(grid_, dim_);
  for (std::size_t i = 0; i < size(); ++i)
    if (mask[i]) out.value(i) = value(i);
  return out;
}

}  // namespace mwkr
