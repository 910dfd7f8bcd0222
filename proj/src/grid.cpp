#include "mwkr/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "mwkr/error.hpp"

namespace mwkr {

Grid::Grid(int dim, double half_width, int points_per_axis)
    : dim_(dim), half_width_(half_width), n_(points_per_axis) {
  require(dim == 1 || dim == 2, ErrorCode::InvalidArgument, "grid dimension must be 1 or 2");
  require(std::isfinite(half_width) && half_width > 0.0, ErrorCode::InvalidArgument,
          "grid half-width must be positive");
  require(points_per_axis >= 8 && std::has_single_bit(static_cast<unsigned>(points_per_axis)),
          ErrorCode::InvalidArgument,
          "points per axis must be a power of two >= 8, got " + std::to_string(points_per_axis));
  log2_n_ = std::countr_zero(static_cast<unsigned>(points_per_axis));
  h_ = 2.0 * half_width / points_per_axis;
  volume_ = dim == 1 ? h_ : h_ * h_;
  size_ = dim == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
}

Grid::Cell Grid::cell(std::size_t index) const noexcept {
  if (dim_ == 1) return {static_cast<int>(index), 0};
  return {static_cast<int>(index / static_cast<std::size_t>(n_)), static_cast<int>(index % static_cast<std::size_t>(n_))};
}

std::size_t Grid::index(const Cell& c) const noexcept {
  if (dim_ == 1) return static_cast<std::size_t>(c[0]);
  return static_cast<std::size_t>(c[0]) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c[1]);
}

bool Grid::in_range(const Cell& c) const noexcept {
  if (c[0] < 0 || c[0] >= n_) return false;
  if (dim_ == 2 && (c[1] < 0 || c[1] >= n_)) return false;
  return true;
}

Grid::Point Grid::point(std::size_t index) const noexcept {
  const Cell c = cell(index);
  return {coordinate(c[0]), dim_ == 2 ? coordinate(c[1]) : 0.0};
}

double Grid::radius(std::size_t index) const noexcept {
  const Point p = point(index);
  return dim_ == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

std::vector<std::uint8_t> Grid::ball_mask(double r) const {
  std::vector<std::uint8_t> mask(size_);
  for (std::size_t i = 0; i < size_; ++i) mask[i] = radius(i) < r ? 1 : 0;
  return mask;
}

std::vector<std::uint8_t> Grid::ball_complement_mask(double r) const {
  std::vector<std::uint8_t> mask(size_);
  for (std::size_t i = 0; i < size_; ++i) mask[i] = radius(i) >= r ? 1 : 0;
  return mask;
}

}  // namespace mwkr
