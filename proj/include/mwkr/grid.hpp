#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mwkr {

/// Uniform cell-centred sampling of the box [-L, L)^n, n in {1, 2}, with N
/// cells per axis (N a power of two, N >= 8). Quadrature is the midpoint rule:
/// each cell contributes value * h^n with h = 2L / N. Linear indices are
/// row-major with axis 0 slowest.
class Grid {
 public:
  using Point = std::array<double, 2>;
  using Cell = std::array<int, 2>;

  Grid(int dim, double half_width, int points_per_axis);

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  int points_per_axis() const noexcept { return n_; }
  int log2_points() const noexcept { return log2_n_; }
  double spacing() const noexcept { return h_; }
  double cell_volume() const noexcept { return volume_; }
  std::size_t size() const noexcept { return size_; }

  double coordinate(int i) const noexcept { return -half_width_ + (i + 0.5) * h_; }
  Cell cell(std::size_t index) const noexcept;
  std::size_t index(const Cell& c) const noexcept;
  bool in_range(const Cell& c) const noexcept;
  Point point(std::size_t index) const noexcept;
  /// Euclidean norm of the cell centre.
  double radius(std::size_t index) const noexcept;

  /// 1 where |x| < r (strict), 0 elsewhere.
  std::vector<std::uint8_t> ball_mask(double r) const;
  /// 1 where |x| >= r.
  std::vector<std::uint8_t> ball_complement_mask(double r) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.half_width_ == b.half_width_ && a.n_ == b.n_;
  }

 private:
  int dim_;
  double half_width_;
  int n_;
  int log2_n_;
  double h_;
  double volume_;
  std::size_t size_;
};

}  // namespace mwkr
