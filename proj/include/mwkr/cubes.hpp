#pragma once

#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mwkr/grid.hpp"

namespace mwkr {

/// Grid-aligned cube: cells lo[k] <= i_k < lo[k] + side on every axis.
struct Cube {
  Grid::Cell lo{0, 0};
  int side = 1;

  friend bool operator==(const Cube&, const Cube&) = default;
};

/// A finite, documented family of cubes. Every A_p estimate is a maximum over
/// one of these, never over all cubes.
class CubeFamily {
 public:
  CubeFamily(const Grid& grid, std::string description);

  /// Adds the cube unless it is already present; it must lie inside the box.
  void add(const Cube& cube);
  void append(const CubeFamily& other);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Cube> cubes() const noexcept { return cubes_; }
  std::size_t size() const noexcept { return cubes_.size(); }
  bool empty() const noexcept { return cubes_.empty(); }
  const std::string& description() const noexcept { return description_; }

  std::vector<std::size_t> cells(const Cube& cube) const;
  /// "[a,b)x[c,d)" in coordinates.
  std::string describe(const Cube& cube) const;

 private:
  Grid grid_;
  std::string description_;
  std::vector<Cube> cubes_;
  std::set<std::tuple<int, int, int>> seen_;
};

/// Dyadic cubes of the box: generation g has side N / 2^g cells. Defaults
/// cover generations 0..log2(N).
CubeFamily dyadic_cubes(const Grid& grid, int min_generation = 0, int max_generation = -1);

/// Cubes of generation g with a vertex at the origin (one per orthant) plus
/// the origin-centred cube of the same side.
CubeFamily origin_anchored_cubes(const Grid& grid, int min_generation = 1, int max_generation = -1);

/// Dyadic cubes of all generations plus origin-anchored cubes of all scales.
CubeFamily default_cube_family(const Grid& grid);

/// Cubes of side N / 2^g at every offset that is a multiple of
/// max(1, side / divisions) cells.
CubeFamily sliding_cubes(const Grid& grid, int divisions, int min_generation = 0, int max_generation = -1);

}  // namespace mwkr
