#include "mwkr/cubes.hpp"

#include <sstream>

#include "mwkr/error.hpp"

namespace mwkr {

CubeFamily::CubeFamily(const Grid& grid, std::string description)
    : grid_(grid), description_(std::move(description)) {}

void CubeFamily::add(const Cube& cube) {
  const int n = grid_.points_per_axis();
  require(cube.side >= 1 && cube.side <= n, ErrorCode::InvalidArgument, "cube side out of range");
  for (int k = 0; k < grid_.dim(); ++k)
    require(cube.lo[k] >= 0 && cube.lo[k] + cube.side <= n, ErrorCode::InvalidArgument, "cube leaves the grid box");
  Cube c = cube;
  if (grid_.dim() == 1) c.lo[1] = 0;
  if (seen_.emplace(c.lo[0], c.lo[1], c.side).second) cubes_.push_back(c);
}

void CubeFamily::append(const CubeFamily& other) {
  require(other.grid_ == grid_, ErrorCode::ShapeMismatch, "cube families live on different grids");
  for (const Cube& c : other.cubes_) add(c);
  if (!other.description_.empty()) description_ += (description_.empty() ? "" : " + ") + other.description_;
}

std::vector<std::size_t> CubeFamily::cells(const Cube& cube) const {
  std::vector<std::size_t> out;
  if (grid_.dim() == 1) {
    out.reserve(static_cast<std::size_t>(cube.side));
    for (int i = 0; i < cube.side; ++i) out.push_back(grid_.index({cube.lo[0] + i, 0}));
  } else {
    out.reserve(static_cast<std::size_t>(cube.side) * static_cast<std::size_t>(cube.side));
    for (int i = 0; i < cube.side; ++i)
      for (int j = 0; j < cube.side; ++j) out.push_back(grid_.index({cube.lo[0] + i, cube.lo[1] + j}));
  }
  return out;
}

std::string CubeFamily::describe(const Cube& cube) const {
  std::ostringstream os;
  const double h = grid_.spacing();
  const double l = grid_.half_width();
  for (int k = 0; k < grid_.dim(); ++k) {
    if (k) os << 'x';
    os << '[' << -l + cube.lo[k] * h << ',' << -l + (cube.lo[k] + cube.side) * h << ')';
  }
  return os.str();
}

namespace {

int resolve_max_generation(const Grid& grid, int max_generation) {
  return max_generation < 0 ? grid.log2_points() : std::min(max_generation, grid.log2_points());
}

}  // namespace

CubeFamily dyadic_cubes(const Grid& grid, int min_generation, int max_generation) {
  const int gmax = resolve_max_generation(grid, max_generation);
  std::ostringstream desc;
  desc << "dyadic cubes, generations " << min_generation << ".." << gmax;
  CubeFamily family(grid, desc.str());
  const int n = grid.points_per_axis();
  for (int g = min_generation; g <= gmax; ++g) {
    const int side = n >> g;
    for (int a = 0; a < n; a += side) {
      if (grid.dim() == 1) {
        family.add({{a, 0}, side});
      } else {
        for (int b = 0; b < n; b += side) family.add({{a, b}, side});
      }
    }
  }
  return family;
}

CubeFamily origin_anchored_cubes(const Grid& grid, int min_generation, int max_generation) {
  const int gmax = resolve_max_generation(grid, max_generation);
  std::ostringstream desc;
  desc << "origin-anchored cubes, generations " << min_generation << ".." << gmax;
  CubeFamily family(grid, desc.str());
  const int n = grid.points_per_axis();
  const int mid = n / 2;
  for (int g = std::max(min_generation, 1); g <= gmax; ++g) {
    const int side = n >> g;
    const int starts[2] = {mid - side, mid};
    if (grid.dim() == 1) {
      for (int a : starts) family.add({{a, 0}, side});
      if (side >= 2) family.add({{mid - side / 2, 0}, side});
    } else {
      for (int a : starts)
        for (int b : starts) family.add({{a, b}, side});
      if (side >= 2) family.add({{mid - side / 2, mid - side / 2}, side});
    }
  }
  return family;
}

CubeFamily default_cube_family(const Grid& grid) {
  CubeFamily family = dyadic_cubes(grid);
  family.append(origin_anchored_cubes(grid));
  return family;
}

CubeFamily sliding_cubes(const Grid& grid, int divisions, int min_generation, int max_generation) {
  require(divisions >= 1, ErrorCode::InvalidArgument, "sliding cube divisions must be positive");
  const int gmax = resolve_max_generation(grid, max_generation);
  std::ostringstream desc;
  desc << "sliding cubes, stride side/" << divisions << ", generations " << min_generation << ".." << gmax;
  CubeFamily family(grid, desc.str());
  const int n = grid.points_per_axis();
  for (int g = min_generation; g <= gmax; ++g) {
    const int side = n >> g;
    const int stride = std::max(1, side / divisions);
    for (int a = 0; a + side <= n; a += stride) {
      if (grid.dim() == 1) {
        family.add({{a, 0}, side});
      } else {
        for (int b = 0; b + side <= n; b += stride) family.add({{a, b}, side});
      }
    }
  }
  return family;
}

}  // namespace mwkr
