#include <cmath>
#include <random>

#include "mwkr/compactness.hpp"
#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"

namespace mwkr {

FunctionFamily::FunctionFamily(std::vector<SampledVectorField> members, std::string description)
    : members_(std::move(members)), description_(std::move(description)) {
  require(!members_.empty(), ErrorCode::InvalidArgument, "function family is empty");
  for (const auto& m : members_) require_same_shape(members_.front(), m);
}

FunctionFamily gaussian_bumps(const Grid& grid, int dim, std::uint64_t seed, const BumpOptions& options) {
  require(options.count >= 1, ErrorCode::InvalidArgument, "bump count must be positive");
  require(options.width_min > 0.0 && options.width_max >= options.width_min, ErrorCode::InvalidArgument,
          "bump widths must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> center(options.center_min, options.center_max);
  std::uniform_real_distribution<double> width(options.width_min, options.width_max);
  std::vector<SampledVectorField> members;
  members.reserve(static_cast<std::size_t>(options.count));
  for (int k = 0; k < options.count; ++k) {
    CVector a(dim);
    for (int c = 0; c < dim; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(c) = cplx(re, im);
    }
    a /= a.norm();
    Grid::Point c0{0.0, 0.0};
    for (int j = 0; j < grid.dim(); ++j) c0[static_cast<std::size_t>(j)] = center(rng);
    const double w = width(rng);
    members.push_back(SampledVectorField::from_function(grid, dim, [&](const Grid::Point& x) {
      double r2 = 0.0;
      for (int j = 0; j < grid.dim(); ++j) {
        const double t = x[static_cast<std::size_t>(j)] - c0[static_cast<std::size_t>(j)];
        r2 += t * t;
      }
      return CVector(a * std::exp(-r2 / (2.0 * w * w)));
    }));
  }
  std::string desc = "Gaussian bumps, centers in [" + format_double(options.center_min) + ", " +
                     format_double(options.center_max) + "], widths in [" + format_double(options.width_min) + ", " +
                     format_double(options.width_max) + "], " + std::to_string(options.count) + " members, seed " +
                     std::to_string(seed);
  return FunctionFamily(std::move(members), std::move(desc));
}

}  // namespace mwkr
