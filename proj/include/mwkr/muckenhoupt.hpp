#pragma once

// A_p constants of matrix and scalar weights, maximised over a finite cube
// family.

#include <cstddef>
#include <string>

#include "mwkr/cubes.hpp"
#include "mwkr/fields.hpp"
#include "mwkr/parallel.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

struct ApEstimate {
  double value = 0.0;
  Cube worst;
  std::size_t cubes_evaluated = 0;
  std::string family;
};

/// Discrete A_p characteristic of W over the cubes of `family`.
///
/// p > 1:  avg_Q ( avg_Q |W^{1/p}(x) W^{-1/p}(y)|^{p'} dy )^{p/p'} dx
/// p <= 1: max_{x in Q} avg_Q |W^{1/p}(y) W^{-1/p}(x)|^p dy
///
/// d = 1 is routed to scalar_ap_constant. Throws NotInvertible, EmptyCubeFamily.
ApEstimate ap_constant(const MatrixWeightField& w, double p, const CubeFamily& family,
                       Backend backend = Backend::openmp);

/// Muckenhoupt characteristic avg_Q w * (avg_Q w^{-1/(p-1)})^{p-1} for p > 1,
/// and avg_Q w / min_Q w for p <= 1.
ApEstimate scalar_ap_constant(const ScalarWeightField& w, double p, const CubeFamily& family,
                              Backend backend = Backend::openmp);

/// Value of the defining expression on a single cube.
double ap_cube_value(const MatrixWeightField& w, double p, const CubeFamily& family, const Cube& cube,
                     Backend backend = Backend::openmp);

}  // namespace mwkr
