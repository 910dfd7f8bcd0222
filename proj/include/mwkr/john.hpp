#pragma once

// John ellipsoid of a norm on C^d: a positive-definite W with
// rho(v) <= |W v| <= sqrt(d) (1 + delta) rho(v).

#include <cstdint>

#include "mwkr/linalg.hpp"
#include "mwkr/spaces.hpp"

namespace mwkr {

struct JohnOptions {
  /// Sphere sample directions; 0 selects 200 * d.
  int sphere_samples = 0;
  int max_iterations = 10000;
  /// Stop when max_i g_i <= (1 + gap) * D.
  double gap_tolerance = 1e-7;
  /// Fit rounds. Later rounds sample directions whitened by the previous fit
  /// and add the sphere points found furthest outside it.
  int rounds = 3;
  /// Outer sphere points added per round.
  int probes = 8;
  std::uint64_t seed = 0x6a6f686eULL;
};

struct JohnFit {
  HermitianMatrix w;
  /// max |W v| / rho(v) over the sphere sample, to compare with sqrt(d).
  double upper_ratio = 0.0;
  /// The rescaling applied to the projected ellipsoid matrix.
  double scale = 0.0;
  int iterations = 0;
  double gap = 0.0;
  int samples = 0;
};

/// Samples the rho-unit sphere, solves the centred minimum-volume enclosing
/// ellipsoid of the symmetrised real sample (Khachiyan iterations with away
/// steps), projects the quadratic form onto Hermitian matrices, takes its
/// square root and rescales so that rho(v) <= |W v| is tight on the sample.
/// Throws DegenerateNorm if rho vanishes on a sampled direction or the
/// sample does not span.
JohnFit john_ellipsoid(const Norm& rho, const JohnOptions& options = {});

struct SandwichCheck {
  double min_lower = 0.0;  ///< min |W v| / rho(v); should be >= 1
  double max_upper = 0.0;  ///< max |W v| / (sqrt(d) rho(v)); should be <= 1 + delta
  bool pass = false;
};

/// Tests rho(v) <= |W v| <= sqrt(d)(1 + delta) rho(v) on fresh random vectors.
SandwichCheck check_sandwich(const HermitianMatrix& w, const Norm& rho, int vectors, std::uint64_t seed,
                             double delta = 0.05);

}  // namespace mwkr
