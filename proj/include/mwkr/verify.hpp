#pragma once

// Randomized property suites behind `verify-lemmas`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwkr/weights.hpp"

namespace mwkr {

struct SuiteResult {
  std::string name;
  std::string statement;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;  ///< largest violation (<= 0 when everything holds)
  double tolerance = 0.0;
  bool pass = true;
  std::string error_code;  ///< set when the suite aborted with a library error
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

/// Identities ||A^s|| = (max lambda)^s on PSD matrices and ||A^{-s}||^{-1} =
/// (min lambda)^s on positive-definite ones, d <= 6, s in {1/3, 1/2, 1, 2}.
/// Matrices are Q diag(lambda) Q^H with lambda drawn independently.
SuiteResult verify_spectral(std::uint64_t seed, int count = 500);

/// John sandwich for l^q norms (q in {1, 1.5, 3, inf}) and |A v| norms, d in {2, 3},
/// on `vectors` fresh vectors each.
SuiteResult verify_john(std::uint64_t seed, int count = 50, int vectors = 1000);

/// Modular/Luxemburg clauses (a)-(d) on random (f, rho, p(.)) at tolerance
/// 1e-8; clause (d) at the boundary modular = lambda^{p+}, with lambda = 1
/// on every fifth instance.
SuiteResult verify_luxemburg(std::uint64_t seed, int count = 100);

/// sup over random f and the N = 2048 ladder of ||S_r f|| / ||f|| in L^2(W) for
/// the rotated power weight, at N = 2048 and 4096; passes when both are finite
/// and differ by less than 10%.
SuiteResult verify_average_bound(std::uint64_t seed, int count = 50);

/// max_{|x| < L/2} |S_r f(x) - f(x)| for smooth bumps over r = L/2, L/4, ..., 4h
/// must not increase by more than 1e-12 per step.
SuiteResult verify_differentiation(std::uint64_t seed, int count = 20);

/// Loads a weight and checks it is PSD and invertible; library errors become
/// a failed suite carrying the error code.
SuiteResult verify_weight(const std::function<MatrixWeightField()>& load);

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool pass = true;
};

/// All suites above. `count` >= 0 replaces every instance count; 0 gives an
/// empty passing run.
VerifyReport verify_lemmas(std::uint64_t seed, int count = -1);

nlohmann::ordered_json to_json(const SuiteResult& suite);

}  // namespace mwkr
