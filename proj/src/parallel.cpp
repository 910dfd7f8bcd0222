#include "mwkr/parallel.hpp"

#include "mwkr/error.hpp"

namespace mwkr {

namespace {

double tree_sum(const double* data, std::size_t n) {
  if (n == 1) return data[0];
  if (n == 2) return data[0] + data[1];
  const std::size_t half = n / 2;
  return tree_sum(data, half) + tree_sum(data + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  return tree_sum(terms.data(), terms.size());
}

void set_thread_count(int threads) {
  require(threads >= 1, ErrorCode::InvalidArgument, "thread count must be positive");
  omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::EmptyCubeFamily: return "EmptyCubeFamily";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateNorm: return "DegenerateNorm";
    case ErrorCode::OffLattice: return "OffLattice";
    case ErrorCode::SchemeMismatch: return "SchemeMismatch";
    case ErrorCode::EmptyBall: return "EmptyBall";
    case ErrorCode::RadiusExceedsBox: return "RadiusExceedsBox";
    case ErrorCode::ModuliTooLarge: return "ModuliTooLarge";
    case ErrorCode::NotTotallyBoundedInput: return "NotTotallyBoundedInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace mwkr
