#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mwkr/fields.hpp"
#include "mwkr/linalg.hpp"

namespace mwkr::testing {

inline CMatrix random_matrix(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

inline CMatrix random_unitary(std::mt19937_64& rng, int d) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, d));
  return qr.householderQ() * CMatrix::Identity(d, d);
}

/// Q diag(lambda) Q^H.
inline HermitianMatrix with_spectrum(const CMatrix& q, const std::vector<double>& lambda) {
  CMatrix s = q;
  for (int k = 0; k < q.cols(); ++k) s.col(k) *= lambda[static_cast<std::size_t>(k)];
  return HermitianMatrix(CMatrix(s * q.adjoint()));
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline SampledVectorField random_field(std::mt19937_64& rng, const Grid& grid, int d) {
  std::normal_distribution<double> normal;
  std::vector<cplx> data(grid.size() * static_cast<std::size_t>(d));
  for (auto& z : data) z = cplx(normal(rng), normal(rng));
  return SampledVectorField(grid, d, std::move(data));
}

inline SampledVectorField indicator(const Grid& grid, int d, double a, double b, int component = 0) {
  SampledVectorField f(grid, d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i)[0];
    if (x >= a && x < b) f.value(i)(component) = 1.0;
  }
  return f;
}

}  // namespace mwkr::testing
