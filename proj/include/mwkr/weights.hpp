#pragma once

// Matrix weights W : grid -> PSD d x d matrices, with the pointwise spectral
// decompositions cached at construction.

#include <functional>
#include <span>
#include <vector>

#include "mwkr/fields.hpp"
#include "mwkr/grid.hpp"
#include "mwkr/linalg.hpp"

namespace mwkr {

class MatrixWeightField {
 public:
  /// Decomposes every value; throws NotPSD if any value has an eigenvalue
  /// below -tol_psd. The field is flagged invertible when every value is
  /// positive-definite.
  MatrixWeightField(Grid grid, std::vector<HermitianMatrix> values);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool invertible() const noexcept { return invertible_; }

  const HermitianMatrix& operator[](std::size_t i) const { return values_[i]; }
  std::span<const HermitianMatrix> values() const noexcept { return values_; }
  const SpectralDecomposition& spectrum(std::size_t i) const { return spectra_[i]; }

  /// W(x)^s at every point. Negative s requires invertible().
  std::vector<CMatrix> powers(double exponent) const;
  /// ||W(x)||_op at every point.
  std::vector<double> operator_norms() const;
  /// ||W(x)^{-1}||_op^{-1} = min eigenvalue at every point.
  std::vector<double> min_eigenvalues() const;

 private:
  Grid grid_;
  int dim_;
  std::vector<HermitianMatrix> values_;
  std::vector<SpectralDecomposition> spectra_;
  bool invertible_ = true;
};

/// lambda_1(x) <= ... <= lambda_d(x).
std::vector<ScalarWeightField> eigen_fields(const MatrixWeightField& w);

/// D(x) = diag(lambda_1(x), ..., lambda_d(x)), the diagonal factor of W = U D U^H.
MatrixWeightField eigenvalue_weight(const MatrixWeightField& w);

using RotationField = std::function<CMatrix(const Grid::Point&)>;

/// Rotation by angle(x) in the plane of the first two coordinates.
RotationField planar_rotation(std::function<double(const Grid::Point&)> angle, int dim);

/// W(x) = R(x) diag(|x|^alpha_1, ..., |x|^alpha_d) R(x)^H at cell centres.
MatrixWeightField make_power_weight(const Grid& grid, std::span<const double> alpha,
                                    const RotationField& rotation = {});

MatrixWeightField constant_weight(const Grid& grid, const HermitianMatrix& value);

/// d = 1 matrix weight with the given scalar values.
MatrixWeightField as_matrix_weight(const ScalarWeightField& w);

}  // namespace mwkr
