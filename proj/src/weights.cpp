#include "mwkr/weights.hpp"

#include <cmath>
#include <string>

#include "mwkr/error.hpp"
#include "mwkr/parallel.hpp"

namespace mwkr {

MatrixWeightField::MatrixWeightField(Grid grid, std::vector<HermitianMatrix> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), ErrorCode::ShapeMismatch,
          "weight field has " + std::to_string(values_.size()) + " values for " + std::to_string(grid_.size()) +
              " grid points");
  dim_ = values_.front().dim();
  for (const auto& v : values_)
    require(v.dim() == dim_, ErrorCode::ShapeMismatch, "weight values have inconsistent dimensions");
  spectra_.resize(values_.size());
  kernels::for_parallel(values_.size(), [&](std::size_t i) {
    SpectralDecomposition s = spectral_decompose(values_[i]);
    clamp_psd(s);
    spectra_[i] = std::move(s);
  });
  for (const auto& s : spectra_) {
    if (!is_positive_definite(s)) {
      invertible_ = false;
      break;
    }
  }
}

std::vector<CMatrix> MatrixWeightField::powers(double exponent) const {
  if (exponent < 0.0) require(invertible_, ErrorCode::NotInvertible, "negative power of a non-invertible weight");
  std::vector<CMatrix> out(size());
  kernels::for_parallel(size(), [&](std::size_t i) { out[i] = power_from_spectrum(spectra_[i], exponent); });
  return out;
}

std::vector<double> MatrixWeightField::operator_norms() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = spectra_[i].max_eigenvalue();
  return out;
}

std::vector<double> MatrixWeightField::min_eigenvalues() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = spectra_[i].min_eigenvalue();
  return out;
}

std::vector<ScalarWeightField> eigen_fields(const MatrixWeightField& w) {
  std::vector<ScalarWeightField> out;
  out.reserve(static_cast<std::size_t>(w.dim()));
  for (int k = 0; k < w.dim(); ++k) {
    std::vector<double> values(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) values[i] = w.spectrum(i).eigenvalues(k);
    out.emplace_back(w.grid(), std::move(values));
  }
  return out;
}

MatrixWeightField eigenvalue_weight(const MatrixWeightField& w) {
  std::vector<HermitianMatrix> values;
  values.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const RVector& ev = w.spectrum(i).eigenvalues;
    values.push_back(HermitianMatrix::diagonal({ev.data(), static_cast<std::size_t>(ev.size())}));
  }
  return MatrixWeightField(w.grid(), std::move(values));
}

RotationField planar_rotation(std::function<double(const Grid::Point&)> angle, int dim) {
  require(dim >= 2, ErrorCode::InvalidArgument, "planar rotation needs d >= 2");
  return [angle = std::move(angle), dim](const Grid::Point& x) {
    const double theta = angle(x);
    CMatrix r = CMatrix::Identity(dim, dim);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    return r;
  };
}

MatrixWeightField make_power_weight(const Grid& grid, std::span<const double> alpha, const RotationField& rotation) {
  const int d = static_cast<int>(alpha.size());
  require(d >= 1 && d <= kMaxDim, ErrorCode::InvalidArgument, "power weight needs 1..8 exponents");
  std::vector<HermitianMatrix> values;
  values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.radius(i);
    CMatrix diag = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) diag(k, k) = std::pow(r, alpha[static_cast<std::size_t>(k)]);
    if (rotation) {
      const CMatrix rot = rotation(grid.point(i));
      require(rot.rows() == d && rot.cols() == d, ErrorCode::ShapeMismatch, "rotation has wrong dimension");
      values.emplace_back(CMatrix(rot * diag * rot.adjoint()));
    } else {
      values.emplace_back(diag);
    }
  }
  return MatrixWeightField(grid, std::move(values));
}

MatrixWeightField constant_weight(const Grid& grid, const HermitianMatrix& value) {
  return MatrixWeightField(grid, std::vector<HermitianMatrix>(grid.size(), value));
}

MatrixWeightField as_matrix_weight(const ScalarWeightField& w) {
  std::vector<HermitianMatrix> values;
  values.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    CMatrix m(1, 1);
    m(0, 0) = w[i];
    values.emplace_back(m);
  }
  return MatrixWeightField(w.grid(), std::move(values));
}

}  // namespace mwkr
