#include "mwkr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mwkr/error.hpp"

namespace mwkr {

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::ShapeMismatch, "matrix is not square");
  require(m.rows() >= 1 && m.rows() <= kMaxDim, ErrorCode::ShapeMismatch,
          "matrix dimension must be in [1, 8], got " + std::to_string(m.rows()));
  double scale = 0.0;
  double asym = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      require(std::isfinite(m(i, j).real()) && std::isfinite(m(i, j).imag()), ErrorCode::NonFinite,
              "matrix entry is not finite");
      scale = std::max(scale, std::abs(m(i, j)));
      asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  require(asym <= kHermitianTolerance * scale, ErrorCode::NotHermitian,
          "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  CMatrix m = CMatrix::Identity(dim, dim);
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  const int d = static_cast<int>(values.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  CMatrix m = CMatrix::Zero(dim, dim);
  return HermitianMatrix(m);
}

bool HermitianMatrix::is_real() const noexcept {
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = 0; j < m_.cols(); ++j)
      if (m_(i, j).imag() != 0.0) return false;
  return true;
}

CMatrix SpectralDecomposition::reconstruct() const {
  const int d = dim();
  CMatrix scaled = vectors;
  for (int k = 0; k < d; ++k) scaled.col(k) *= eigenvalues(k);
  return scaled * vectors.adjoint();
}

namespace {

void orient_columns(CMatrix& v) {
  for (int k = 0; k < v.cols(); ++k) {
    for (int j = 0; j < v.rows(); ++j) {
      const double mag = std::abs(v(j, k));
      if (mag > 1e-12) {
        const cplx phase = std::conj(v(j, k)) / mag;
        v.col(k) *= phase;
        v(j, k) = cplx(mag, 0.0);
        break;
      }
    }
  }
}

SpectralDecomposition scalar_decomposition(const HermitianMatrix& a) {
  SpectralDecomposition s;
  s.eigenvalues = RVector::Constant(1, a(0, 0).real());
  s.vectors = CMatrix::Identity(1, 1);
  return s;
}

}  // namespace

SpectralDecomposition spectral_decompose_complex(const HermitianMatrix& a) {
  if (a.dim() == 1) return scalar_decomposition(a);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  require(solver.info() == Eigen::Success, ErrorCode::NonFinite, "eigensolver did not converge");
  SpectralDecomposition s;
  s.eigenvalues = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  orient_columns(s.vectors);
  return s;
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& a) {
  if (a.dim() == 1) return scalar_decomposition(a);
  if (!a.is_real()) return spectral_decompose_complex(a);
  const RMatrix real = a.matrix().real();
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(real);
  require(solver.info() == Eigen::Success, ErrorCode::NonFinite, "eigensolver did not converge");
  SpectralDecomposition s;
  s.eigenvalues = solver.eigenvalues();
  s.vectors = solver.eigenvectors().cast<cplx>();
  orient_columns(s.vectors);
  return s;
}

void clamp_psd(SpectralDecomposition& s) {
  double scale = 0.0;
  for (int k = 0; k < s.dim(); ++k) scale = std::max(scale, std::abs(s.eigenvalues(k)));
  const double tol = kPsdTolerance * scale;
  for (int k = 0; k < s.dim(); ++k) {
    double& lambda = s.eigenvalues(k);
    if (lambda >= 0.0) continue;
    require(lambda >= -tol, ErrorCode::NotPSD, "eigenvalue " + std::to_string(lambda) + " is negative");
    lambda = 0.0;
  }
}

bool is_positive_definite(const SpectralDecomposition& s) {
  const double top = s.max_eigenvalue();
  return top > 0.0 && s.min_eigenvalue() > kPdTolerance * top;
}

CMatrix power_from_spectrum(const SpectralDecomposition& s, double exponent) {
  const int d = s.dim();
  if (exponent < 0.0)
    require(is_positive_definite(s), ErrorCode::SingularMatrix, "negative power of a singular matrix");
  if (d == 1) {
    CMatrix out(1, 1);
    out(0, 0) = std::pow(s.eigenvalues(0), exponent);
    return out;
  }
  CMatrix scaled = s.vectors;
  for (int k = 0; k < d; ++k) scaled.col(k) *= std::pow(s.eigenvalues(k), exponent);
  return scaled * s.vectors.adjoint();
}

HermitianMatrix mat_power(const HermitianMatrix& a, double exponent) {
  SpectralDecomposition s = spectral_decompose(a);
  clamp_psd(s);
  return HermitianMatrix(power_from_spectrum(s, exponent));
}

double op_norm(const HermitianMatrix& a) {
  SpectralDecomposition s = spectral_decompose(a);
  clamp_psd(s);
  return s.max_eigenvalue();
}

double spectral_norm_squared(const CMatrix& b) {
  if (b.rows() == 1 && b.cols() == 1) return std::norm(b(0, 0));
  const CMatrix g = b.adjoint() * b;
  if (g.rows() == 2) {
    const double a = g(0, 0).real();
    const double c = g(1, 1).real();
    const double half_gap = 0.5 * (a - c);
    const double top = 0.5 * (a + c) + std::sqrt(half_gap * half_gap + std::norm(g(0, 1)));
    return std::max(top, 0.0);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g, Eigen::EigenvaluesOnly);
  return std::max(solver.eigenvalues()(g.rows() - 1), 0.0);
}

double spectral_norm(const CMatrix& b) {
  if (b.rows() == 1 && b.cols() == 1) return std::abs(b(0, 0));
  return std::sqrt(spectral_norm_squared(b));
}

}  // namespace mwkr
