#pragma once

// Small self-adjoint matrices over C^d (d <= 8): spectral decomposition,
// fractional powers A^s = U diag(lambda^s) U^H and operator norms.

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace mwkr {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 8;

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline constexpr double kHermitianTolerance = 1e-12;
/// Relative tolerance: eigenvalues in [-kPsdTolerance * max|lambda|, 0) clamp to 0.
inline constexpr double kPsdTolerance = 1e-10;
/// Relative tolerance: a PSD matrix counts as positive-definite when
/// min lambda > kPdTolerance * max|lambda|.
inline constexpr double kPdTolerance = 1e-12;

/// A conjugate-symmetric d x d matrix. Construction validates symmetry to
/// kHermitianTolerance (relative to the largest entry) and stores the exactly
/// symmetrized (A + A^H) / 2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix zero(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }
  bool is_real() const noexcept;

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) { return a.m_ == b.m_; }

 private:
  CMatrix m_;
};

/// Eigenvalues ascending; column k of `vectors` is the unit eigenvector of
/// eigenvalues[k] with its first nonzero component real and positive.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix vectors;

  int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
  CMatrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& a);

/// Complex solver only; used to cross-check the real-input fast path.
SpectralDecomposition spectral_decompose_complex(const HermitianMatrix& a);

/// Clamps eigenvalues in [-tol_psd, 0) to zero; throws NotPSD below that.
void clamp_psd(SpectralDecomposition& s);

bool is_positive_definite(const SpectralDecomposition& s);

/// U diag(lambda_i^s) U^H from an already clamped decomposition. Negative s
/// requires positive-definiteness (SingularMatrix otherwise).
CMatrix power_from_spectrum(const SpectralDecomposition& s, double exponent);

HermitianMatrix mat_power(const HermitianMatrix& a, double exponent);

/// ||A||_op for PSD A, i.e. the largest eigenvalue.
double op_norm(const HermitianMatrix& a);

/// Largest singular value of an arbitrary square matrix; closed form for d <= 2.
double spectral_norm(const CMatrix& b);

/// Square of spectral_norm, without the final square root.
double spectral_norm_squared(const CMatrix& b);

}  // namespace mwkr
