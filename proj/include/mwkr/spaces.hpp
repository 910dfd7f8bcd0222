#pragma once

// Norms on C^d, pointwise norm families rho_x, weighted L^p norms, modulars,
// Luxemburg norms and the degenerate Sobolev norm.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwkr/fields.hpp"
#include "mwkr/parallel.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

/// A norm on C^d given by an evaluator. `euclidean_bound` is a constant c with
/// rho(v) <= c |v|, when known.
class Norm {
 public:
  using Eval = std::function<double(std::span<const cplx>)>;

  Norm(int dim, Eval eval, std::string name, std::optional<double> euclidean_bound = std::nullopt);

  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<double> euclidean_bound() const noexcept { return bound_; }

  double operator()(std::span<const cplx> v) const { return eval_(v); }
  double operator()(const CVector& v) const { return eval_({v.data(), static_cast<std::size_t>(v.size())}); }

 private:
  int dim_;
  Eval eval_;
  std::string name_;
  std::optional<double> bound_;
};

Norm euclidean_norm(int dim);
/// (sum |v_i|^q)^{1/q}; q = infinity gives max |v_i|. Requires q >= 1.
Norm lq_norm(int dim, double q);
/// v -> |A v| for invertible A.
Norm linear_image_norm(const CMatrix& a);

/// A family of norms rho_x indexed by grid points.
class NormFamily {
 public:
  using PointEval = std::function<double(std::size_t, std::span<const cplx>)>;

  /// rho_x(v) = |W^{1/p}(x) v|.
  static NormFamily from_weight(const MatrixWeightField& w, double p);
  static NormFamily euclidean(const Grid& grid, int dim);
  static NormFamily uniform(const Grid& grid, const Norm& norm);
  /// `bounds`, when given, holds c(x) with rho_x(v) <= c(x) |v|.
  static NormFamily custom(const Grid& grid, int dim, PointEval eval, std::string name,
                           std::vector<double> bounds = {});

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(std::size_t i, std::span<const cplx> v) const;

  bool has_bounds() const noexcept { return !bounds_.empty(); }
  /// c(x) with rho_x(v) <= c(x) |v|.
  std::span<const double> bounds() const noexcept { return bounds_; }

 private:
  NormFamily(Grid grid, int dim, std::string name) : grid_(std::move(grid)), dim_(dim), name_(std::move(name)) {}

  Grid grid_;
  int dim_;
  std::string name_;
  std::vector<CMatrix> matrices_;
  std::optional<Norm> uniform_;
  PointEval custom_;
  std::vector<double> bounds_;
};

/// Restricts a quadrature to cells with mask != 0; an empty mask means all cells.
using CellMask = std::span<const std::uint8_t>;

/// Scalar weighted norm (sum w |f|^p h^n)^{1/p} of a d = 1 field.
double scalar_lp_norm(const SampledVectorField& f, const ScalarWeightField& w, double p, CellMask mask = {},
                      Backend backend = Backend::openmp);

/// (int |W^{1/p} f|^p dx)^{1/p}; d = 1 reduces to scalar_lp_norm with w = W.
double lp_w_norm(const SampledVectorField& f, const MatrixWeightField& w, double p, CellMask mask = {},
                 Backend backend = Backend::openmp);

/// int rho_x(f(x))^p dmu(x), with mu Lebesgue when `mu` is null.
double lp_rho_power(const SampledVectorField& f, const NormFamily& rho, double p, const MeasureDensity* mu = nullptr,
                    CellMask mask = {}, Backend backend = Backend::openmp);
double lp_rho_norm(const SampledVectorField& f, const NormFamily& rho, double p, const MeasureDensity* mu = nullptr,
                   CellMask mask = {}, Backend backend = Backend::openmp);

/// int rho_x(f(x))^{p(x)} dx.
double modular(const SampledVectorField& f, const NormFamily& rho, const ExponentField& pf, CellMask mask = {},
               Backend backend = Backend::openmp);

inline constexpr double kLuxemburgTolerance = 1e-8;

/// inf { lambda > 0 : modular(f / lambda) <= 1 } by bisection to relative
/// tolerance `tol`. Returns the upper end of the final bracket, so
/// modular(f / result) <= 1 always holds.
double luxemburg_norm(const SampledVectorField& f, const NormFamily& rho, const ExponentField& pf,
                      CellMask mask = {}, double tol = kLuxemburgTolerance, Backend backend = Backend::openmp);

/// Central differences, one-sided at the box faces. Returns a field with n
/// components (one per axis) for a d = 1 input.
SampledVectorField gradient(const SampledVectorField& f);

/// ||f||_{L^p(v)} + ||grad f||_{L^p(W)} with v = ||W||_op; W has d = n.
double degenerate_sobolev_norm(const SampledVectorField& f, const MatrixWeightField& w, double p,
                               Backend backend = Backend::openmp);

}  // namespace mwkr
