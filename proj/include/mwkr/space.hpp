#pragma once

// Function-space descriptor shared by the moduli and net routines: which
// pointwise norms, exponent and measure define ||f||, and which metric the
// covering step uses.

#include <memory>
#include <optional>
#include <string>

#include "mwkr/fields.hpp"
#include "mwkr/parallel.hpp"
#include "mwkr/spaces.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

class FunctionSpace {
 public:
  /// L^p(W): rho_x(v) = |W^{1/p}(x) v|, optionally against dmu = u dx.
  static FunctionSpace weighted(const MatrixWeightField& w, double p, std::optional<MeasureDensity> mu = {});
  /// L^p(rho), optionally against dmu = u dx.
  static FunctionSpace normed(NormFamily rho, double p, std::optional<MeasureDensity> mu = {});
  /// L^{p(.)}(rho) with the Luxemburg norm; moduli use the modular.
  static FunctionSpace variable(NormFamily rho, ExponentField exponent);

  const Grid& grid() const noexcept { return rho_->grid(); }
  int dim() const noexcept { return rho_->dim(); }
  const NormFamily& rho() const noexcept { return *rho_; }
  /// Constant exponent; p_+ for variable exponents.
  double p() const noexcept { return p_; }
  bool variable_exponent() const noexcept { return exponent_ != nullptr; }
  const ExponentField* exponent() const noexcept { return exponent_.get(); }
  const MeasureDensity* measure() const noexcept { return mu_.get(); }
  const std::string& description() const noexcept { return description_; }

  Backend backend() const noexcept { return backend_; }
  FunctionSpace with_backend(Backend backend) const;

  /// ||f|| restricted to the mask: the L^p (quasi-)norm, or the Luxemburg norm.
  double norm(const SampledVectorField& f, CellMask mask = {}) const;
  /// Quantity the moduli are measured in: the norm, or the modular for
  /// variable exponents.
  double gauge(const SampledVectorField& f, CellMask mask = {}) const;
  /// Covering metric: ||f - g||, or ||f - g||^p when p < 1 so that the
  /// triangle inequality holds.
  double distance(const SampledVectorField& f, const SampledVectorField& g, CellMask mask = {}) const;
  /// Converts a norm value to the covering metric.
  double metric_from_norm(double norm) const;

 private:
  FunctionSpace() = default;

  std::shared_ptr<const NormFamily> rho_;
  std::shared_ptr<const MeasureDensity> mu_;
  std::shared_ptr<const ExponentField> exponent_;
  double p_ = 2.0;
  std::string description_;
  Backend backend_ = Backend::openmp;
};

}  // namespace mwkr
