#include "mwkr/space.hpp"

#include <cmath>

#include "mwkr/error.hpp"
#include "mwkr/field_io.hpp"

namespace mwkr {

FunctionSpace FunctionSpace::weighted(const MatrixWeightField& w, double p, std::optional<MeasureDensity> mu) {
  FunctionSpace out = normed(NormFamily::from_weight(w, p), p, std::move(mu));
  out.description_ = "L^" + format_double(p) + "(W" + (out.mu_ ? ", mu)" : ")");
  return out;
}

FunctionSpace FunctionSpace::normed(NormFamily rho, double p, std::optional<MeasureDensity> mu) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive and finite");
  FunctionSpace out;
  if (mu) {
    require_same_grid(rho.grid(), mu->grid(), "measure density");
    out.mu_ = std::make_shared<const MeasureDensity>(std::move(*mu));
  }
  out.description_ = "L^" + format_double(p) + "(" + rho.name() + (out.mu_ ? ", mu)" : ")");
  out.rho_ = std::make_shared<const NormFamily>(std::move(rho));
  out.p_ = p;
  return out;
}

FunctionSpace FunctionSpace::variable(NormFamily rho, ExponentField exponent) {
  require_same_grid(rho.grid(), exponent.grid(), "exponent field");
  FunctionSpace out;
  out.p_ = exponent.p_plus();
  out.description_ = "L^{p(.)}(" + rho.name() + ")";
  out.rho_ = std::make_shared<const NormFamily>(std::move(rho));
  out.exponent_ = std::make_shared<const ExponentField>(std::move(exponent));
  return out;
}

FunctionSpace FunctionSpace::with_backend(Backend backend) const {
  FunctionSpace out = *this;
  out.backend_ = backend;
  return out;
}

double FunctionSpace::norm(const SampledVectorField& f, CellMask mask) const {
  if (exponent_) return luxemburg_norm(f, *rho_, *exponent_, mask, kLuxemburgTolerance, backend_);
  return lp_rho_norm(f, *rho_, p_, mu_.get(), mask, backend_);
}

double FunctionSpace::gauge(const SampledVectorField& f, CellMask mask) const {
  if (exponent_) return modular(f, *rho_, *exponent_, mask, backend_);
  return norm(f, mask);
}

double FunctionSpace::metric_from_norm(double norm) const {
  return !exponent_ && p_ < 1.0 ? std::pow(norm, p_) : norm;
}

double FunctionSpace::distance(const SampledVectorField& f, const SampledVectorField& g, CellMask mask) const {
  require_same_shape(f, g);
  if (!exponent_ && p_ < 1.0) return lp_rho_power(f - g, *rho_, p_, mu_.get(), mask, backend_);
  return norm(f - g, mask);
}

}  // namespace mwkr
