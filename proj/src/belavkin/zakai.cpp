#include "belavkin/zakai.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::belavkin {

void require_unit_scattering(const slh::SLHModel& model) {
  if ((model.S - identity(model.S.rows())).norm() > kScatteringTolerance) {
    fail(ErrorCode::kScatteringNotSupported, "homodyne filtering requires S = 1");
  }
}

ZakaiStepper::ZakaiStepper(const slh::SLHModel& model, double dt) : dt_(dt) {
  slh::require_valid(model);
  require_unit_scattering(model);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    fail(ErrorCode::kInvalidArgument, "zakai step: dt must be positive");
  }
  l_ = model.L;
  const Operator k = -(0.5 * model.L.adjoint() * model.L + kI * model.H);
  m_ = identity(model.dim()) + dt * k;
}

void ZakaiStepper::step(CVector& chi, double dy, CVector& scratch) const {
  scratch.noalias() = m_ * chi;
  scratch.noalias() += dy * (l_ * chi);
  chi.swap(scratch);
}

CVector ZakaiStepper::step(const CVector& chi, double dy) const {
  CVector out = chi;
  CVector scratch(chi.size());
  step(out, dy, scratch);
  return out;
}

CVector zakai_step(const CVector& chi, double dy, const slh::SLHModel& model,
                   double dt) {
  if (chi.size() != model.dim()) {
    fail(ErrorCode::kDimensionMismatch, "zakai_step: state and model differ in dimension");
  }
  return ZakaiStepper(model, dt).step(chi, dy);
}

double filter_expectation(const CVector& chi, const Operator& x) {
  if (x.rows() != chi.size() || x.cols() != chi.size()) {
    fail(ErrorCode::kDimensionMismatch, "filter_expectation: observable and state differ in dimension");
  }
  const double n2 = chi.squaredNorm();
  if (!(n2 >= kEpsNorm)) {
    fail(ErrorCode::kCollapsedNorm, "filter_expectation: unnormalized state has collapsed");
  }
  return chi.dot(x * chi).real() / n2;
}

void renormalize_in_place(CVector& chi, double& log_norm) {
  const double n2 = chi.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    fail(ErrorCode::kCollapsedNorm, "renormalize: state norm is zero or not finite");
  }
  chi /= std::sqrt(n2);
  log_norm += std::log(n2);
}

}  // namespace qf::belavkin
