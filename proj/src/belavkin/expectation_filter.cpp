#include "belavkin/expectation_filter.hpp"

#include "belavkin/zakai.hpp"
#include "common/error.hpp"

namespace qf::belavkin {

ExpectationFormFilter::ExpectationFormFilter(const slh::SLHModel& model,
                                             const Operator& rho0,
                                             std::vector<Observable> observables)
    : model_(model), rho_(rho0), observables_(std::move(observables)) {
  slh::require_valid(model_);
  require_unit_scattering(model_);
  require_same_dim(rho_, model_.H, "ExpectationFormFilter");
  quadrature_ = model_.L + model_.L.adjoint();
  for (const Observable& o : observables_) {
    require_same_dim(o.op, model_.H, "ExpectationFormFilter observable");
    generated_.push_back(slh::lindblad_generator(model_, o.op));
    gain_ops_.push_back(o.op * model_.L + model_.L.adjoint() * o.op);
    estimates_.push_back(expectation(o.op));
  }
}

double ExpectationFormFilter::expectation(const Operator& x) const {
  return (rho_ * x).trace().real();
}

double ExpectationFormFilter::step(double dy, double dt) {
  const double predicted = expectation(quadrature_);
  const double di = dy - predicted * dt;
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    const double drift = expectation(generated_[i]);
    const double gain = expectation(gain_ops_[i]) - estimates_[i] * predicted;
    estimates_[i] += drift * dt + gain * di;
  }
  const Operator& l = model_.L;
  const Operator innovation_term = l * rho_ + rho_ * l.adjoint() - predicted * rho_;
  rho_ += slh::adjoint_generator(model_, rho_) * dt + innovation_term * di;
  return di;
}

std::vector<double> filter_step_expectation_form(
    const std::vector<double>& estimates, const Operator& rho,
    const slh::SLHModel& model, const std::vector<Observable>& observables,
    double dy, double dt) {
  if (estimates.size() != observables.size()) {
    fail(ErrorCode::kInvalidArgument, "filter_step_expectation_form: one estimate per observable required");
  }
  require_unit_scattering(model);
  require_same_dim(rho, model.H, "filter_step_expectation_form");
  const Operator quadrature = model.L + model.L.adjoint();
  auto e = [&rho](const Operator& x) { return (rho * x).trace().real(); };
  const double predicted = e(quadrature);
  const double di = dy - predicted * dt;
  std::vector<double> out = estimates;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const Operator& x = observables[i].op;
    const double drift = e(slh::lindblad_generator(model, x));
    const double gain = e(x * model.L + model.L.adjoint() * x) - estimates[i] * predicted;
    out[i] += drift * dt + gain * di;
  }
  return out;
}

}  // namespace qf::belavkin
