#include "slh/model.hpp"

#include "common/csv.hpp"
#include "common/error.hpp"

namespace qf::slh {

SLHModel make_model(Operator s, Operator l, Operator h) {
  require_square(h, "SLH model H");
  require_same_dim(s, h, "SLH model S");
  require_same_dim(l, h, "SLH model L");
  return {std::move(s), std::move(l), std::move(h)};
}

ValidationReport validate(const SLHModel& model) {
  ValidationReport r;
  r.unitarity_residual = unitarity_residual(model.S);
  r.hermiticity_residual = hermiticity_residual(model.H);
  r.pass = r.unitarity_residual <= kValidationTolerance &&
           r.hermiticity_residual <= kValidationTolerance;
  return r;
}

void require_valid(const SLHModel& model) {
  require_square(model.H, "SLH model H");
  require_same_dim(model.S, model.H, "SLH model S");
  require_same_dim(model.L, model.H, "SLH model L");
  const ValidationReport r = validate(model);
  if (r.unitarity_residual > kValidationTolerance) {
    fail(ErrorCode::kInvalidArgument,
         "SLH model: S is not unitary (residual " + format_double(r.unitarity_residual) + ")");
  }
  if (r.hermiticity_residual > kValidationTolerance) {
    fail(ErrorCode::kNotHermitian,
         "SLH model: H is not hermitian (residual " + format_double(r.hermiticity_residual) + ")");
  }
}

Operator lindblad_generator(const SLHModel& model, const Operator& x) {
  require_same_dim(x, model.H, "lindblad_generator");
  const Operator& l = model.L;
  const Operator ld = l.adjoint();
  return 0.5 * ld * (x * l - l * x) + 0.5 * (ld * x - x * ld) * l -
         kI * (x * model.H - model.H * x);
}

Operator adjoint_generator(const SLHModel& model, const Operator& rho) {
  require_same_dim(rho, model.H, "adjoint_generator");
  const Operator& l = model.L;
  const Operator ldl = l.adjoint() * l;
  return -kI * (model.H * rho - rho * model.H) + l * rho * l.adjoint() -
         0.5 * (ldl * rho + rho * ldl);
}

LangevinCoefficients langevin_coefficients(const SLHModel& model,
                                           const Operator& x) {
  require_same_dim(x, model.H, "langevin_coefficients");
  const Operator& s = model.S;
  const Operator& l = model.L;
  const Operator sd = s.adjoint();
  LangevinCoefficients c;
  c.drift = lindblad_generator(model, x);
  c.dB_dag_coeff = sd * (x * l - l * x);
  c.dB_coeff = (l.adjoint() * x - x * l.adjoint()) * s;
  c.dLambda_coeff = sd * x * s - x;
  return c;
}

OutputDifferential output_differential(const SLHModel& model) {
  return {model.S, model.L};
}

Operator wiener_generator(const Operator& h, const Operator& r,
                          const Operator& x) {
  require_same_dim(x, h, "wiener_generator");
  require_same_dim(r, h, "wiener_generator");
  const Operator xr = x * r - r * x;
  return -kI * (x * h - h * x) - 0.5 * (xr * r - r * xr);
}

Operator poisson_generator(const Operator& s, const Operator& x) {
  require_same_dim(x, s, "poisson_generator");
  return s.adjoint() * x * s - x;
}

Operator cayley_scattering(const Operator& e) {
  require_square(e, "cayley_scattering");
  const Operator half = 0.5 * kI * e;
  const Operator one = identity(e.rows());
  return (one + half) * (one - half).inverse();
}

}  // namespace qf::slh
