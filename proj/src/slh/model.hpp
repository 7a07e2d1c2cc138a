#pragma once

#include "common/linalg.hpp"

namespace qf::slh {

/// Single-channel (S, L, H) triple on a dim-dimensional system.
struct SLHModel {
  Operator S;
  Operator L;
  Operator H;

  Eigen::Index dim() const { return H.rows(); }
};

// Throws DimensionMismatch unless S, L, H are square and the same size.
SLHModel make_model(Operator s, Operator l, Operator h);

struct ValidationReport {
  double unitarity_residual = 0.0;    // ||S*S - 1||
  double hermiticity_residual = 0.0;  // ||H - H*||
  bool pass = false;
};

inline constexpr double kValidationTolerance = 1e-10;

ValidationReport validate(const SLHModel& model);
// Throws InvalidArgument naming the failed residual.
void require_valid(const SLHModel& model);

// L X = 1/2 L*[X, L] + 1/2 [L*, X] L - i [X, H]
Operator lindblad_generator(const SLHModel& model, const Operator& x);

// Trace dual: L* rho = -i [H, rho] + L rho L* - 1/2 {L*L, rho}
Operator adjoint_generator(const SLHModel& model, const Operator& rho);

struct LangevinCoefficients {
  Operator drift;          // dt
  Operator dB_coeff;       // dB
  Operator dB_dag_coeff;   // dB*
  Operator dLambda_coeff;  // dL
};

// Coefficients of the Heisenberg-Langevin equation for j_t(X):
//   dt: L X,  dB*: S*[X, L],  dB: [L*, X] S,  dL: S* X S - X.
LangevinCoefficients langevin_coefficients(const SLHModel& model,
                                           const Operator& x);

struct OutputDifferential {
  Operator dB_coeff;  // S
  Operator dt_coeff;  // L
};

// dB_out = S dB + L dt
OutputDifferential output_differential(const SLHModel& model);

// -i [X, H] - 1/2 [[X, R], R] for a system driven by classical Wiener noise.
Operator wiener_generator(const Operator& h, const Operator& r,
                          const Operator& x);

// S* X S - X for a system kicked by classical Poisson noise.
Operator poisson_generator(const Operator& s, const Operator& x);

// (1 + iE/2)(1 - iE/2)^-1, unitary for hermitian E.
Operator cayley_scattering(const Operator& e);

}  // namespace qf::slh
