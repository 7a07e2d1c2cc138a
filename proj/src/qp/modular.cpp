#include "qp/modular.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::qp {

namespace {

HermitianEigen faithful_eig(const QPState& state, double eps_faithful) {
  HermitianEigen eig = hermitian_eig(state.rho());
  if (eig.values(0) <= eps_faithful) {
    fail(ErrorCode::kNonFaithfulState, "modular operator: state is not faithful");
  }
  return eig;
}

// V diag(f) V*
Operator from_eig(const HermitianEigen& eig, const CVector& f) {
  return eig.vectors * f.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

Operator modular_map(const QPState& state, const Operator& x,
                     double eps_faithful) {
  require_same_dim(x, state.rho(), "modular_map");
  const HermitianEigen eig = faithful_eig(state, eps_faithful);
  const CVector inv = eig.values.cwiseInverse().cast<Complex>();
  return state.rho() * x * from_eig(eig, inv);
}

Operator modular_group(const QPState& state, double t, const Operator& x,
                       double eps_faithful) {
  require_same_dim(x, state.rho(), "modular_group");
  const HermitianEigen eig = faithful_eig(state, eps_faithful);
  CVector phase(eig.values.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) {
    phase(i) = std::exp(kI * t * std::log(eig.values(i)));
  }
  return from_eig(eig, phase) * x * from_eig(eig, phase.conjugate());
}

TakesakiReport takesaki_check(const QPState& state, const AlgebraSpec& algebra,
                              std::span<const double> t_samples, double tol) {
  if (algebra.dim() != state.dim()) {
    fail(ErrorCode::kDimensionMismatch, "takesaki_check: algebra and state differ in dimension");
  }
  faithful_eig(state, kEpsFaithful);
  TakesakiReport report;
  for (const double t : t_samples) {
    for (std::size_t a = 0; a < algebra.size(); ++a) {
      const Operator moved = modular_group(state, t, algebra.projections()[a]);
      const double d = algebra.distance_to_span(moved);
      if (d > report.max_distance) {
        report.max_distance = d;
        report.worst_t = t;
        report.worst_block = a;
      }
    }
  }
  report.invariant = report.max_distance <= tol;
  return report;
}

}  // namespace qf::qp
