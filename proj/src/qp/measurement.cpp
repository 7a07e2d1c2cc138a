#include "qp/measurement.hpp"

#include "common/error.hpp"

namespace qf::qp {

std::vector<BornOutcome> born_probabilities(const SpectralDecomposition& spec,
                                            const StateVector& psi) {
  if (spec.dim() != psi.dim()) {
    fail(ErrorCode::kDimensionMismatch, "born_probabilities: state and observable differ in dimension");
  }
  std::vector<BornOutcome> out;
  out.reserve(spec.projections.size());
  for (std::size_t i = 0; i < spec.projections.size(); ++i) {
    const double p = (spec.projections[i] * psi.amplitudes()).squaredNorm();
    out.push_back({spec.eigenvalues[i], p});
  }
  return out;
}

StateVector project_postulate(const StateVector& psi, const Operator& p,
                              double eps_prob) {
  require_square(p, "project_postulate");
  if (p.rows() != psi.dim()) {
    fail(ErrorCode::kDimensionMismatch, "project_postulate: projection and state differ in dimension");
  }
  CVector projected = p * psi.amplitudes();
  if (projected.squaredNorm() <= eps_prob) {
    fail(ErrorCode::kZeroProbabilityOutcome, "project_postulate: outcome has zero probability");
  }
  return StateVector(std::move(projected));
}

bool compatible(const Operator& a, const Operator& b, double tol) {
  require_same_dim(a, b, "compatible");
  return (a * b - b * a).norm() <= tol;
}

bool check_projection_commute_lemma(const Operator& p, const Operator& q,
                                    double tol) {
  require_same_dim(p, q, "check_projection_commute_lemma");
  const bool premise = (p * q * p - q * p).norm() <= tol;
  const bool conclusion = (p * q - q * p).norm() <= tol;
  return !premise || conclusion;
}

}  // namespace qf::qp
