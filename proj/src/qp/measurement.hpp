#pragma once

#include <vector>

#include "common/linalg.hpp"
#include "qp/spectral.hpp"

namespace qf::qp {

struct BornOutcome {
  double eigenvalue;
  double probability;
};

// p_a = ||P_a psi||^2, in the order of spec.eigenvalues.
std::vector<BornOutcome> born_probabilities(const SpectralDecomposition& spec,
                                            const StateVector& psi);

// P psi / ||P psi||. Throws ZeroProbabilityOutcome if ||P psi||^2 <= eps_prob.
StateVector project_postulate(const StateVector& psi, const Operator& p,
                              double eps_prob = 1e-14);

bool compatible(const Operator& a, const Operator& b, double tol);

// Evaluates the implication (PQP = QP) => (PQ = QP) for one pair.
bool check_projection_commute_lemma(const Operator& p, const Operator& q,
                                    double tol);

}  // namespace qf::qp
