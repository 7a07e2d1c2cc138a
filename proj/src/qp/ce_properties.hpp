#pragma once

#include <functional>

#include "common/linalg.hpp"
#include "qp/spectral.hpp"
#include "rng/philox.hpp"

namespace qf::qp {

using CeMap = std::function<Operator(const Operator&)>;
// Draws an element of the map's domain.
using DomainSampler = std::function<Operator(rng::PhiloxStream&)>;

/*!
 * Worst-case residuals of the conditional expectation axioms, the least
 * squares property and the delta identities over random samples.
 *
 * Residual fields are nonnegative norms (0 is perfect). The *_min_eig fields
 * are smallest eigenvalues of matrices that must be positive semidefinite,
 * so negative values are violations.
 */
struct CePropertyReport {
  double linearity = 0.0;           // CE1
  double star = 0.0;                // CE2
  double unit = 0.0;                // CE3
  double state_preservation = 0.0;  // CE4
  double idempotence = 0.0;         // CE5
  double peelability = 0.0;         // CE6
  double cp_min_eig = 0.0;          // CE7' for n = 2, 3
  double least_squares_min_eig = 0.0;
  double least_squares_equality = 0.0;
  double scalar_least_squares_gap = 0.0;  // min over samples, >= 0 expected
  double delta = 0.0;                     // E[dA], <dA>, E[B1 dA B2]

  // Largest violation across every property.
  double worst() const;
  bool pass(double tol) const { return worst() <= tol; }
};

CePropertyReport check_ce_properties(const CeMap& ce, const AlgebraSpec& algebra,
                                     const QPState& state,
                                     const DomainSampler& sampler,
                                     rng::PhiloxStream& rng, int samples);

}  // namespace qf::qp
