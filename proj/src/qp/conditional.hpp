#pragma once

#include <vector>

#include "common/linalg.hpp"
#include "qp/spectral.hpp"

namespace qf::qp {

struct CeOptions {
  double eps_prob = 1e-14;
  double commutant_tol = 1e-10;
  // Throw DegenerateBlock instead of dropping zero-probability blocks.
  bool strict_blocks = false;
};

/*!
 * Conditional expectation onto the algebra generated by {P_a} in the state
 * rho:
 *
 *   E[A] = sum_a tr(rho P_a A) / tr(rho P_a) P_a,
 *
 * defined for A in the commutant of {P_a}. Blocks with tr(rho P_a) <=
 * eps_prob carry no probability and are left out of the sum; their indices
 * are reported by dropped_blocks().
 */
class ConditionalExpectation {
 public:
  ConditionalExpectation(AlgebraSpec algebra, QPState state,
                         CeOptions options = {});

  // Throws IncompatibleObservable if A is not in the commutant.
  Operator operator()(const Operator& a) const;

  // The same block formula without the commutant check. Outside the
  // commutant it is generally not a conditional expectation.
  Operator unchecked(const Operator& a) const;

  const AlgebraSpec& algebra() const { return algebra_; }
  const QPState& state() const { return state_; }
  const std::vector<double>& block_probabilities() const { return weights_; }
  const std::vector<std::size_t>& dropped_blocks() const { return dropped_; }

 private:
  AlgebraSpec algebra_;
  QPState state_;
  CeOptions options_;
  std::vector<double> weights_;
  std::vector<std::size_t> dropped_;
};

struct CeResult {
  Operator value;
  std::vector<std::size_t> dropped_blocks;
};

CeResult conditional_expectation(const Operator& a, const AlgebraSpec& algebra,
                                 const QPState& state, CeOptions options = {});

// Cov(X, Y) = <X* Y> - <X>* <Y>
Complex covariance(const Operator& x, const Operator& y, const QPState& state);

// Cov_B(X, Y) = E[dX* dY] with dX = X - E[X].
Operator conditional_covariance(const Operator& x, const Operator& y,
                                const ConditionalExpectation& ce);
Operator conditional_covariance(const Operator& x, const Operator& y,
                                const AlgebraSpec& algebra,
                                const QPState& state);

Operator conditional_variance(const Operator& x, const ConditionalExpectation& ce);

}  // namespace qf::qp
