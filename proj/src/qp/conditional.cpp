#include "qp/conditional.hpp"

#include <string>

#include "common/error.hpp"

namespace qf::qp {

ConditionalExpectation::ConditionalExpectation(AlgebraSpec algebra,
                                               QPState state,
                                               CeOptions options)
    : algebra_(std::move(algebra)), state_(std::move(state)), options_(options) {
  if (algebra_.dim() != state_.dim()) {
    fail(ErrorCode::kDimensionMismatch, "ConditionalExpectation: algebra and state differ in dimension");
  }
  const auto& projections = algebra_.projections();
  weights_.reserve(projections.size());
  for (std::size_t a = 0; a < projections.size(); ++a) {
    const double w = state_.expectation(projections[a]).real();
    weights_.push_back(w);
    if (w <= options_.eps_prob) {
      if (options_.strict_blocks) {
        fail(ErrorCode::kDegenerateBlock,
             "ConditionalExpectation: block " + std::to_string(a) + " has zero probability");
      }
      dropped_.push_back(a);
    }
  }
}

Operator ConditionalExpectation::operator()(const Operator& a) const {
  require_same_dim(a, state_.rho(), "conditional_expectation");
  if (algebra_.commutant_residual(a) > options_.commutant_tol) {
    fail(ErrorCode::kIncompatibleObservable,
         "conditional_expectation: operator does not commute with the conditioning algebra");
  }
  return unchecked(a);
}

Operator ConditionalExpectation::unchecked(const Operator& a) const {
  require_same_dim(a, state_.rho(), "conditional_expectation");
  const auto& projections = algebra_.projections();
  const Operator& rho = state_.rho();
  Operator out = Operator::Zero(a.rows(), a.cols());
  for (std::size_t i = 0; i < projections.size(); ++i) {
    if (weights_[i] <= options_.eps_prob) continue;
    const Complex num = (rho * projections[i] * a).trace();
    out += (num / weights_[i]) * projections[i];
  }
  return out;
}

CeResult conditional_expectation(const Operator& a, const AlgebraSpec& algebra,
                                 const QPState& state, CeOptions options) {
  const ConditionalExpectation ce(algebra, state, options);
  return {ce(a), ce.dropped_blocks()};
}

Complex covariance(const Operator& x, const Operator& y, const QPState& state) {
  require_same_dim(x, y, "covariance");
  require_same_dim(x, state.rho(), "covariance");
  return state.expectation(x.adjoint() * y) -
         std::conj(state.expectation(x)) * state.expectation(y);
}

Operator conditional_covariance(const Operator& x, const Operator& y,
                                const ConditionalExpectation& ce) {
  const Operator dx = x - ce(x);
  const Operator dy = y - ce(y);
  return ce(dx.adjoint() * dy);
}

Operator conditional_covariance(const Operator& x, const Operator& y,
                                const AlgebraSpec& algebra,
                                const QPState& state) {
  return conditional_covariance(x, y, ConditionalExpectation(algebra, state));
}

Operator conditional_variance(const Operator& x, const ConditionalExpectation& ce) {
  return conditional_covariance(x, x, ce);
}

}  // namespace qf::qp
