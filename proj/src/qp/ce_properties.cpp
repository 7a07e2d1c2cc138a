#include "qp/ce_properties.hpp"

#include <algorithm>
#include <cmath>

#include "qp/random.hpp"

namespace qf::qp {

double CePropertyReport::worst() const {
  return std::max({linearity, star, unit, state_preservation, idempotence,
                   peelability, -cp_min_eig, -least_squares_min_eig,
                   least_squares_equality, -scalar_least_squares_gap, delta});
}

namespace {

double min_eig_hermitian_part(const Operator& m) {
  return min_eigenvalue(0.5 * (m + m.adjoint()));
}

// Applies `ce` blockwise to M = G G*, where the n x n blocks of G are drawn
// from the domain, and returns the smallest eigenvalue of the result.
double cp_check(const CeMap& ce, const DomainSampler& sampler,
                rng::PhiloxStream& rng, Eigen::Index d, int n) {
  std::vector<Operator> g(n * n);
  for (auto& block : g) block = sampler(rng);
  Operator out(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Operator mij = Operator::Zero(d, d);
      for (int k = 0; k < n; ++k) mij += g[i * n + k] * g[j * n + k].adjoint();
      out.block(i * d, j * d, d, d) = ce(mij);
    }
  }
  return min_eig_hermitian_part(out);
}

}  // namespace

CePropertyReport check_ce_properties(const CeMap& ce, const AlgebraSpec& algebra,
                                     const QPState& state,
                                     const DomainSampler& sampler,
                                     rng::PhiloxStream& rng, int samples) {
  const Eigen::Index d = algebra.dim();
  const Operator one = identity(d);
  CePropertyReport r;
  r.unit = (ce(one) - one).norm();
  r.scalar_least_squares_gap = 0.0;

  for (int s = 0; s < samples; ++s) {
    const Operator x = sampler(rng);
    const Operator y = sampler(rng);
    const Complex alpha(rng.normal(), rng.normal());
    const Complex beta(rng.normal(), rng.normal());
    const Operator ex = ce(x);
    const Operator ey = ce(y);

    r.linearity = std::max(r.linearity, (ce(alpha * x + beta * y) - alpha * ex - beta * ey).norm());
    r.star = std::max(r.star, (ce(x.adjoint()) - ex.adjoint()).norm());
    r.state_preservation = std::max(
        r.state_preservation, std::abs(state.expectation(ex) - state.expectation(x)));
    r.idempotence = std::max(r.idempotence, (ce(ex) - ex).norm());

    const Operator b1 = random_algebra_element(algebra, rng);
    const Operator b2 = random_algebra_element(algebra, rng);
    r.peelability = std::max(r.peelability, (ce(b1 * x * b2) - b1 * ex * b2).norm());

    // delta identities
    const Operator dx = x - ex;
    r.delta = std::max({r.delta, ce(dx).norm(), std::abs(state.expectation(dx)),
                        ce(b1 * dx * b2).norm()});

    // least squares: E[(X-B)*(X-B)] - Var_B(X) >= 0, equality at B = E[X]
    const Operator var = ce(dx.adjoint() * dx);
    const Operator b = random_algebra_element(algebra, rng);
    const Operator xb = x - b;
    r.least_squares_min_eig = std::min(
        r.least_squares_min_eig, min_eig_hermitian_part(ce(xb.adjoint() * xb) - var));
    r.least_squares_equality = std::max(
        r.least_squares_equality,
        (ce((x - ex).adjoint() * (x - ex)) - var).norm());
    const double gap = state.expectation(xb.adjoint() * xb).real() -
                       state.expectation(dx.adjoint() * dx).real();
    r.scalar_least_squares_gap = std::min(r.scalar_least_squares_gap, gap);

    for (int n : {2, 3}) {
      r.cp_min_eig = std::min(r.cp_min_eig, cp_check(ce, sampler, rng, d, n));
    }
  }
  return r;
}

}  // namespace qf::qp
