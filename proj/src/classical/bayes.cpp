#include "classical/bayes.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::classical {

GaussianPosterior gaussian_posterior(double mu0, double s0sq, double ssq, double y) {
  if (!(s0sq > 0.0) || !(ssq > 0.0)) {
    fail(ErrorCode::kNonpositiveVariance, "gaussian_posterior: variances must be positive");
  }
  const double s1sq = 1.0 / (1.0 / s0sq + 1.0 / ssq);
  return {(s1sq / s0sq) * mu0 + (s1sq / ssq) * y, s1sq};
}

GridDensity bayes_posterior_grid(const GridDensity& prior,
                                 const Likelihood& likelihood, double y,
                                 double eps) {
  const Grid& g = prior.grid();
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double lambda = likelihood(y, g.x(i));
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      fail(ErrorCode::kInvalidArgument, "bayes_posterior_grid: likelihood must be finite and nonnegative");
    }
    v[i] = lambda * prior.values()[i];
  }
  const double evidence = trapezoid(v, g.dx());
  if (!(evidence > eps)) {
    fail(ErrorCode::kZeroEvidence, "bayes_posterior_grid: observation has zero evidence");
  }
  for (double& x : v) x /= evidence;
  return GridDensity(g, std::move(v));
}

}  // namespace qf::classical
