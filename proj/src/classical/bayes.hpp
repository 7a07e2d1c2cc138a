#pragma once

#include <functional>

#include "classical/grid.hpp"

namespace qf::classical {

struct GaussianPosterior {
  double mean;
  double variance;
};

// Y = X + noise, X ~ N(mu0, s0sq), noise ~ N(0, ssq):
//   1/s1sq = 1/s0sq + 1/ssq,  mu1 = (s1sq/s0sq) mu0 + (s1sq/ssq) y.
// Throws NonpositiveVariance unless both variances are positive.
GaussianPosterior gaussian_posterior(double mu0, double s0sq, double ssq, double y);

using Likelihood = std::function<double(double y, double x)>;

// rho_post(x) = lambda(y|x) rho_prior(x) / integral of the numerator.
// Throws ZeroEvidence if the evidence is <= eps.
GridDensity bayes_posterior_grid(const GridDensity& prior,
                                 const Likelihood& likelihood, double y,
                                 double eps = 1e-300);

}  // namespace qf::classical
