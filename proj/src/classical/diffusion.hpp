#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qf::classical {

using ScalarFunction = std::function<double(double)>;

/// dX = v(X) dt + sigma(X) dW,  dY = h(X) dt + dZ.
struct DiffusionSpec {
  ScalarFunction v;
  ScalarFunction sigma;
  ScalarFunction h;
  double sigma_floor = 1e-12;
};

// Throws InvalidArgument if a function is missing.
void require_complete(const DiffusionSpec& spec);

struct ClassicalTrajectory {
  std::vector<double> times;
  std::vector<double> x_path;
  std::vector<double> y_increments;  // entry 0 is 0
  std::vector<double> innovations;   // filled by a filter run
  std::vector<std::string> estimate_names;
  std::vector<std::vector<double>> estimates;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/*!
 * Euler-Maruyama for the signal/observation pair. Each step draws dW then
 * dZ from Philox stream `index` of `seed`; sigma is floored at
 * spec.sigma_floor.
 */
ClassicalTrajectory simulate_pair(const DiffusionSpec& spec, double x0,
                                  double t_final, double dt, std::uint64_t seed,
                                  std::uint64_t index = 0);

// Kallianpur-Streibel log weight: logw + h(x) dy - 1/2 h(x)^2 dt.
double ks_weight_step(double logw, double x, double dy, const ScalarFunction& h,
                      double dt);

}  // namespace qf::classical
