#include "classical/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "common/steps.hpp"
#include "rng/philox.hpp"

namespace qf::classical {

void require_complete(const DiffusionSpec& spec) {
  if (!spec.v || !spec.sigma || !spec.h) {
    fail(ErrorCode::kInvalidArgument, "diffusion spec: v, sigma and h are required");
  }
  if (!(spec.sigma_floor > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "diffusion spec: sigma_floor must be positive");
  }
}

ClassicalTrajectory simulate_pair(const DiffusionSpec& spec, double x0,
                                  double t_final, double dt, std::uint64_t seed,
                                  std::uint64_t index) {
  require_complete(spec);
  const std::size_t n = step_count(t_final, dt);
  const double sqrt_dt = std::sqrt(dt);

  ClassicalTrajectory traj;
  traj.seed = seed;
  traj.index = index;
  traj.times.reserve(n + 1);
  traj.x_path.reserve(n + 1);
  traj.y_increments.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.x_path.push_back(x0);
  traj.y_increments.push_back(0.0);

  rng::PhiloxStream rng(seed, index);
  double x = x0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double dw = sqrt_dt * rng.normal();
    const double dz = sqrt_dt * rng.normal();
    const double dy = spec.h(x) * dt + dz;
    const double s = std::max(spec.sigma(x), spec.sigma_floor);
    x += spec.v(x) * dt + s * dw;
    traj.times.push_back(static_cast<double>(k) * dt);
    traj.x_path.push_back(x);
    traj.y_increments.push_back(dy);
  }
  return traj;
}

double ks_weight_step(double logw, double x, double dy, const ScalarFunction& h,
                      double dt) {
  const double hx = h(x);
  return logw + hx * dy - 0.5 * hx * hx * dt;
}

}  // namespace qf::classical
