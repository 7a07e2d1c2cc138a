#include "belavkin/diagnostics.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::belavkin {

void InnovationsAccumulator::add(std::span<const double> increments) {
  if (trajectories_ > 0 &&
      std::abs(static_cast<double>(increments.size()) * dt_ - t_final_) > 1e-9 * t_final_) {
    fail(ErrorCode::kInvalidArgument, "innovations: records differ in length");
  }
  t_final_ = static_cast<double>(increments.size()) * dt_;
  const double scale = 1.0 / std::sqrt(dt_);
  double total = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    const double z = increments[k] * scale;
    sum_z_ += z;
    sum_zz_ += z * z;
    for (int j = 1; j <= kMaxLag && k >= static_cast<std::size_t>(j); ++j) {
      lag_sums_[j - 1] += z * increments[k - j] * scale;
    }
    total += increments[k];
    quadratic_variation_ += increments[k] * increments[k];
  }
  count_ += increments.size();
  ++trajectories_;
  const double delta = total - it_mean_;
  it_mean_ += delta / static_cast<double>(trajectories_);
  it_m2_ += delta * (total - it_mean_);
}

InnovationsReport InnovationsAccumulator::report() const {
  InnovationsReport r;
  r.samples = count_;
  r.trajectories = trajectories_;
  r.lag_autocorr.assign(kMaxLag, 0.0);
  if (count_ == 0) return r;
  r.mean = sum_z_ / static_cast<double>(count_);
  if (t_final_ > 0.0) {
    r.variance_ratio = trajectories_ > 1
                           ? it_m2_ / static_cast<double>(trajectories_ - 1) / t_final_
                           : quadratic_variation_ / t_final_;
  }
  if (sum_zz_ > 0.0) {
    for (int j = 0; j < kMaxLag; ++j) r.lag_autocorr[j] = lag_sums_[j] / sum_zz_;
  }
  return r;
}

InnovationsReport innovations_diagnostics(std::span<const double> increments,
                                          double dt) {
  InnovationsAccumulator acc(dt);
  acc.add(increments);
  return acc.report();
}

}  // namespace qf::belavkin
