#pragma once

#include <span>
#include <vector>

namespace qf::belavkin {

inline constexpr int kMaxLag = 10;

struct InnovationsReport {
  double mean = 0.0;            // of z_k = dI_k / sqrt(dt), pooled
  double variance_ratio = 0.0;  // Var(I(T)) / T
  std::vector<double> lag_autocorr;  // lags 1..10
  std::size_t samples = 0;
  std::size_t trajectories = 0;
};

/*!
 * Pools innovation records of equal length and step.
 *
 * The autocorrelation at lag j is sum z_k z_{k+j} / sum z_k^2 with pairs
 * taken within a trajectory only; it is uncentered because the innovations
 * have mean zero under the filter. With several trajectories the variance
 * ratio is the sample variance of I(T) across trajectories over T; with one
 * trajectory it is the quadratic variation sum dI^2 over T. Degenerate
 * (all-zero) input reports zeros throughout.
 */
class InnovationsAccumulator {
 public:
  explicit InnovationsAccumulator(double dt) : dt_(dt) {}

  // `increments` excludes the leading zero row of a TrajectoryRecord.
  void add(std::span<const double> increments);

  InnovationsReport report() const;

 private:
  double dt_;
  double t_final_ = 0.0;
  std::size_t count_ = 0;
  std::size_t trajectories_ = 0;
  double sum_z_ = 0.0;
  double sum_zz_ = 0.0;
  double lag_sums_[kMaxLag] = {};
  // Welford accumulators for I(T)
  double it_mean_ = 0.0;
  double it_m2_ = 0.0;
  double quadratic_variation_ = 0.0;
};

// Single-record convenience wrapper.
InnovationsReport innovations_diagnostics(std::span<const double> increments,
                                          double dt);

}  // namespace qf::belavkin
