#include "belavkin/ensemble.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::belavkin {

namespace {

// Per-time Welford accumulator.
class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(std::size_t length) : mean_(length, 0.0), m2_(length, 0.0) {}

  void add(std::size_t count, std::size_t k, double value) {
    const double delta = value - mean_[k];
    mean_[k] += delta / static_cast<double>(count);
    m2_[k] += delta * (value - mean_[k]);
  }

  SeriesStats finish(std::size_t count) const {
    SeriesStats s{mean_, std::vector<double>(mean_.size(), 0.0)};
    if (count > 1) {
      const double n = static_cast<double>(count);
      for (std::size_t k = 0; k < mean_.size(); ++k) {
        s.standard_error[k] = std::sqrt(m2_[k] / (n - 1.0) / n);
      }
    }
    return s;
  }

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;
};

}  // namespace

EnsembleSummary run_ensemble(const slh::SLHModel& model, const StateVector& psi0,
                             const std::vector<Observable>& observables,
                             const EnsembleOptions& options,
                             const RecordSink& sink) {
  if (options.trajectories == 0) {
    fail(ErrorCode::kInvalidArgument, "run_ensemble: at least one trajectory required");
  }
  const std::size_t length = step_count(options.t_final, options.dt) + 1;

  std::vector<SeriesAccumulator> obs(observables.size(), SeriesAccumulator(length));
  std::vector<SeriesAccumulator> weighted(observables.size(), SeriesAccumulator(length));
  SeriesAccumulator norm(length);
  InnovationsAccumulator innovations(options.dt);

  EnsembleSummary summary;
  for (std::size_t n = 0; n < options.trajectories; ++n) {
    TrajectoryOptions topt;
    topt.t_final = options.t_final;
    topt.dt = options.dt;
    topt.seed = options.seed;
    topt.index = n;
    topt.mode = options.mode;
    const TrajectoryRecord rec = simulate_trajectory(model, psi0, observables, topt);
    const std::size_t count = n + 1;
    for (std::size_t k = 0; k < length; ++k) {
      const double w = rec.norm(k);
      norm.add(count, k, w);
      for (std::size_t i = 0; i < observables.size(); ++i) {
        const double v = rec.filter_expectations[i][k];
        obs[i].add(count, k, v);
        weighted[i].add(count, k, w * v);
      }
    }
    innovations.add(std::span<const double>(rec.innovations).subspan(1));
    if (n == 0) summary.times = rec.times;
    if (sink) sink(rec);
  }

  summary.trajectories = options.trajectories;
  for (const Observable& o : observables) summary.observable_names.push_back(o.name);
  for (const auto& acc : obs) summary.observables.push_back(acc.finish(options.trajectories));
  for (const auto& acc : weighted) {
    summary.weighted_observables.push_back(acc.finish(options.trajectories));
  }
  summary.norm = norm.finish(options.trajectories);
  summary.innovations = innovations.report();
  return summary;
}

CsvWriter ensemble_csv(const EnsembleSummary& summary) {
  std::vector<std::string> header{"t"};
  for (const auto& name : summary.observable_names) {
    header.push_back(name + "_mean");
    header.push_back(name + "_se");
  }
  header.push_back("norm_mean");
  header.push_back("norm_se");
  CsvWriter csv(std::move(header));
  std::vector<double> row;
  for (std::size_t k = 0; k < summary.times.size(); ++k) {
    row.assign(1, summary.times[k]);
    for (const auto& s : summary.observables) {
      row.push_back(s.mean[k]);
      row.push_back(s.standard_error[k]);
    }
    row.push_back(summary.norm.mean[k]);
    row.push_back(summary.norm.standard_error[k]);
    csv.add_row(row);
  }
  return csv;
}

}  // namespace qf::belavkin
