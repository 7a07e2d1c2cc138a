#pragma once

#include <functional>
#include <vector>

#include "belavkin/diagnostics.hpp"
#include "belavkin/trajectory.hpp"
#include "common/csv.hpp"

namespace qf::belavkin {

struct EnsembleOptions {
  std::size_t trajectories = 100;
  double t_final = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  RecordMode mode = RecordMode::kFilterConsistent;
};

struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

struct EnsembleSummary {
  std::vector<double> times;
  std::vector<std::string> observable_names;
  std::vector<SeriesStats> observables;
  SeriesStats norm;
  // Norm-weighted observable means, E_W[<chi|chi> E_t(X)], per observable.
  std::vector<SeriesStats> weighted_observables;
  InnovationsReport innovations;
  std::size_t trajectories = 0;
};

using RecordSink = std::function<void(const TrajectoryRecord&)>;

/*!
 * Runs trajectories 0..N-1 (trajectory k uses Philox stream k of the seed)
 * and accumulates per-time means and standard errors on the fly. `sink`, if
 * set, sees every record before it is discarded.
 */
EnsembleSummary run_ensemble(const slh::SLHModel& model, const StateVector& psi0,
                             const std::vector<Observable>& observables,
                             const EnsembleOptions& options,
                             const RecordSink& sink = {});

// Columns: t, then <name>_mean, <name>_se per observable, then norm_mean,
// norm_se.
CsvWriter ensemble_csv(const EnsembleSummary& summary);

}  // namespace qf::belavkin
