#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common/csv.hpp"
#include "common/linalg.hpp"
#include "common/steps.hpp"
#include "slh/model.hpp"

namespace qf::belavkin {

enum class RecordMode {
  // dI ~ N(0, dt) and dY = E_t(L + L*) dt + dI.
  kFilterConsistent,
  // dy ~ N(0, dt) directly; the Zakai norm is the path likelihood.
  kReferenceMeasure,
};

const char* mode_name(RecordMode mode);

struct Observable {
  std::string name;
  Operator op;
};

struct TrajectoryOptions {
  double t_final = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;  // trajectory k draws from Philox stream k
  RecordMode mode = RecordMode::kFilterConsistent;
};

/*!
 * Time-gridded measurement record. Entry 0 is the initial time, with zero
 * increments and unit norm; entry k > 0 holds the increments over
 * [t_{k-1}, t_k] and the state quantities at t_k.
 */
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> dY;
  std::vector<double> innovations;
  std::vector<double> log_norms;  // ln <chi|chi>
  std::vector<std::string> observable_names;
  std::vector<std::vector<double>> filter_expectations;  // per observable
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  RecordMode mode = RecordMode::kFilterConsistent;

  std::size_t size() const { return times.size(); }
  double norm(std::size_t k) const;
};

/*!
 * Simulates one measurement record and its filter. The state is carried
 * unnormalized in law but rescaled to unit length after every step, with
 * ln <chi|chi> accumulated separately. Throws NormOverflow if <chi|chi>
 * exceeds 1e100.
 */
TrajectoryRecord simulate_trajectory(const slh::SLHModel& model,
                                     const StateVector& psi0,
                                     const std::vector<Observable>& observables,
                                     const TrajectoryOptions& options);

// Columns: t, dY, dI, norm, then one column per observable.
CsvWriter trajectory_csv(const TrajectoryRecord& record);

}  // namespace qf::belavkin
