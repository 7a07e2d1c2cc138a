#include "belavkin/trajectory.hpp"

#include <cmath>

#include "belavkin/zakai.hpp"
#include "common/error.hpp"
#include "rng/philox.hpp"

namespace qf::belavkin {

namespace {

const double kLogNormLimit = std::log(1e100);

double expectation_unit(const CVector& chi, const Operator& x, CVector& scratch) {
  scratch.noalias() = x * chi;
  return chi.dot(scratch).real();
}

}  // namespace

const char* mode_name(RecordMode mode) {
  return mode == RecordMode::kFilterConsistent ? "filter_consistent" : "reference_measure";
}

double TrajectoryRecord::norm(std::size_t k) const { return std::exp(log_norms[k]); }

TrajectoryRecord simulate_trajectory(const slh::SLHModel& model,
                                     const StateVector& psi0,
                                     const std::vector<Observable>& observables,
                                     const TrajectoryOptions& options) {
  const ZakaiStepper stepper(model, options.dt);
  if (psi0.dim() != model.dim()) {
    fail(ErrorCode::kDimensionMismatch, "simulate_trajectory: state and model differ in dimension");
  }
  for (const Observable& o : observables) {
    if (o.op.rows() != model.dim() || o.op.cols() != model.dim()) {
      fail(ErrorCode::kDimensionMismatch, "simulate_trajectory: observable '" + o.name + "' has the wrong shape");
    }
    if (hermiticity_residual(o.op) > 1e-10) {
      fail(ErrorCode::kNonHermitianObservable, "simulate_trajectory: observable '" + o.name + "' is not hermitian");
    }
  }

  const std::size_t n = step_count(options.t_final, options.dt);
  const double dt = options.dt;
  const double sqrt_dt = std::sqrt(dt);
  const Operator quadrature = model.L + model.L.adjoint();

  TrajectoryRecord rec;
  rec.seed = options.seed;
  rec.index = options.index;
  rec.mode = options.mode;
  rec.times.reserve(n + 1);
  rec.dY.reserve(n + 1);
  rec.innovations.reserve(n + 1);
  rec.log_norms.reserve(n + 1);
  rec.filter_expectations.assign(observables.size(), {});
  for (std::size_t i = 0; i < observables.size(); ++i) {
    rec.observable_names.push_back(observables[i].name);
    rec.filter_expectations[i].reserve(n + 1);
  }

  CVector chi = psi0.amplitudes();
  CVector scratch(chi.size());
  double log_norm = 0.0;
  auto record_state = [&] {
    for (std::size_t i = 0; i < observables.size(); ++i) {
      rec.filter_expectations[i].push_back(expectation_unit(chi, observables[i].op, scratch));
    }
  };

  rec.times.push_back(0.0);
  rec.dY.push_back(0.0);
  rec.innovations.push_back(0.0);
  rec.log_norms.push_back(0.0);
  record_state();

  rng::PhiloxStream rng(options.seed, options.index);
  for (std::size_t k = 1; k <= n; ++k) {
    const double predicted = expectation_unit(chi, quadrature, scratch) * dt;
    double dy = 0.0;
    if (options.mode == RecordMode::kFilterConsistent) {
      dy = predicted + sqrt_dt * rng.normal();
    } else {
      dy = sqrt_dt * rng.normal();
    }
    stepper.step(chi, dy, scratch);
    renormalize_in_place(chi, log_norm);
    if (log_norm > kLogNormLimit) {
      fail(ErrorCode::kNormOverflow,
           "simulate_trajectory: <chi|chi> exceeded 1e100 at t=" + format_double(k * dt) +
               "; reduce dt");
    }
    rec.times.push_back(static_cast<double>(k) * dt);
    rec.dY.push_back(dy);
    rec.innovations.push_back(dy - predicted);
    rec.log_norms.push_back(log_norm);
    record_state();
  }
  return rec;
}

CsvWriter trajectory_csv(const TrajectoryRecord& record) {
  std::vector<std::string> header{"t", "dY", "dI", "norm"};
  for (const auto& name : record.observable_names) header.push_back(name);
  CsvWriter csv(std::move(header));
  std::vector<double> row;
  for (std::size_t k = 0; k < record.size(); ++k) {
    row = {record.times[k], record.dY[k], record.innovations[k], record.norm(k)};
    for (const auto& series : record.filter_expectations) row.push_back(series[k]);
    csv.add_row(row);
  }
  return csv;
}

}  // namespace qf::belavkin
