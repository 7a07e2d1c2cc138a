#include "mastereq/propagate.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace qf::mastereq {

MasterEqSolution propagate(const Generator& generator, const DensityMatrix& rho0,
                           double t_final, double dt,
                           const PropagateOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    fail(ErrorCode::kInvalidArgument, "propagate: dt must be positive");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    fail(ErrorCode::kInvalidArgument, "propagate: t_final must be nonnegative");
  }
  // Number of steps, tolerant of t_final being a multiple of dt up to rounding.
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));

  MasterEqSolution sol;
  sol.times.reserve(steps + 1);
  sol.states.reserve(steps + 1);
  sol.times.push_back(0.0);
  sol.states.push_back(rho0);

  Operator rho = rho0.entries();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t = k == steps ? t_final : static_cast<double>(k) * dt;
    const double h = t - t_prev;
    const Operator k1 = generator(rho);
    const Operator k2 = generator(rho + 0.5 * h * k1);
    const Operator k3 = generator(rho + 0.5 * h * k2);
    const Operator k4 = generator(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(rho.trace() - 1.0);
    if (!(drift <= options.trace_drift_limit)) {
      fail(ErrorCode::kStepTooLarge,
           "propagate: trace drift " + format_double(drift) + " at t=" + format_double(t));
    }
    if (options.check_positivity) {
      const double lowest = min_eigenvalue(0.5 * (rho + rho.adjoint()));
      if (lowest < options.positivity_floor) {
        fail(ErrorCode::kPositivityViolation,
             "propagate: eigenvalue " + format_double(lowest) + " at t=" + format_double(t));
      }
    }
    // The stored state is hermitized and trace-normalized; the integrator
    // itself keeps the raw iterate so drift stays observable.
    Operator stored = 0.5 * (rho + rho.adjoint());
    stored /= stored.trace().real();
    // Eigenvalues between the positivity floor and -1e-12 are integration
    // noise; DensityMatrix rejects them, so they are clipped for storage.
    const HermitianEigen eig = hermitian_eig(stored);
    if (eig.values.minCoeff() < -DensityMatrix::kTolerance) {
      const RVector clipped = eig.values.cwiseMax(0.0);
      stored = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
      stored /= stored.trace().real();
    }
    sol.times.push_back(t);
    sol.states.emplace_back(std::move(stored));
  }
  return sol;
}

MasterEqSolution propagate(const slh::SLHModel& model, const DensityMatrix& rho0,
                           double t_final, double dt,
                           const PropagateOptions& options) {
  slh::require_valid(model);
  if (rho0.dim() != model.dim()) {
    fail(ErrorCode::kDimensionMismatch, "propagate: state and model differ in dimension");
  }
  return propagate([&model](const Operator& rho) { return slh::adjoint_generator(model, rho); },
                   rho0, t_final, dt, options);
}

std::vector<CurvePoint> expectation_curve(const MasterEqSolution& sol,
                                          const Operator& x) {
  if (hermiticity_residual(x) > 1e-10) {
    fail(ErrorCode::kNonHermitianObservable, "expectation_curve: observable is not hermitian");
  }
  std::vector<CurvePoint> out;
  out.reserve(sol.times.size());
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const Complex v = sol.states[k].expectation(x);
    if (std::abs(v.imag()) > 1e-10) {
      fail(ErrorCode::kNonHermitianObservable, "expectation_curve: complex expectation value");
    }
    out.push_back({sol.times[k], v.real()});
  }
  return out;
}

CsvWriter solution_csv(const MasterEqSolution& sol) {
  const Eigen::Index d = sol.states.empty() ? 0 : sol.states.front().dim();
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::string base = "rho_" + std::to_string(i) + "_" + std::to_string(j);
      header.push_back(base + "_re");
      header.push_back(base + "_im");
    }
  }
  CsvWriter csv(std::move(header));
  std::vector<double> row;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    row.assign(1, sol.times[k]);
    const Operator& rho = sol.states[k].entries();
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        row.push_back(rho(i, j).real());
        row.push_back(rho(i, j).imag());
      }
    }
    csv.add_row(row);
  }
  return csv;
}

}  // namespace qf::mastereq
