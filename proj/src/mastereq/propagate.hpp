#pragma once

#include <functional>
#include <vector>

#include "common/csv.hpp"
#include "common/linalg.hpp"
#include "slh/model.hpp"

namespace qf::mastereq {

struct MasterEqSolution {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

struct PropagateOptions {
  double trace_drift_limit = 1e-6;    // StepTooLarge beyond this
  double positivity_floor = -1e-8;    // PositivityViolation below this
  bool check_positivity = true;
};

using Generator = std::function<Operator(const Operator&)>;

// Classical fourth-order Runge-Kutta for d rho/dt = generator(rho) on the
// grid t_k = k dt, k = 0..round(t_final / dt). The final step is shortened
// if t_final is not a multiple of dt.
MasterEqSolution propagate(const Generator& generator, const DensityMatrix& rho0,
                           double t_final, double dt,
                           const PropagateOptions& options = {});

// Lindblad dynamics driven by the adjoint generator of `model`.
MasterEqSolution propagate(const slh::SLHModel& model, const DensityMatrix& rho0,
                           double t_final, double dt,
                           const PropagateOptions& options = {});

struct CurvePoint {
  double t;
  double value;
};

// tr(rho_t X) at every grid point. Throws NonHermitianObservable for a
// non-hermitian X.
std::vector<CurvePoint> expectation_curve(const MasterEqSolution& sol,
                                          const Operator& x);

// Columns: t, then re/im of every rho entry in row-major order
// (rho_0_0_re, rho_0_0_im, rho_0_1_re, ...).
CsvWriter solution_csv(const MasterEqSolution& sol);

}  // namespace qf::mastereq
