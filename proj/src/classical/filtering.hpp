#pragma once

#include <string>
#include <utility>
#include <vector>

#include "belavkin/diagnostics.hpp"
#include "classical/diffusion.hpp"
#include "classical/grid.hpp"

namespace qf::classical {

// Throws CflViolation unless dt <= 0.5 dx^2 / max sigma^2 on the grid.
void require_cfl(const GridDensity& density, const DiffusionSpec& spec, double dt);

/*!
 * Forward operator L* p = -d/dx (v p) + 1/2 d^2/dx^2 (sigma^2 p) in flux
 * form with central differences and zero flux through both ends. End nodes
 * are half cells, so the trapezoid mass is conserved exactly.
 */
std::vector<double> forward_operator(const GridDensity& density,
                                     const DiffusionSpec& spec);

/*!
 * One step of the DMZ equation for the unnormalized density:
 *   sigma' = (sigma + L* sigma dt) exp(h dy - 1/2 h^2 dt).
 * The multiplicative factor is the exact solution of d sigma = h sigma dy
 * over the step, which keeps the density nonnegative. Negative values left
 * by the drift step are a CFL symptom and raise CflViolation.
 */
GridDensity dmz_step(const GridDensity& sigma, const DiffusionSpec& spec,
                     double dy, double dt);

/*!
 * One Euler step of the normalized filter (Kushner equation) carried on a
 * normalized density:
 *   p' = p + L* p dt + (h - E h) p dI,  dI = dy - E(h) dt,
 * with E(h) taken before the update. Returns dI via `innovation`. Negative
 * nodes from an oversized innovation are clipped to zero and the density is
 * renormalized.
 */
GridDensity kushner_step(const GridDensity& p, const DiffusionSpec& spec,
                         double dy, double dt, double* innovation = nullptr);

struct NamedFunction {
  std::string name;
  ScalarFunction f;
};

/*!
 * Runs the Kushner filter along the observation increments of `traj` and
 * fills traj.innovations and traj.estimates (one series per function,
 * entry 0 at the initial density).
 */
void run_kushner_filter(ClassicalTrajectory& traj, const DiffusionSpec& spec,
                        const GridDensity& initial,
                        const std::vector<NamedFunction>& functions, double dt);

// Same statistics as the quantum innovations report.
belavkin::InnovationsReport innovations_diagnostics_classical(
    const ClassicalTrajectory& traj, double dt);

struct KalmanBucyState {
  double mean;
  double variance;
};

/*!
 * Kalman-Bucy filter for dX = -a X dt + s dW, dY = c X dt + dZ:
 *   dm = -a m dt + P c (dy - c m dt),  dP/dt = -2 a P + s^2 - c^2 P^2,
 * stepped with Euler (mean) and RK4 (variance).
 */
KalmanBucyState kalman_bucy_step(const KalmanBucyState& state, double a,
                                 double s, double c, double dy, double dt);

}  // namespace qf::classical
