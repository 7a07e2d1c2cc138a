#include "classical/filtering.hpp"

#include <algorithm>
#include <cmath>

#include "common/csv.hpp"
#include "common/error.hpp"

namespace qf::classical {

namespace {

// Relative size below which negative nodes are treated as round-off.
constexpr double kNegativeTolerance = 1e-10;

std::vector<double> clip_negatives(std::vector<double> values, const char* where) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  for (double& v : values) {
    if (v < 0.0) {
      if (v < -kNegativeTolerance * peak) {
        fail(ErrorCode::kCflViolation,
             std::string(where) + ": drift step produced a negative density (" +
                 format_double(v) + "); refine dx or dt");
      }
      v = 0.0;
    }
  }
  return values;
}

}  // namespace

void require_cfl(const GridDensity& density, const DiffusionSpec& spec, double dt) {
  require_complete(spec);
  if (!(dt > 0.0)) fail(ErrorCode::kInvalidArgument, "dt must be positive");
  const Grid& g = density.grid();
  double max_s2 = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double s = std::max(spec.sigma(g.x(i)), spec.sigma_floor);
    max_s2 = std::max(max_s2, s * s);
  }
  const double limit = 0.5 * g.dx() * g.dx() / max_s2;
  if (dt > limit) {
    fail(ErrorCode::kCflViolation, "dt=" + format_double(dt) + " exceeds the stability limit " +
                                       format_double(limit) + " = 0.5 dx^2 / max sigma^2");
  }
}

std::vector<double> forward_operator(const GridDensity& density,
                                     const DiffusionSpec& spec) {
  require_complete(spec);
  const Grid& g = density.grid();
  const std::vector<double>& p = density.values();
  const std::size_t n = g.n;
  const double dx = g.dx();

  std::vector<double> vp(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.x(i);
    const double s = std::max(spec.sigma(x), spec.sigma_floor);
    vp[i] = spec.v(x) * p[i];
    d[i] = s * s * p[i];
  }
  // flux[i] is the flux between nodes i and i+1
  std::vector<double> flux(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    flux[i] = 0.5 * (vp[i] + vp[i + 1]) - 0.5 * (d[i + 1] - d[i]) / dx;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double in = i == 0 ? 0.0 : flux[i - 1];
    const double outflow = i + 1 == n ? 0.0 : flux[i];
    const double width = (i == 0 || i + 1 == n) ? 0.5 * dx : dx;
    out[i] = (in - outflow) / width;
  }
  return out;
}

GridDensity dmz_step(const GridDensity& sigma, const DiffusionSpec& spec,
                     double dy, double dt) {
  require_cfl(sigma, spec, dt);
  const Grid& g = sigma.grid();
  const std::vector<double> lp = forward_operator(sigma, spec);
  std::vector<double> next(g.n);
  for (std::size_t i = 0; i < g.n; ++i) next[i] = sigma.values()[i] + lp[i] * dt;
  next = clip_negatives(std::move(next), "dmz_step");
  for (std::size_t i = 0; i < g.n; ++i) {
    const double hx = spec.h(g.x(i));
    next[i] *= std::exp(hx * dy - 0.5 * hx * hx * dt);
  }
  return GridDensity(g, std::move(next));
}

GridDensity kushner_step(const GridDensity& p, const DiffusionSpec& spec,
                         double dy, double dt, double* innovation) {
  require_cfl(p, spec, dt);
  const Grid& g = p.grid();
  const double eh = p.expectation(spec.h);
  const double di = dy - eh * dt;
  const std::vector<double> lp = forward_operator(p, spec);
  std::vector<double> next(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double pi = p.values()[i];
    next[i] = pi + lp[i] * dt + (spec.h(g.x(i)) - eh) * pi * di;
  }
  for (double& v : next) v = std::max(v, 0.0);
  if (innovation != nullptr) *innovation = di;
  GridDensity out(g, std::move(next));
  out.normalize();
  return out;
}

void run_kushner_filter(ClassicalTrajectory& traj, const DiffusionSpec& spec,
                        const GridDensity& initial,
                        const std::vector<NamedFunction>& functions, double dt) {
  GridDensity p = initial.normalized();
  traj.innovations.assign(1, 0.0);
  traj.estimate_names.clear();
  traj.estimates.assign(functions.size(), {});
  for (std::size_t j = 0; j < functions.size(); ++j) {
    traj.estimate_names.push_back(functions[j].name);
    traj.estimates[j].reserve(traj.y_increments.size());
    traj.estimates[j].push_back(p.expectation(functions[j].f));
  }
  traj.innovations.reserve(traj.y_increments.size());
  for (std::size_t k = 1; k < traj.y_increments.size(); ++k) {
    double di = 0.0;
    p = kushner_step(p, spec, traj.y_increments[k], dt, &di);
    traj.innovations.push_back(di);
    for (std::size_t j = 0; j < functions.size(); ++j) {
      traj.estimates[j].push_back(p.expectation(functions[j].f));
    }
  }
}

belavkin::InnovationsReport innovations_diagnostics_classical(
    const ClassicalTrajectory& traj, double dt) {
  if (traj.innovations.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "innovations_diagnostics_classical: run a filter first");
  }
  return belavkin::innovations_diagnostics(
      std::span<const double>(traj.innovations).subspan(1), dt);
}

KalmanBucyState kalman_bucy_step(const KalmanBucyState& state, double a,
                                 double s, double c, double dy, double dt) {
  auto riccati = [&](double p) { return -2.0 * a * p + s * s - c * c * p * p; };
  const double p = state.variance;
  const double k1 = riccati(p);
  const double k2 = riccati(p + 0.5 * dt * k1);
  const double k3 = riccati(p + 0.5 * dt * k2);
  const double k4 = riccati(p + dt * k3);
  KalmanBucyState next;
  next.mean = state.mean - a * state.mean * dt + p * c * (dy - c * state.mean * dt);
  next.variance = p + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return next;
}

}  // namespace qf::classical
