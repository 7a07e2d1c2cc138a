#include <cmath>
#include <numbers>

#include "classical/bayes.hpp"
#include "classical/filtering.hpp"
#include "classical/markov.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/steps.hpp"
#include "experiments/registry.hpp"
#include "rng/philox.hpp"
#include "vn/pointer.hpp"

namespace qf::experiments {

namespace {

using classical::DiffusionSpec;
using classical::Grid;
using classical::GridDensity;

std::string fmt(double x) { return format_double(x); }

Grid grid_param(ParamReader& p, double lo, double hi, std::uint64_t n) {
  const double x_min = p.number("x_min", lo);
  const double x_max = p.number("x_max", hi);
  const std::uint64_t points = p.count("n", n, 3);
  if (!(x_max > x_min)) p.reject("x_max", "must exceed x_min");
  return Grid::make(x_min, x_max, points);
}

Verdict gaussian_conditioning(ParamReader& p, RunContext& ctx) {
  const double mu0 = p.number("mu0", 0.0);
  const double s0 = p.positive("sigma0", 1.0);
  const double s = p.positive("sigma", 1.0);
  const double y = p.number("y", 2.0);
  const Grid grid = grid_param(p, -10.0, 10.0, 20001);
  const double tol = p.positive("tolerance", 1e-6);
  p.finish();

  const GridDensity prior = GridDensity::from_function(
      grid, [&](double x) { return classical::gaussian_pdf(x, mu0, s0 * s0); });
  const GridDensity post = classical::bayes_posterior_grid(
      prior, [&](double yy, double x) { return classical::gaussian_pdf(yy, x, s * s); }, y);
  const classical::GaussianPosterior exact = classical::gaussian_posterior(mu0, s0 * s0, s * s, y);

  const double dm = std::abs(post.mean() - exact.mean);
  const double dv = std::abs(post.variance() - exact.variance);

  CsvWriter csv({"x", "prior", "posterior"});
  for (std::size_t i = 0; i < grid.n; i += 10) {
    const std::vector<double> row{grid.x(i), prior.values()[i], post.values()[i]};
    csv.add_row(row);
  }
  ctx.artifacts.add("posterior.csv", csv.str());

  Verdict v;
  v.pass = dm <= tol && dv <= tol;
  v.summary = "grid posterior mean " + fmt(post.mean()) + " (exact " + fmt(exact.mean) + "), variance " +
              fmt(post.variance()) + " (exact " + fmt(exact.variance) + ")";
  v.metrics = {{"grid_mean", post.mean()},
               {"grid_variance", post.variance()},
               {"exact_mean", exact.mean},
               {"exact_variance", exact.variance},
               {"mean_error", dm},
               {"variance_error", dv},
               {"tolerance", tol}};
  return v;
}

Verdict vn_pointer_gaussian(ParamReader& p, RunContext& ctx) {
  const double mu = p.number("mu", 1.0);
  const double s0 = p.positive("sigma0", 1.0);
  const double s = p.positive("sigma", 1.0);
  const double y = p.number("y", 2.0);
  const Grid grid = grid_param(p, -10.0, 10.0, 20001);
  const std::uint64_t marginal_n = p.count("marginal_n", 2001, 3);
  const std::uint64_t samples = p.count("samples", 100000, 2);
  const double tol = p.positive("tolerance", 1e-6);
  p.finish();

  // y grid covering y - mu x for every x, with the x spacing so that the
  // shift lands on phi's nodes when mu = 1.
  auto y_grid_for = [mu](const Grid& g) {
    const double reach = std::abs(mu) * std::max(std::abs(g.x_min), std::abs(g.x_max));
    const double lo = g.x_min - reach;
    const double hi = g.x_max + reach;
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / g.dx())) + 1;
    return Grid::make(lo, hi, n);
  };

  const vn::GridWavefunction psi = vn::GridWavefunction::gaussian(grid, 0.0, s0);
  const vn::GridWavefunction phi = vn::GridWavefunction::gaussian(grid, 0.0, s);
  const vn::JointAmplitude joint = vn::joint_amplitude(psi, phi, mu, y_grid_for(grid));
  const vn::GridWavefunction post = vn::posterior_wavefunction(joint, y);
  const GridDensity post_density = post.density();
  // Y = mu X + sigma Z, i.e. X + (sigma/mu) Z.
  const classical::GaussianPosterior exact =
      classical::gaussian_posterior(0.0, s0 * s0, (s / mu) * (s / mu), y / mu);
  const double dm = std::abs(post_density.mean() - exact.mean);
  const double dv = std::abs(post_density.variance() - exact.variance);

  const Grid coarse = Grid::make(grid.x_min, grid.x_max, marginal_n);
  const vn::GridWavefunction psi_c = vn::GridWavefunction::gaussian(coarse, 0.0, s0);
  const vn::GridWavefunction phi_c = vn::GridWavefunction::gaussian(coarse, 0.0, s);
  const Grid y_coarse = y_grid_for(coarse);
  const GridDensity marginal = vn::pointer_pdf(vn::joint_amplitude(psi_c, phi_c, mu, y_coarse));
  const double marginal_var = mu * mu * s0 * s0 + s * s;
  const double dmv = std::abs(marginal.variance() - marginal_var);

  const vn::SignalNoiseReport sn =
      vn::signal_noise_decomposition_check(psi_c, phi_c, mu, y_coarse, samples, ctx.seed);

  ctx.artifacts.add("posterior_wavefunction.csv", vn::wavefunction_csv(post).str());
  CsvWriter pdf({"y", "density"});
  for (std::size_t j = 0; j < y_coarse.n; ++j) {
    const std::vector<double> row{y_coarse.x(j), marginal.values()[j]};
    pdf.add_row(row);
  }
  ctx.artifacts.add("pointer_pdf.csv", pdf.str());

  Verdict v;
  v.pass = dm <= tol && dv <= tol && dmv <= tol && sn.pass();
  v.summary = "posterior mean " + fmt(post_density.mean()) + ", variance " + fmt(post_density.variance()) +
              "; pointer variance " + fmt(marginal.variance()) + " (exact " + fmt(marginal_var) +
              "); sampled Var(Y) " + fmt(sn.sample_variance) + " +- " + fmt(sn.variance_standard_error);
  v.metrics = {{"posterior_mean", post_density.mean()},
               {"posterior_variance", post_density.variance()},
               {"exact_mean", exact.mean},
               {"exact_variance", exact.variance},
               {"mean_error", dm},
               {"variance_error", dv},
               {"pointer_variance", marginal.variance()},
               {"pointer_variance_error", dmv},
               {"clipped_mass", joint.clipped_mass()},
               {"signal_noise",
                {{"samples", sn.samples},
                 {"mean", sn.sample_mean},
                 {"mean_se", sn.mean_standard_error},
                 {"expected_mean", sn.expected_mean},
                 {"variance", sn.sample_variance},
                 {"variance_se", sn.variance_standard_error},
                 {"expected_variance", sn.expected_variance},
                 {"pass", sn.pass()}}},
               {"tolerance", tol}};
  return v;
}

// Nonlinear test model for the DMZ/Kushner comparison.
DiffusionSpec nonlinear_spec(double sigma) {
  DiffusionSpec spec;
  spec.v = [](double x) { return -x; };
  spec.sigma = [sigma](double) { return sigma; };
  spec.h = [](double x) { return x + 0.5 * std::sin(2.0 * x); };
  return spec;
}

GridDensity mixture(const Grid& g) {
  return GridDensity::from_function(g, [](double x) {
    return 0.6 * classical::gaussian_pdf(x, -1.0, 0.25) + 0.4 * classical::gaussian_pdf(x, 1.5, 0.5);
  }).normalize();
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
  return classical::trapezoid(d, dx);
}

/*!
 * Weak one-step discrepancy between the normalized DMZ step and the Kushner
 * step from density p: both are driven by the two-point increments
 * dy = E(h) dt +- sqrt(dt), and the L1 norm of the averaged difference is
 * returned.
 */
double one_step_discrepancy(const GridDensity& p, const DiffusionSpec& spec, double dt) {
  const double eh = p.expectation(spec.h);
  std::vector<double> avg(p.grid().n, 0.0);
  for (int sign : {-1, 1}) {
    const double dy = eh * dt + sign * std::sqrt(dt);
    const GridDensity dmz = classical::dmz_step(p, spec, dy, dt).normalize();
    const GridDensity kus = classical::kushner_step(p, spec, dy, dt);
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += 0.5 * (dmz.values()[i] - kus.values()[i]);
  }
  std::vector<double> zero(avg.size(), 0.0);
  return l1_distance(avg, zero, p.grid().dx());
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

Verdict dmz_vs_kushner(ParamReader& p, RunContext& ctx) {
  const Grid grid = grid_param(p, -6.0, 6.0, 241);
  const double sigma = p.positive("sigma", 0.8);
  const double dt0 = p.positive("dt", 1e-3);
  const std::uint64_t halvings = p.count("halvings", 3, 2);
  const double t_final = p.positive("t_final", 1.0);
  const double min_slope = p.number("min_slope", 0.9);
  p.finish();

  const DiffusionSpec spec = nonlinear_spec(sigma);

  // One observed path; its filter densities at a few times serve as the
  // starting points for the one-step comparison.
  classical::ClassicalTrajectory traj = classical::simulate_pair(spec, -0.5, t_final, dt0, ctx.seed);
  const GridDensity p0 = mixture(grid);
  std::vector<GridDensity> starts{p0};
  GridDensity dmz = p0;
  GridDensity kus = p0;
  double path_gap = 0.0;
  CsvWriter path({"t", "x", "dmz_mean", "kushner_mean"});
  const std::size_t steps = traj.y_increments.size() - 1;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double dy = traj.y_increments[k];
    dmz = classical::dmz_step(dmz, spec, dy, dt0).normalize();
    kus = classical::kushner_step(kus, spec, dy, dt0);
    path_gap = std::max(path_gap, std::abs(dmz.mean() - kus.mean()));
    if (k == steps / 2 || k == steps) starts.push_back(kus);
    const std::vector<double> row{traj.times[k], traj.x_path[k], dmz.mean(), kus.mean()};
    path.add_row(row);
  }
  ctx.artifacts.add("path.csv", path.str());

  std::vector<double> dts, errs;
  CsvWriter conv({"dt", "one_step_discrepancy"});
  for (std::uint64_t h = 0; h <= halvings; ++h) {
    const double dt = dt0 / std::pow(2.0, static_cast<double>(h));
    double e = 0.0;
    for (const GridDensity& s : starts) e = std::max(e, one_step_discrepancy(s, spec, dt));
    dts.push_back(dt);
    errs.push_back(e);
    const std::vector<double> row{dt, e};
    conv.add_row(row);
  }
  ctx.artifacts.add("convergence.csv", conv.str());

  const double local_slope = loglog_slope(dts, errs);
  // Local weak errors of order dt^(q+1) accumulate over T/dt steps to dt^q.
  const double weak_slope = local_slope - 1.0;

  Verdict v;
  v.pass = weak_slope >= min_slope;
  v.summary = "one-step slope " + fmt(local_slope) + " -> weak consistency slope " + fmt(weak_slope) +
              " (min " + fmt(min_slope) + "); pathwise max|mean gap| " + fmt(path_gap) + " at dt " + fmt(dt0);
  v.metrics = {{"dt", dts},
               {"one_step_discrepancy", errs},
               {"one_step_slope", local_slope},
               {"weak_slope", weak_slope},
               {"pathwise_max_mean_gap", path_gap}};
  return v;
}

class MeanAccumulator {
 public:
  void add(double x) {
    ++n_;
    sum_ += x;
    sum_sq_ += x * x;
  }
  double mean() const { return sum_ / static_cast<double>(n_); }
  double standard_error() const {
    const double n = static_cast<double>(n_);
    const double var = std::max(0.0, sum_sq_ / n - mean() * mean()) * n / (n - 1.0);
    return std::sqrt(var / n);
  }

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

struct KalmanParams {
  double a, s, c, m0, p0, t_final, dt;
};

struct FilterEnd {
  double mean;
  double variance;
};

// Grid Kushner filter and Kalman-Bucy filter on the same record; moments at T.
std::pair<FilterEnd, FilterEnd> kalman_pair(const KalmanParams& k, const Grid& grid,
                                            const std::vector<double>& dy) {
  DiffusionSpec spec;
  spec.v = [a = k.a](double x) { return -a * x; };
  spec.sigma = [s = k.s](double) { return s; };
  spec.h = [c = k.c](double x) { return c * x; };
  GridDensity p = GridDensity::from_function(
      grid, [&](double x) { return classical::gaussian_pdf(x, k.m0, k.p0); }).normalize();
  classical::KalmanBucyState kb{k.m0, k.p0};
  for (std::size_t i = 1; i < dy.size(); ++i) {
    p = classical::kushner_step(p, spec, dy[i], k.dt);
    kb = classical::kalman_bucy_step(kb, k.a, k.s, k.c, dy[i], k.dt);
  }
  return {{p.mean(), p.variance()}, {kb.mean, kb.variance}};
}

Verdict kalman_crosscheck(ParamReader& p, RunContext& ctx) {
  KalmanParams k{};
  k.a = p.number("a", 1.0);
  k.s = p.positive("s", 1.0);
  k.c = p.number("c", 1.0);
  k.m0 = p.number("m0", 0.5);
  k.p0 = p.positive("p0", 1.0);
  k.t_final = p.positive("t_final", 1.0);
  k.dt = p.positive("dt", 1e-3);
  const std::uint64_t paths = p.count("paths", 200, 2);
  const Grid grid = grid_param(p, -6.0, 6.0, 241);
  p.finish();

  // Spatial error of the grid filter alone: no observations (c = 0), where
  // the Kalman-Bucy moments reduce to the prediction ODEs.
  KalmanParams blind = k;
  blind.c = 0.0;
  const std::size_t steps = step_count(k.t_final, k.dt);
  const auto [g0, kb0] = kalman_pair(blind, grid, std::vector<double>(steps + 1, 0.0));
  const double grid_err_mean = std::abs(g0.mean - kb0.mean);
  const double grid_err_var = std::abs(g0.variance - kb0.variance);

  DiffusionSpec truth;
  truth.v = [a = k.a](double x) { return -a * x; };
  truth.sigma = [s = k.s](double) { return s; };
  truth.h = [c = k.c](double x) { return c * x; };

  // Each path is simulated at dt/2; the filters run on it at dt/2 and, with
  // pairwise summed increments, at dt. The paired difference of the gaps is
  // a Richardson estimate of the first-order time-stepping bias at dt.
  KalmanParams fine = k;
  fine.dt = 0.5 * k.dt;
  MeanAccumulator gap_m, gap_v, rich_m, rich_v;
  CsvWriter csv({"path", "grid_mean", "kb_mean", "grid_variance", "kb_variance"});
  rng::PhiloxStream init(ctx.seed, paths);  // x0 draws, disjoint from the path streams
  for (std::uint64_t i = 0; i < paths; ++i) {
    const double x0 = init.normal(k.m0, std::sqrt(k.p0));
    const classical::ClassicalTrajectory traj =
        classical::simulate_pair(truth, x0, k.t_final, fine.dt, ctx.seed, i);
    std::vector<double> coarse_dy(steps + 1, 0.0);
    for (std::size_t j = 1; j <= steps; ++j) {
      coarse_dy[j] = traj.y_increments[2 * j - 1] + traj.y_increments[2 * j];
    }
    const auto [g, kb] = kalman_pair(k, grid, coarse_dy);
    const auto [gf, kbf] = kalman_pair(fine, grid, traj.y_increments);
    const double dm = g.mean - kb.mean;
    const double dv = g.variance - kb.variance;
    gap_m.add(dm);
    gap_v.add(dv);
    rich_m.add(2.0 * (dm - (gf.mean - kbf.mean)));
    rich_v.add(2.0 * (dv - (gf.variance - kbf.variance)));
    const std::vector<double> row{static_cast<double>(i), g.mean, kb.mean, g.variance, kb.variance};
    csv.add_row(row);
  }
  ctx.artifacts.add("kalman.csv", csv.str());

  const double time_err_mean = std::abs(rich_m.mean());
  const double time_err_var = std::abs(rich_v.mean());
  const double tol_m = std::max(grid_err_mean + time_err_mean, 3.0 * gap_m.standard_error());
  const double tol_v = std::max(grid_err_var + time_err_var, 3.0 * gap_v.standard_error());

  Verdict v;
  v.pass = std::abs(gap_m.mean()) <= tol_m && std::abs(gap_v.mean()) <= tol_v;
  v.summary = "mean gap " + fmt(gap_m.mean()) + " (tol " + fmt(tol_m) + "), variance gap " +
              fmt(gap_v.mean()) + " (tol " + fmt(tol_v) + ") over " + std::to_string(paths) + " paths";
  v.metrics = {{"mean_gap", gap_m.mean()},
               {"mean_gap_se", gap_m.standard_error()},
               {"variance_gap", gap_v.mean()},
               {"variance_gap_se", gap_v.standard_error()},
               {"space_error_mean", grid_err_mean},
               {"space_error_variance", grid_err_var},
               {"time_error_mean", time_err_mean},
               {"time_error_mean_se", rich_m.standard_error()},
               {"time_error_variance", time_err_var},
               {"time_error_variance_se", rich_v.standard_error()},
               {"tolerance_mean", tol_m},
               {"tolerance_variance", tol_v},
               {"paths", paths}};
  return v;
}

// Gaussian kernel whose exponent uses twice the variance of its prefactor.
double misscaled_kernel(double x, double t, double x0, double t0) {
  const double tau = t - t0;
  if (tau <= 0.0) return x == x0 ? 1.0 : 0.0;
  const double z = x - x0;
  return std::exp(-z * z / (4.0 * tau)) / std::sqrt(2.0 * std::numbers::pi * tau);
}

Verdict chapman_kolmogorov(ParamReader& p, RunContext& ctx) {
  const std::vector<double> ts = p.numbers("times", {0.5, 1.0, 1.5});
  const Grid grid = grid_param(p, -8.0, 8.0, 4001);
  const std::vector<double> pts = p.numbers("eval_points", {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0});
  const double tol = p.positive("tolerance", 1e-6);
  const double control_min = p.positive("control_min", 1e-3);
  p.finish();
  if (ts.size() != 3 || !(ts[0] < ts[1] && ts[1] < ts[2])) p.reject("times", "need t0 < t1 < t2");

  const double residual = classical::chapman_kolmogorov_check(classical::wiener_kernel, ts[0], ts[1],
                                                              ts[2], grid, pts);
  const double control = classical::chapman_kolmogorov_check(misscaled_kernel, ts[0], ts[1], ts[2],
                                                             grid, pts);
  CsvWriter csv({"kernel", "residual"});
  csv.add_row(std::vector<double>{0.0, residual});
  csv.add_row(std::vector<double>{1.0, control});
  ctx.artifacts.add("chapman_kolmogorov.csv", csv.str());

  Verdict v;
  v.pass = residual <= tol && control >= control_min;
  v.summary = "Wiener residual " + fmt(residual) + " (tol " + fmt(tol) + "), mis-scaled control " +
              fmt(control) + " (min " + fmt(control_min) + ")";
  v.metrics = {{"wiener_residual", residual}, {"control_residual", control}, {"tolerance", tol}};
  return v;
}

}  // namespace

void register_classical_experiments(std::vector<ExperimentInfo>& out) {
  out.push_back({"chapman-kolmogorov", 10,
                 "Wiener kernel satisfies Chapman-Kolmogorov on a grid; a mis-scaled kernel does not",
                 false, {}, chapman_kolmogorov});
  out.push_back({"dmz-vs-kushner", 9,
                 "normalized DMZ and Kushner steps agree weakly to first order under dt halving",
                 false, {}, dmz_vs_kushner});
  out.push_back({"gaussian-conditioning", 8,
                 "grid Bayes posterior of the Gaussian signal-plus-noise example vs closed form",
                 false, {}, gaussian_conditioning});
  out.push_back({"kalman-crosscheck", 9,
                 "grid Kushner filter on a linear model vs the Kalman-Bucy/Riccati filter",
                 false, {}, kalman_crosscheck});
  out.push_back({"vn-pointer-gaussian", 8,
                 "von Neumann pointer posterior, pointer marginal and signal-plus-noise sampling",
                 false, {}, vn_pointer_gaussian});
}

}  // namespace qf::experiments
