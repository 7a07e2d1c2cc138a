#include <chrono>
#include <cmath>
#include <optional>

#include "belavkin/ensemble.hpp"
#include "belavkin/nondemolition.hpp"
#include "common/error.hpp"
#include "experiments/manifest.hpp"
#include "experiments/registry.hpp"
#include "ito/parser.hpp"
#include "ito/table.hpp"
#include "mastereq/propagate.hpp"
#include "slh/operators.hpp"

namespace qf::experiments {

namespace {

struct QuantumSetup {
  slh::SLHModel model;
  StateVector psi0;
  Operator observable;          // projector onto the initial level
  std::optional<double> gamma;  // set for the built-in decaying qubit
};

// Built-in model: qubit, H = 0, L = sqrt(gamma) sigma_-, psi0 = |e>.
QuantumSetup quantum_setup(ParamReader& p, const RunContext& ctx) {
  std::optional<double> gamma;
  slh::SLHModel model;
  if (ctx.model) {
    try {
      model = slh::model_from_json(*ctx.model);
    } catch (const Error& e) {
      throw ConfigError(0, 0, std::string("model: ") + e.what());
    }
  } else {
    gamma = p.positive("gamma", 1.0);
    const Operator l = std::sqrt(*gamma) * slh::sigma_minus();
    model = slh::make_model(identity(2), l, Operator::Zero(2, 2));
  }
  const auto dim = static_cast<std::uint64_t>(model.dim());
  const std::uint64_t level = p.count("initial_level", dim - 1, 0);
  if (level >= dim) p.reject("initial_level", "must be below the model dimension");
  const auto k = static_cast<Eigen::Index>(level);
  StateVector psi0 = StateVector::basis(model.dim(), k);
  Operator proj = Operator::Zero(model.dim(), model.dim());
  proj(k, k) = 1.0;
  return {std::move(model), std::move(psi0), std::move(proj), gamma};
}

struct EnsembleParams {
  double dt;
  double t_final;
  std::size_t n_traj;
};

EnsembleParams ensemble_params(ParamReader& p) {
  EnsembleParams e{};
  e.dt = p.positive("dt", 1e-3);
  e.t_final = p.positive("t_final", 3.0);
  e.n_traj = p.count("n_traj", 2000, 2);
  return e;
}

struct EnsembleRun {
  belavkin::EnsembleSummary summary;
  belavkin::TrajectoryRecord first;
};

EnsembleRun run_decay_ensemble(const QuantumSetup& s, const EnsembleParams& e,
                               std::uint64_t seed, belavkin::RecordMode mode) {
  belavkin::EnsembleOptions opt;
  opt.trajectories = e.n_traj;
  opt.t_final = e.t_final;
  opt.dt = e.dt;
  opt.seed = seed;
  opt.mode = mode;
  EnsembleRun run;
  const std::vector<belavkin::Observable> obs{{"p_excited", s.observable}};
  run.summary = belavkin::run_ensemble(s.model, s.psi0, obs, opt,
                                       [&](const belavkin::TrajectoryRecord& rec) {
                                         if (rec.index == 0) run.first = rec;
                                       });
  return run;
}

std::string fmt(double x) { return format_double(x); }

Verdict qubit_decay_filter(ParamReader& p, RunContext& ctx) {
  const QuantumSetup s = quantum_setup(p, ctx);
  const EnsembleParams e = ensemble_params(p);
  const double tol = p.positive("tolerance", 0.05);
  const double max_seconds = p.positive("max_seconds", 60.0);
  const bool perturb = p.flag("perturb_lindblad_sign", false);
  p.finish();

  const auto start = std::chrono::steady_clock::now();
  const EnsembleRun run = run_decay_ensemble(s, e, ctx.seed, belavkin::RecordMode::kFilterConsistent);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Master-equation oracle; the perturbed variant flips the dissipator.
  const slh::SLHModel& m = s.model;
  mastereq::Generator gen = [&m](const Operator& rho) { return slh::adjoint_generator(m, rho); };
  mastereq::PropagateOptions popt;
  if (perturb) {
    gen = [&m](const Operator& rho) {
      const Operator hamiltonian = -kI * commutator(m.H, rho);
      return Operator(hamiltonian - (slh::adjoint_generator(m, rho) - hamiltonian));
    };
    popt.check_positivity = false;
  }
  const mastereq::MasterEqSolution me =
      mastereq::propagate(gen, DensityMatrix::from_pure(s.psi0), e.t_final, e.dt, popt);
  const std::vector<mastereq::CurvePoint> curve = mastereq::expectation_curve(me, s.observable);

  const auto& mean = run.summary.observables[0].mean;
  const auto& se = run.summary.observables[0].standard_error;
  if (curve.size() != mean.size()) {
    fail(ErrorCode::kInvalidArgument, "qubit-decay-filter: master-equation grid does not match the ensemble grid");
  }

  double dev_me = 0.0, dev_exact = 0.0, worst_t = 0.0, max_se = 0.0;
  std::vector<std::string> header{"t", "ensemble_mean", "ensemble_se", "master_equation"};
  if (s.gamma) header.push_back("exact");
  CsvWriter oracle(header);
  for (std::size_t k = 0; k < mean.size(); ++k) {
    const double t = run.summary.times[k];
    const double d = std::abs(mean[k] - curve[k].value);
    if (d > dev_me) {
      dev_me = d;
      worst_t = t;
    }
    max_se = std::max(max_se, se[k]);
    std::vector<double> row{t, mean[k], se[k], curve[k].value};
    if (s.gamma) {
      const double exact = std::exp(-*s.gamma * t);
      dev_exact = std::max(dev_exact, std::abs(mean[k] - exact));
      row.push_back(exact);
    }
    oracle.add_row(row);
  }

  ctx.artifacts.add("ensemble.csv", belavkin::ensemble_csv(run.summary).str());
  ctx.artifacts.add("trajectory_0.csv", belavkin::trajectory_csv(run.first).str());
  ctx.artifacts.add("oracle.csv", oracle.str());

  Verdict v;
  const bool fast = seconds <= max_seconds;
  v.pass = dev_me <= tol && dev_exact <= tol && fast;
  v.summary = "max|mean E(P_e) - master eq| = " + fmt(dev_me) +
              (s.gamma ? ", vs exp(-gamma t) = " + fmt(dev_exact) : std::string()) +
              " (tol " + fmt(tol) + "), ensemble " + fmt(seconds) + " s";
  v.metrics = {{"max_dev_master_equation", dev_me},
               {"worst_t", worst_t},
               {"max_standard_error", max_se},
               {"ensemble_seconds", seconds},
               {"perturbed_lindblad_sign", perturb},
               {"n_traj", e.n_traj}};
  if (s.gamma) v.metrics["max_dev_exact"] = dev_exact;
  return v;
}

Verdict innovations_whiteness(ParamReader& p, RunContext& ctx) {
  const QuantumSetup s = quantum_setup(p, ctx);
  const EnsembleParams e = ensemble_params(p);
  const double lag_tol = p.positive("lag1_tolerance", 0.02);
  p.finish();

  const EnsembleRun run = run_decay_ensemble(s, e, ctx.seed, belavkin::RecordMode::kFilterConsistent);
  const belavkin::InnovationsReport& r = run.summary.innovations;
  const double mean_bound = 3.0 / std::sqrt(static_cast<double>(r.samples));
  const double lag1 = r.lag_autocorr.empty() ? 0.0 : r.lag_autocorr[0];

  CsvWriter lags({"lag", "autocorrelation"});
  for (std::size_t j = 0; j < r.lag_autocorr.size(); ++j) {
    const std::vector<double> row{static_cast<double>(j + 1), r.lag_autocorr[j]};
    lags.add_row(row);
  }
  ctx.artifacts.add("innovations.csv", lags.str());

  Verdict v;
  const bool mean_ok = std::abs(r.mean) <= mean_bound;
  const bool var_ok = r.variance_ratio >= 0.9 && r.variance_ratio <= 1.1;
  const bool lag_ok = std::abs(lag1) <= lag_tol;
  v.pass = mean_ok && var_ok && lag_ok && r.samples > 0;
  v.summary = "mean " + fmt(r.mean) + " (bound " + fmt(mean_bound) + "), Var(I(T))/T " +
              fmt(r.variance_ratio) + ", lag-1 " + fmt(lag1);
  v.metrics = {{"mean", r.mean},
               {"mean_bound", mean_bound},
               {"variance_ratio", r.variance_ratio},
               {"lag_autocorrelation", r.lag_autocorr},
               {"samples", r.samples},
               {"trajectories", r.trajectories}};
  return v;
}

Verdict zakai_martingale(ParamReader& p, RunContext& ctx) {
  const QuantumSetup s = quantum_setup(p, ctx);
  const EnsembleParams e = ensemble_params(p);
  const std::vector<double> check_times = p.numbers("check_times", {1.0, 2.0, 3.0});
  p.finish();
  for (double t : check_times) {
    if (!(t > 0.0) || t > e.t_final + 1e-12) p.reject("check_times", "times must lie in (0, t_final]");
  }

  const EnsembleRun run = run_decay_ensemble(s, e, ctx.seed, belavkin::RecordMode::kReferenceMeasure);
  const auto& norm = run.summary.norm;
  const auto& weighted = run.summary.weighted_observables[0];

  const mastereq::MasterEqSolution me =
      mastereq::propagate(s.model, DensityMatrix::from_pure(s.psi0), e.t_final, e.dt);
  const auto curve = mastereq::expectation_curve(me, s.observable);

  bool pass = true;
  json points = json::array();
  std::string summary;
  for (double t : check_times) {
    const auto k = static_cast<std::size_t>(std::llround(t / e.dt));
    const double dev = std::abs(norm.mean[k] - 1.0);
    const double band = 3.0 * norm.standard_error[k];
    const bool ok = dev <= band;
    pass = pass && ok;
    points.push_back({{"t", run.summary.times[k]},
                      {"mean_norm", norm.mean[k]},
                      {"standard_error", norm.standard_error[k]},
                      {"pass", ok},
                      {"weighted_p_excited", weighted.mean[k]},
                      {"weighted_p_excited_se", weighted.standard_error[k]},
                      {"master_equation_p_excited", curve[k].value}});
    if (!summary.empty()) summary += "; ";
    summary += "t=" + fmt(run.summary.times[k]) + ": |<chi|chi>-1| " + fmt(dev) + " vs 3SE " + fmt(band);
  }
  ctx.artifacts.add("norm.csv", belavkin::ensemble_csv(run.summary).str());

  Verdict v;
  v.pass = pass;
  v.summary = summary;
  v.metrics = {{"points", points}, {"n_traj", e.n_traj}};
  return v;
}

Verdict nondemolition_truncated(ParamReader& p, RunContext& ctx) {
  const QuantumSetup s = quantum_setup(p, ctx);
  const double t_final = p.positive("t_final", 0.02);
  const std::vector<std::uint64_t> slots = p.counts("slots", {2, 3, 4, 5});
  const double tol = p.positive("tolerance", 1e-2);
  const double bound_tol = p.positive("bound_tolerance", 0.05);
  const std::uint64_t s_points = p.count("s_points", 20);
  p.finish();
  if (slots.size() < 2) p.reject("slots", "need at least two slot counts");

  // s dense in (0, T/2), t in {3T/4, T}.
  std::vector<double> s_grid;
  for (std::uint64_t i = 1; i <= s_points; ++i) {
    s_grid.push_back(0.5 * t_final * static_cast<double>(i) / static_cast<double>(s_points + 1));
  }
  const std::vector<double> t_grid{0.75 * t_final, t_final};

  CsvWriter csv({"slots", "slot_width", "max_residual", "error_bound"});
  json rows = json::array();
  std::vector<double> residuals;
  for (std::uint64_t m : slots) {
    const belavkin::NondemolitionReport r = belavkin::nondemolition_check(
        s.model, s.observable, t_grid, s_grid, static_cast<int>(m), t_final, bound_tol);
    residuals.push_back(r.max_residual);
    const std::vector<double> row{static_cast<double>(m), r.slot_width, r.max_residual, r.error_bound};
    csv.add_row(row);
    rows.push_back({{"slots", m},
                    {"max_residual", r.max_residual},
                    {"error_bound", r.error_bound},
                    {"worst_s", r.worst_s},
                    {"worst_t", r.worst_t}});
  }
  ctx.artifacts.add("nondemolition.csv", csv.str());

  bool decreasing = true;
  for (std::size_t i = 1; i < residuals.size(); ++i) decreasing = decreasing && residuals[i] < residuals[i - 1];
  Verdict v;
  v.pass = residuals.front() <= tol && decreasing;
  std::string list;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    list += (i ? ", " : "") + std::string("m=") + std::to_string(slots[i]) + ": " + fmt(residuals[i]);
  }
  v.summary = "commutator residuals " + list + (decreasing ? " (decreasing)" : " (NOT decreasing)");
  v.metrics = {{"refinements", rows}, {"tolerance", tol}, {"decreasing", decreasing}};
  return v;
}

Verdict determinism(ParamReader& p, RunContext& ctx) {
  const QuantumSetup s = quantum_setup(p, ctx);
  const EnsembleParams e = ensemble_params(p);
  p.finish();

  std::string first_csv, first_traj;
  bool identical = true;
  json hashes = json::array();
  for (int rep = 0; rep < 2; ++rep) {
    const EnsembleRun run = run_decay_ensemble(s, e, ctx.seed, belavkin::RecordMode::kFilterConsistent);
    const std::string ens = belavkin::ensemble_csv(run.summary).str();
    const std::string traj = belavkin::trajectory_csv(run.first).str();
    hashes.push_back({{"ensemble.csv", sha256_hex(ens)}, {"trajectory_0.csv", sha256_hex(traj)}});
    if (rep == 0) {
      first_csv = ens;
      first_traj = traj;
    } else {
      identical = ens == first_csv && traj == first_traj;
    }
  }
  ctx.artifacts.add("ensemble.csv", first_csv);
  ctx.artifacts.add("trajectory_0.csv", first_traj);

  Verdict v;
  v.pass = identical;
  v.summary = std::string(identical ? "byte-identical" : "DIFFERENT") +
              " CSVs across two runs, ensemble sha256 " + hashes[0]["ensemble.csv"].get<std::string>().substr(0, 16);
  v.metrics = {{"runs", hashes}, {"identical", identical}};
  return v;
}

Verdict ito_goldens(ParamReader& p, RunContext& ctx) {
  p.finish();
  using ito::Increment;
  // Rows and columns ordered dt, dB, dB*, dL; entry = row . column.
  const char* golden[4][4] = {{"0", "0", "0", "0"},
                              {"0", "0", "dt", "dB"},
                              {"0", "0", "0", "0"},
                              {"0", "0", "dB*", "dL"}};
  int table_mismatches = 0;
  json entries = json::array();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const ito::Expr got = ito::ito_product(ito::Expr::increment(ito::kAllIncrements[r]),
                                             ito::Expr::increment(ito::kAllIncrements[c]));
      const bool ok = ito::equal(got, ito::parse_ito_expr(golden[r][c]));
      if (!ok) ++table_mismatches;
      entries.push_back({{"row", ito::increment_name(ito::kAllIncrements[r])},
                         {"column", ito::increment_name(ito::kAllIncrements[c])},
                         {"product", ito::to_string(got)},
                         {"pass", ok}});
    }
  }

  struct Identity {
    const char* name;
    const char* lhs;
    const char* rhs;
  };
  const Identity identities[] = {{"dQ.dQ = dt", "dQ.dQ", "dt"},
                                 {"dP.dP = dt", "dP.dP", "dt"},
                                 {"dQ.dP - dP.dQ = 2i dt", "dQ.dP - dP.dQ", "(0+2i) dt"},
                                 {"dN.dN = dN", "dN.dN", "dN"}};
  int identity_failures = 0;
  json ids = json::array();
  for (const Identity& id : identities) {
    const ito::Expr lhs = ito::parse_ito_expr(id.lhs);
    const bool ok = ito::equal(lhs, ito::parse_ito_expr(id.rhs));
    if (!ok) ++identity_failures;
    ids.push_back({{"identity", id.name}, {"simplified", ito::to_string(ito::simplify(lhs))}, {"pass", ok}});
  }
  const int assoc = ito::associativity_mismatches();
  ctx.artifacts.add("ito_table.txt", ito::render_table());

  Verdict v;
  v.pass = table_mismatches == 0 && identity_failures == 0 && assoc == 0;
  v.summary = std::to_string(16 - table_mismatches) + "/16 table entries, " +
              std::to_string(4 - identity_failures) + "/4 quadrature/Poisson identities, " +
              std::to_string(assoc) + " associativity mismatches";
  v.metrics = {{"entries", entries}, {"identities", ids}, {"associativity_mismatches", assoc}};
  return v;
}

}  // namespace

void register_quantum_experiments(std::vector<ExperimentInfo>& out) {
  const std::vector<std::string> ensemble_overrides{"n_traj"};
  out.push_back({"determinism", 12,
                 "two runs of the qubit-decay-filter ensemble with one seed give byte-identical CSVs",
                 true, ensemble_overrides, determinism});
  out.push_back({"innovations-whiteness", 2,
                 "pooled innovations of the decaying-qubit filter are white with unit rate",
                 true, ensemble_overrides, innovations_whiteness});
  out.push_back({"ito-goldens", 4,
                 "quantum Ito table, quadrature and Poisson products against exact goldens",
                 false, {}, ito_goldens});
  out.push_back({"nondemolition-truncated", 11,
                 "[j_t(X), Y_out(s)] residual in a repeated-interaction truncation shrinks with slots",
                 true, {}, nondemolition_truncated});
  out.push_back({"qubit-decay-filter", 1,
                 "filter ensemble mean of P_e matches the master equation and exp(-gamma t)",
                 true, {"n_traj", "perturb_lindblad_sign"}, qubit_decay_filter});
  out.push_back({"zakai-martingale", 3,
                 "unnormalized Zakai norm has mean one under the reference measure",
                 true, ensemble_overrides, zakai_martingale});
}

}  // namespace qf::experiments
