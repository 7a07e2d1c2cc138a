#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "belavkin/diagnostics.hpp"
#include "belavkin/ensemble.hpp"
#include "belavkin/expectation_filter.hpp"
#include "belavkin/nondemolition.hpp"
#include "belavkin/trajectory.hpp"
#include "belavkin/zakai.hpp"
#include "common/error.hpp"
#include "rng/philox.hpp"
#include "slh/model.hpp"
#include "slh/operators.hpp"

namespace {

using qf::Complex;
using qf::CVector;
using qf::Operator;
using qf::StateVector;
using namespace qf::belavkin;
using qf::slh::SLHModel;

SLHModel model(const Operator& l, const Operator& h) {
  return qf::slh::make_model(qf::identity(l.rows()), l, h);
}
SLHModel damping(double gamma) {
  return model(std::sqrt(gamma) * qf::slh::sigma_minus(), Operator::Zero(2, 2));
}
Operator excited_projector() { return qf::slh::sigma_plus() * qf::slh::sigma_minus(); }
CVector vec2(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

TEST(ZakaiStep, NoDynamicsLeavesStateUnchanged) {
  const CVector chi = vec2(0.3, Complex(0.1, 0.4));
  EXPECT_EQ(zakai_step(chi, 0.37, model(Operator::Zero(2, 2), Operator::Zero(2, 2)), 1e-3), chi);
}

TEST(ZakaiStep, ClosedRotationMatchesExponential) {
  const double dt = 1e-3;
  const Operator z = qf::slh::pauli_z();
  const CVector chi = vec2(0.6, Complex(0.0, 0.8));
  const CVector next = zakai_step(chi, 0.0, model(Operator::Zero(2, 2), z), dt);
  const CVector exact = vec2(std::exp(Complex(0, -dt)) * chi(0), std::exp(Complex(0, dt)) * chi(1));
  EXPECT_LE((next - exact).norm(), dt * dt);
  // |1 - i z dt|^2 = 1 + dt^2 for each component.
  EXPECT_NEAR(next.squaredNorm() - 1.0, dt * dt, 1e-15);
}

TEST(ZakaiStep, DarkStateIsFixed) {
  const CVector ground = vec2(1.0, 0.0);
  EXPECT_LT((zakai_step(ground, 0.2, damping(1.0), 1e-3) - ground).norm(), 1e-16);
}

TEST(ZakaiStep, RejectsScattering) {
  const SLHModel m = qf::slh::make_model(qf::slh::pauli_x(), qf::slh::sigma_minus(), Operator::Zero(2, 2));
  try {
    zakai_step(vec2(1.0, 0.0), 0.0, m, 1e-3);
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kScatteringNotSupported);
  }
}

TEST(FilterExpectation, Examples) {
  EXPECT_NEAR(filter_expectation(vec2(3.0, Complex(1, 2)), qf::identity(2)), 1.0, 1e-15);
  EXPECT_NEAR(filter_expectation(vec2(0.0, 5.0), excited_projector()), 1.0, 1e-15);
  EXPECT_NEAR(filter_expectation(vec2(1.0, 1.0), qf::slh::pauli_z()), 0.0, 1e-15);
  try {
    filter_expectation(vec2(0.0, 0.0), qf::identity(2));
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kCollapsedNorm);
  }
}

TEST(Renormalize, SquaredNormConvention) {
  CVector chi = vec2(2.0, 0.0);
  double acc = 0.0;
  renormalize_in_place(chi, acc);
  EXPECT_NEAR(acc, std::log(4.0), 1e-15);
  EXPECT_NEAR(chi.norm(), 1.0, 1e-15);
  CVector unit = vec2(0.6, 0.8);
  const CVector before = unit;
  acc = 0.0;
  renormalize_in_place(unit, acc);
  EXPECT_NEAR(acc, 0.0, 1e-15);
  EXPECT_LT((unit - before).norm(), 1e-15);
}

TEST(Renormalize, RescaledPathReproducesRawNorm) {
  const double dt = 1e-3;
  const SLHModel m = model(qf::slh::sigma_minus() + 0.5 * qf::slh::pauli_z(), qf::slh::pauli_x());
  qf::rng::PhiloxStream rng(5, 0);
  CVector raw = vec2(0.6, 0.8);
  CVector scaled = raw;
  double acc = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double dy = std::sqrt(dt) * rng.normal();
    raw = zakai_step(raw, dy, m, dt);
    scaled = zakai_step(scaled, dy, m, dt);
    renormalize_in_place(scaled, acc);
  }
  const double log_raw = std::log(raw.squaredNorm());
  EXPECT_LE(std::abs(acc - log_raw), 1e-10 * std::max(1.0, std::abs(log_raw)));
}

TEST(Trajectory, UncoupledRecordIsRawNoise) {
  TrajectoryOptions opt;
  opt.t_final = 0.5;
  opt.dt = 1e-3;
  opt.seed = 42;
  opt.index = 3;
  const SLHModel m = model(Operator::Zero(2, 2), Operator::Zero(2, 2));
  const TrajectoryRecord rec = simulate_trajectory(
      m, StateVector(vec2(0.6, 0.8)), {{"n", excited_projector()}}, opt);
  qf::rng::PhiloxStream rng(42, 3);
  for (std::size_t k = 1; k < rec.size(); ++k) {
    const double draw = std::sqrt(opt.dt) * rng.normal();
    EXPECT_EQ(rec.dY[k], draw);
    EXPECT_EQ(rec.innovations[k], draw);
    EXPECT_NEAR(rec.filter_expectations[0][k], 0.64, 1e-12);
  }
}

TEST(Trajectory, FilterConsistentIdentityAndBounds) {
  TrajectoryOptions opt;
  opt.t_final = 3.0;
  opt.dt = 1e-3;
  opt.seed = 9;
  const SLHModel m = damping(1.0);
  const Operator quad = m.L + m.L.adjoint();
  const TrajectoryRecord rec = simulate_trajectory(
      m, StateVector::basis(2, 1), {{"n", excited_projector()}, {"quad", quad}}, opt);
  ASSERT_EQ(rec.size(), 3001u);
  for (std::size_t k = 1; k < rec.size(); ++k) {
    EXPECT_NEAR(rec.dY[k] - rec.innovations[k], rec.filter_expectations[1][k - 1] * opt.dt, 1e-15);
    EXPECT_GE(rec.filter_expectations[0][k], -1e-9);
    EXPECT_LE(rec.filter_expectations[0][k], 1.0 + 1e-9);
  }
  EXPECT_LT(rec.filter_expectations[0].back(), 0.5);
}

TEST(Trajectory, SeedDeterminism) {
  TrajectoryOptions opt;
  opt.t_final = 1.0;
  opt.seed = 123;
  opt.index = 7;
  const std::vector<Observable> obs{{"n", excited_projector()}};
  const std::string a = trajectory_csv(simulate_trajectory(damping(1.0), StateVector::basis(2, 1), obs, opt)).str();
  const std::string b = trajectory_csv(simulate_trajectory(damping(1.0), StateVector::basis(2, 1), obs, opt)).str();
  EXPECT_EQ(a, b);
  opt.index = 8;
  EXPECT_NE(a, trajectory_csv(simulate_trajectory(damping(1.0), StateVector::basis(2, 1), obs, opt)).str());
}

TEST(Trajectory, RejectsNonHermitianObservable) {
  TrajectoryOptions opt;
  try {
    simulate_trajectory(damping(1.0), StateVector::basis(2, 1), {{"s", qf::slh::sigma_minus()}}, opt);
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kNonHermitianObservable);
  }
}

TEST(ExpectationFilter, UnitIsFixedAndClosedLimit) {
  const SLHModel m = damping(1.0);
  Operator rho = Operator::Zero(2, 2);
  rho(1, 1) = 0.7;
  rho(0, 0) = 0.3;
  rho(0, 1) = rho(1, 0) = 0.2;
  const std::vector<Observable> obs{{"one", qf::identity(2)}};
  const std::vector<double> next = filter_step_expectation_form({1.0}, rho, m, obs, 0.05, 1e-3);
  EXPECT_NEAR(next[0], 1.0, 1e-15);

  const Operator h = qf::slh::pauli_x();
  const SLHModel closed = model(Operator::Zero(2, 2), h);
  const Operator z = qf::slh::pauli_z();
  const double ez = (rho * z).trace().real();
  const double dt = 1e-3;
  const std::vector<double> zn =
      filter_step_expectation_form({ez}, rho, closed, {{"z", z}}, 0.3, dt);
  const double drift = (rho * (-qf::kI * qf::commutator(z, h))).trace().real();
  EXPECT_NEAR(zn[0], ez + drift * dt, 1e-15);
}

TEST(ExpectationFilter, EstimatesEqualTraceOfCarriedDensity) {
  const SLHModel m = model(qf::slh::sigma_minus(), 0.4 * qf::slh::pauli_x());
  Operator rho0 = Operator::Zero(2, 2);
  rho0(1, 1) = 1.0;
  const std::vector<Observable> obs{{"n", excited_projector()}, {"x", qf::slh::pauli_x()}};
  ExpectationFormFilter f(m, rho0, obs);
  qf::rng::PhiloxStream rng(17, 0);
  const double dt = 1e-3;
  for (int k = 0; k < 3000; ++k) {
    f.step(std::sqrt(dt) * rng.normal(), dt);
    for (std::size_t i = 0; i < obs.size(); ++i) {
      ASSERT_NEAR(f.estimates()[i], (f.density() * obs[i].op).trace().real(), 1e-10);
    }
  }
}

// One step from a shared state: the expectation form and the normalized
// Zakai step differ at O(dt^2) once the odd dy terms are averaged over
// dy = +-sqrt(dt).
TEST(ExpectationFilter, AgreesWithNormalizedZakaiToSecondOrder) {
  const SLHModel m = model(0.8 * qf::slh::sigma_minus(), 0.3 * qf::slh::pauli_z());
  const CVector chi = vec2(Complex(0.5, 0.1), Complex(0.3, -0.8)).normalized();
  const Operator rho = chi * chi.adjoint();
  const Operator x = qf::slh::pauli_x();
  const double ex = (rho * x).trace().real();
  auto discrepancy = [&](double dt) {
    double sum = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double dy = sign * std::sqrt(dt);
      const double form = filter_step_expectation_form({ex}, rho, m, {{"x", x}}, dy, dt)[0];
      const double ratio = filter_expectation(zakai_step(chi, dy, m, dt), x);
      sum += 0.5 * (form - ratio);
    }
    return std::abs(sum);
  };
  const double d1 = discrepancy(1e-3), d2 = discrepancy(5e-4), d3 = discrepancy(2.5e-4);
  const double slope1 = std::log2(d1 / d2), slope2 = std::log2(d2 / d3);
  EXPECT_GT(slope1, 1.8);
  EXPECT_GT(slope2, 1.8);
  EXPECT_LT(d1, 1e-5);
}

TEST(Diagnostics, ZeroInnovationsReportZeros) {
  const std::vector<double> zeros(1000, 0.0);
  const InnovationsReport r = innovations_diagnostics(zeros, 1e-3);
  EXPECT_EQ(r.mean, 0.0);
  EXPECT_EQ(r.variance_ratio, 0.0);
  for (double a : r.lag_autocorr) EXPECT_EQ(a, 0.0);
}

TEST(Diagnostics, MatchesDirectComputation) {
  const double dt = 1e-2;
  qf::rng::PhiloxStream rng(3, 3);
  std::vector<double> inc(5000);
  for (double& v : inc) v = std::sqrt(dt) * rng.normal();
  const InnovationsReport r = innovations_diagnostics(inc, dt);
  double sz = 0.0, szz = 0.0, lag1 = 0.0, qv = 0.0;
  for (std::size_t k = 0; k < inc.size(); ++k) {
    const double z = inc[k] / std::sqrt(dt);
    sz += z;
    szz += z * z;
    qv += inc[k] * inc[k];
    if (k + 1 < inc.size()) lag1 += z * inc[k + 1] / std::sqrt(dt);
  }
  EXPECT_NEAR(r.mean, sz / inc.size(), 1e-12);
  EXPECT_NEAR(r.lag_autocorr.at(0), lag1 / szz, 1e-12);
  EXPECT_NEAR(r.variance_ratio, qv / (dt * inc.size()), 1e-12);
  EXPECT_EQ(r.lag_autocorr.size(), 10u);
}

TEST(Ensemble, ReferenceMeasureNormIsMartingale) {
  EnsembleOptions opt;
  opt.trajectories = 400;
  opt.t_final = 1.0;
  opt.dt = 1e-3;
  opt.seed = 2024;
  opt.mode = RecordMode::kReferenceMeasure;
  const EnsembleSummary s = run_ensemble(damping(1.0), StateVector::basis(2, 1), {{"n", excited_projector()}}, opt);
  const double mean = s.norm.mean.back(), se = s.norm.standard_error.back();
  EXPECT_GT(se, 0.0);
  EXPECT_LE(std::abs(mean - 1.0), 3.0 * se);
}

TEST(Nondemolition, UncoupledIsExact) {
  const SLHModel m = model(Operator::Zero(2, 2), qf::slh::pauli_z());
  const std::vector<double> ts{0.015, 0.02}, ss{0.003, 0.007};
  const NondemolitionReport r = nondemolition_check(m, qf::slh::pauli_x(), ts, ss, 2, 0.02, 1e-2);
  EXPECT_LE(r.max_residual, 1e-13);
}

TEST(Nondemolition, WeakCouplingShrinksWithSlots) {
  const double t_final = 0.02;  // gamma * slot width = 0.01 at two slots
  const SLHModel m = damping(1.0);
  const std::vector<double> ts{0.75 * t_final, t_final};
  double previous = 1.0;
  for (int slots = 2; slots <= 5; ++slots) {
    // The commutator peaks mid-slot.
    const std::vector<double> ss{0.5 * t_final / slots};
    const NondemolitionReport r =
        nondemolition_check(m, excited_projector(), ts, ss, slots, t_final, 0.05);
    if (slots == 2) {
      EXPECT_LE(r.max_residual, 1e-2);
    }
    EXPECT_LE(r.max_residual, r.error_bound + 1e-15);
    EXPECT_LT(r.max_residual, previous);
    previous = r.max_residual;
  }
}

TEST(Nondemolition, RejectsReversedTimes) {
  const std::vector<double> ts{0.005}, ss{0.01};
  EXPECT_THROW(nondemolition_check(damping(1.0), qf::slh::pauli_x(), ts, ss, 2, 0.02, 1e-2), qf::Error);
}

}  // namespace
