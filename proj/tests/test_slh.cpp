#include <gtest/gtest.h>

#include <cmath>

#include "common/error.hpp"
#include "ito/evaluate.hpp"
#include "ito/expr.hpp"
#include "ito/parser.hpp"
#include "mastereq/propagate.hpp"
#include "qp/random.hpp"
#include "rng/philox.hpp"
#include "slh/model.hpp"
#include "slh/operators.hpp"

namespace {

using qf::Complex;
using qf::DensityMatrix;
using qf::Operator;
using namespace qf::slh;

SLHModel damping(double gamma) {
  return make_model(qf::identity(2), std::sqrt(gamma) * sigma_minus(), Operator::Zero(2, 2));
}

SLHModel random_model(Eigen::Index d, qf::rng::PhiloxStream& rng, bool scattering) {
  const Operator s = scattering ? qf::qp::random_unitary(d, rng) : qf::identity(d);
  return make_model(s, qf::qp::random_ginibre(d, rng), qf::qp::random_hermitian(d, rng));
}

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(make_model(qf::identity(2), Operator::Zero(2, 2), pauli_z())).pass);
  Operator s = qf::identity(2);
  s(0, 0) = std::sqrt(1.1);  // S*S - 1 = diag(0.1, 0)
  const ValidationReport bad = validate(make_model(s, Operator::Zero(2, 2), pauli_z()));
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.unitarity_residual, 0.1, 1e-12);
  EXPECT_THROW(require_valid(make_model(s, Operator::Zero(2, 2), pauli_z())), qf::Error);
  EXPECT_THROW(make_model(qf::identity(2), Operator::Zero(3, 3), pauli_z()), qf::Error);
}

TEST(Validate, CayleyScatteringIsUnitary) {
  qf::rng::PhiloxStream rng(4, 0);
  for (int d = 2; d <= 5; ++d) {
    const Operator s = cayley_scattering(qf::qp::random_hermitian(d, rng));
    EXPECT_LT(qf::unitarity_residual(s), 1e-12);
  }
}

TEST(Generator, Examples) {
  const double gamma = 0.7;
  const SLHModel m = damping(gamma);
  EXPECT_LT(qf::norm(lindblad_generator(m, qf::identity(2))), 1e-15);
  const Operator n = sigma_plus() * sigma_minus();
  EXPECT_LT(qf::norm(lindblad_generator(m, n) + gamma * n), 1e-15);
  const Operator h = pauli_x() + 0.3 * pauli_z();
  const SLHModel closed = make_model(qf::identity(2), Operator::Zero(2, 2), h);
  EXPECT_LT(qf::norm(lindblad_generator(closed, n) + qf::kI * qf::commutator(n, h)), 1e-15);
}

TEST(Generator, AdjointExamples) {
  const double gamma = 0.7;
  Operator excited = Operator::Zero(2, 2), ground = Operator::Zero(2, 2);
  excited(1, 1) = 1.0;
  ground(0, 0) = 1.0;
  EXPECT_LT(qf::norm(adjoint_generator(damping(gamma), excited) - gamma * (ground - excited)), 1e-15);
  const SLHModel closed = make_model(qf::identity(2), Operator::Zero(2, 2), pauli_z());
  EXPECT_LT(qf::norm(adjoint_generator(closed, 0.3 * ground + 0.7 * excited)), 1e-15);
}

TEST(Generator, TraceDualityOnRandomPairs) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    qf::rng::PhiloxStream rng(31, i);
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 4);
    const SLHModel m = random_model(d, rng, false);
    const Operator rho = qf::qp::random_density(d, rng).entries();
    const Operator x = qf::qp::random_hermitian(d, rng);
    const Complex lhs = (rho * lindblad_generator(m, x)).trace();
    const Complex rhs = (adjoint_generator(m, rho) * x).trace();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Generator, WienerLimit) {
  qf::rng::PhiloxStream rng(2, 2);
  const Operator h = qf::qp::random_hermitian(3, rng), r = qf::qp::random_hermitian(3, rng);
  const Operator x = qf::qp::random_ginibre(3, rng);
  const SLHModel m = make_model(qf::identity(3), -qf::kI * r, h);
  EXPECT_LT(qf::norm(lindblad_generator(m, x) - wiener_generator(h, r, x)), 1e-12);
}

TEST(Langevin, TrivialAndSpecialCases) {
  qf::rng::PhiloxStream rng(6, 1);
  const SLHModel m = random_model(3, rng, true);
  const LangevinCoefficients one = langevin_coefficients(m, qf::identity(3));
  EXPECT_LT(qf::norm(one.drift) + qf::norm(one.dB_coeff) + qf::norm(one.dB_dag_coeff) +
                qf::norm(one.dLambda_coeff),
            1e-13);

  const SLHModel unit_s = random_model(3, rng, false);
  const Operator x = qf::qp::random_hermitian(3, rng);
  EXPECT_LT(qf::norm(langevin_coefficients(unit_s, x).dB_dag_coeff - qf::commutator(x, unit_s.L)), 1e-13);

  const Operator s = qf::qp::random_unitary(3, rng);
  const SLHModel pure_scatter = make_model(s, Operator::Zero(3, 3), Operator::Zero(3, 3));
  const LangevinCoefficients c = langevin_coefficients(pure_scatter, x);
  EXPECT_LT(qf::norm(c.dLambda_coeff - (s.adjoint() * x * s - x)), 1e-13);
  EXPECT_LT(qf::norm(c.drift) + qf::norm(c.dB_coeff) + qf::norm(c.dB_dag_coeff), 1e-13);
  EXPECT_LT(qf::norm(c.dLambda_coeff - poisson_generator(s, x)), 1e-13);
}

// d(U* X U) = dU* X U + U* X dU + dU* X dU with
// dU = (-(1/2 L*L + iH) dt + L dB* - L*S dB + (S - 1) dL) U, expanded with
// the Ito engine rather than the closed-form coefficients.
TEST(Langevin, MatchesItoExpansionOfUnitary) {
  using namespace qf::ito;
  const Expr g = parse_ito_expr("(-0.5+0i) L*.L.dt + (0-1i) H.dt + L.dB* - L*.S.dB + S.dL - dL");
  const Expr x = Expr::symbol("X");
  const Expr gd = adjoint(g);
  const Expr dj = simplify(raw_product(gd, x) + raw_product(x, g) + raw_product(raw_product(gd, x), g));
  for (std::uint64_t i = 0; i < 20; ++i) {
    qf::rng::PhiloxStream rng(77, i);
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 3);
    const SLHModel m = random_model(d, rng, true);
    const Operator xm = qf::qp::random_hermitian(d, rng);
    NumericCoefficients num =
        evaluate_numeric(dj, {{"L", m.L}, {"S", m.S}, {"H", m.H}, {"X", xm}});
    auto get = [&](Increment inc) {
      auto it = num.find(inc);
      return it == num.end() ? Operator::Zero(d, d).eval() : it->second;
    };
    const LangevinCoefficients c = langevin_coefficients(m, xm);
    EXPECT_LT(qf::norm(get(Increment::kDt) - c.drift), 1e-12);
    EXPECT_LT(qf::norm(get(Increment::kDB) - c.dB_coeff), 1e-12);
    EXPECT_LT(qf::norm(get(Increment::kDBDag) - c.dB_dag_coeff), 1e-12);
    EXPECT_LT(qf::norm(get(Increment::kDLambda) - c.dLambda_coeff), 1e-12);
    EXPECT_EQ(num.count(std::nullopt), 0u);
  }
}

TEST(Output, Differential) {
  const OutputDifferential out = output_differential(damping(4.0));
  EXPECT_LT(qf::norm(out.dt_coeff - 2.0 * sigma_minus()), 1e-15);
  EXPECT_LT(qf::norm(out.dB_coeff - qf::identity(2)), 1e-15);
  const OutputDifferential none =
      output_differential(make_model(qf::identity(2), Operator::Zero(2, 2), pauli_z()));
  EXPECT_LT(qf::norm(none.dt_coeff), 1e-15);
}

TEST(Json, ModelRoundTripAndStrictness) {
  const nlohmann::json j = {{"dim", 2},
                            {"L", {{"atom", "sigma_minus"}, {"scale", 0.5}}},
                            {"H", {"pauli_z", {{"atom", "pauli_x"}, {"scale", {0.0, 1.0}}}}}};
  EXPECT_THROW(model_from_json(j), qf::Error);  // i * pauli_x makes H non-hermitian
  const nlohmann::json ok = {{"dim", 2},
                             {"L", {{"atom", "sigma_minus"}, {"scale", 0.5}}},
                             {"H", {"pauli_z", {{"atom", "pauli_x"}, {"scale", 0.25}}}}};
  const SLHModel m = model_from_json(ok);
  EXPECT_LT(qf::norm(m.L - 0.5 * sigma_minus()), 1e-15);
  EXPECT_LT(qf::norm(m.H - (pauli_z() + 0.25 * pauli_x())), 1e-15);
  EXPECT_LT(qf::norm(m.S - qf::identity(2)), 1e-15);
  const SLHModel back = model_from_json(model_to_json(m));
  EXPECT_EQ(back.L, m.L);
  EXPECT_EQ(back.H, m.H);
  nlohmann::json extra = ok;
  extra["Q"] = "pauli_z";
  EXPECT_THROW(model_from_json(extra), qf::Error);
  EXPECT_THROW(named_atom("pauli_w", 2), qf::Error);
  EXPECT_EQ(named_atom("destroy(3)", 2), destroy(3));
}

TEST(MasterEquation, NoDynamicsIsStatic) {
  const SLHModel m = make_model(qf::identity(2), Operator::Zero(2, 2), Operator::Zero(2, 2));
  qf::rng::PhiloxStream rng(1, 1);
  const DensityMatrix rho0 = qf::qp::random_density(2, rng);
  const auto sol = qf::mastereq::propagate(m, rho0, 1.0, 0.1);
  EXPECT_LT(qf::norm(sol.states.back().entries() - rho0.entries()), 1e-15);
}

TEST(MasterEquation, AmplitudeDampingClosedForm) {
  const DensityMatrix excited = DensityMatrix::from_pure(qf::StateVector::basis(2, 1));
  const auto sol = qf::mastereq::propagate(damping(1.0), excited, 1.0, 1e-4);
  const Operator n = sigma_plus() * sigma_minus();
  const auto curve = qf::mastereq::expectation_curve(sol, n);
  EXPECT_NEAR(curve.back().t, 1.0, 1e-12);
  EXPECT_NEAR(curve.back().value, std::exp(-1.0), 1e-8);
  for (const auto& p : curve) EXPECT_NEAR(p.value, std::exp(-p.t), 1e-8);
  const auto trace = qf::mastereq::expectation_curve(sol, qf::identity(2));
  for (const auto& p : trace) EXPECT_NEAR(p.value, 1.0, 1e-12);
}

TEST(MasterEquation, UnitaryPhaseRotation) {
  const double omega = 2.0, t = 0.8;
  const Operator h = 0.5 * omega * pauli_z();
  const SLHModel m = make_model(qf::identity(2), Operator::Zero(2, 2), h);
  Operator plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const auto sol = qf::mastereq::propagate(m, DensityMatrix(plus), t, 1e-3);
  const Complex expected = 0.5 * std::exp(Complex(0.0, -(h(0, 0) - h(1, 1)).real() * t));
  EXPECT_LT(std::abs(sol.states.back().entries()(0, 1) - expected), 1e-10);
  EXPECT_NEAR(sol.states.back().entries()(0, 0).real(), 0.5, 1e-12);
}

TEST(MasterEquation, MixedStationaryAndCsvLayout) {
  const SLHModel m = make_model(qf::identity(2), Operator::Zero(2, 2), pauli_z());
  const auto sol = qf::mastereq::propagate(m, DensityMatrix::maximally_mixed(2), 0.5, 0.1);
  for (const auto& p : qf::mastereq::expectation_curve(sol, pauli_z())) EXPECT_NEAR(p.value, 0.0, 1e-15);
  const std::string csv = qf::mastereq::solution_csv(sol).str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "t,rho_0_0_re,rho_0_0_im,rho_0_1_re,rho_0_1_im,rho_1_0_re,rho_1_0_im,rho_1_1_re,rho_1_1_im");
  EXPECT_THROW(qf::mastereq::expectation_curve(sol, sigma_minus()), qf::Error);
}

TEST(MasterEquation, PositivityMonitorFlagsBrokenGenerator) {
  const SLHModel m = damping(1.0);
  const auto flipped = [&m](const Operator& rho) -> Operator { return -adjoint_generator(m, rho); };
  const DensityMatrix excited = DensityMatrix::from_pure(qf::StateVector::basis(2, 1));
  try {
    qf::mastereq::propagate(flipped, excited, 1.0, 1e-3);
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kPositivityViolation);
  }
}

}  // namespace
