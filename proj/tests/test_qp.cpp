#include <gtest/gtest.h>

#include <cmath>

#include "common/error.hpp"
#include "qp/ce_properties.hpp"
#include "qp/conditional.hpp"
#include "qp/measurement.hpp"
#include "qp/modular.hpp"
#include "qp/random.hpp"
#include "qp/spectral.hpp"
#include "rng/philox.hpp"

namespace {

using qf::Complex;
using qf::CVector;
using qf::DensityMatrix;
using qf::Operator;
using qf::StateVector;
using namespace qf::qp;

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Operator diag(std::initializer_list<double> d) {
  Operator m = Operator::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}
StateVector vec(std::initializer_list<Complex> a) {
  CVector v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (Complex x : a) v(i++) = x;
  return StateVector(v);
}

TEST(Spectral, DegenerateDiagonal) {
  const SpectralDecomposition s = spectral_decompose(diag({1, 1, 2}), 1e-8);
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-14);
  EXPECT_NEAR(s.projections[0].trace().real(), 2.0, 1e-12);
  EXPECT_NEAR(s.projections[1].trace().real(), 1.0, 1e-12);
}

TEST(Spectral, PauliXProjections) {
  const SpectralDecomposition s = spectral_decompose(pauli_x());
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  const Operator one = Operator::Identity(2, 2);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_LT((s.projections[0] - 0.5 * (one - pauli_x())).norm(), 1e-14);
  EXPECT_LT((s.projections[1] - 0.5 * (one + pauli_x())).norm(), 1e-14);
}

TEST(Spectral, IdentitySingleBlockAndReconstruction) {
  const SpectralDecomposition s = spectral_decompose(Operator::Identity(3, 3));
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_LT((s.projections[0] - Operator::Identity(3, 3)).norm(), 1e-14);
  qf::rng::PhiloxStream rng(5, 0);
  const Operator h = random_hermitian(5, rng);
  EXPECT_LT((spectral_decompose(h).reconstruct() - h).norm(), 1e-12);
}

TEST(Born, SymmetricEigenstateAndHandComputed) {
  const SpectralDecomposition z = spectral_decompose(pauli_z());
  const double r = 1.0 / std::sqrt(2.0);
  auto p = born_probabilities(z, vec({r, r}));
  EXPECT_NEAR(p[0].probability, 0.5, 1e-15);
  EXPECT_NEAR(p[1].probability, 0.5, 1e-15);
  p = born_probabilities(z, vec({1, 0}));
  EXPECT_NEAR(p[1].probability, 1.0, 1e-15);  // eigenvalue +1
  EXPECT_NEAR(p[0].probability, 0.0, 1e-15);
  p = born_probabilities(z, vec({0.6, 0.8}));
  EXPECT_NEAR(p[1].probability, 0.36, 1e-15);
  EXPECT_NEAR(p[0].probability, 0.64, 1e-15);
}

TEST(Projection, CollapseAndOrthogonalOutcome) {
  const Operator p0 = diag({1, 0});
  const double r = 1.0 / std::sqrt(2.0);
  const StateVector post = project_postulate(vec({r, r}), p0);
  EXPECT_NEAR(std::abs(post.amplitudes()(0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(post.amplitudes()(1)), 0.0, 1e-15);
  const StateVector unchanged = project_postulate(vec({1, 0}), p0);
  EXPECT_NEAR(std::abs(unchanged.amplitudes()(0)), 1.0, 1e-15);
  try {
    project_postulate(vec({0, 1}), p0);
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kZeroProbabilityOutcome);
  }
}

TEST(Compatibility, Examples) {
  const Operator z = pauli_z(), x = pauli_x(), one = Operator::Identity(2, 2);
  EXPECT_TRUE(compatible(z, z * z, 1e-12));
  EXPECT_FALSE(compatible(x, z, 1e-12));
  EXPECT_TRUE(compatible(qf::kron(z, one), qf::kron(one, x), 1e-12));
}

TEST(ProjectionLemma, ForcedAndVacuousCases) {
  EXPECT_TRUE(check_projection_commute_lemma(diag({1, 0, 1}), diag({1, 1, 0}), 1e-12));
  qf::rng::PhiloxStream rng(3, 1);
  const Operator u = random_unitary(3, rng);
  const Operator p = u * diag({1, 0, 0}) * u.adjoint();
  const Operator q_orth = u * diag({0, 1, 0}) * u.adjoint();
  EXPECT_TRUE(check_projection_commute_lemma(p, q_orth, 1e-12));
  EXPECT_TRUE(check_projection_commute_lemma(p, p, 1e-12));
  const Operator generic = random_projection(3, 1, rng);
  EXPECT_TRUE(check_projection_commute_lemma(p, generic, 1e-12));
}

TEST(ConditionalExpectation, IdentityOnAlgebraAndUnit) {
  qf::rng::PhiloxStream rng(8, 0);
  const QPState state(random_density(4, rng));
  const AlgebraSpec alg = random_algebra(4, rng);
  const ConditionalExpectation ce(alg, state);
  const Operator b = random_algebra_element(alg, rng);
  EXPECT_LT((ce(b) - b).norm(), 1e-12);
  EXPECT_LT((ce(Operator::Identity(4, 4)) - Operator::Identity(4, 4)).norm(), 1e-12);
}

TEST(ConditionalExpectation, ProductStateBlockTrace) {
  Operator rho1(2, 2), rho2(2, 2);
  rho1 << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  rho2 << 0.4, Complex(0.15, -0.05), Complex(0.15, 0.05), 0.6;
  const QPState state{DensityMatrix(qf::kron(rho1, rho2))};
  const Operator one = Operator::Identity(2, 2);
  const AlgebraSpec alg(std::vector<Operator>{qf::kron(diag({1, 0}), one), qf::kron(diag({0, 1}), one)});
  const Operator a = qf::kron(one, pauli_x());
  // tr(rho2 X) = 2 Re rho2(0,1) = 0.3.
  EXPECT_LT((conditional_expectation(a, alg, state).value - 0.3 * Operator::Identity(4, 4)).norm(), 1e-12);
}

TEST(ConditionalExpectation, RejectsOutsideCommutant) {
  const QPState state{DensityMatrix::maximally_mixed(2)};
  const AlgebraSpec alg = AlgebraSpec::from_spectral(spectral_decompose(pauli_z()));
  try {
    ConditionalExpectation(alg, state)(pauli_x());
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kIncompatibleObservable);
  }
}

TEST(ConditionalExpectation, AxiomsOnRandomInstances) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    qf::rng::PhiloxStream rng(99, i);
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(i % 5);
    const QPState state(random_density(d, rng));
    const AlgebraSpec alg = random_algebra(d, rng);
    const ConditionalExpectation ce(alg, state);
    const CePropertyReport r = check_ce_properties(
        [&ce](const Operator& a) { return ce(a); }, alg, state,
        [&alg](qf::rng::PhiloxStream& g) { return random_commutant_element(alg, g); }, rng, 6);
    EXPECT_TRUE(r.pass(1e-10)) << "instance " << i << " worst " << r.worst();
    EXPECT_GE(r.cp_min_eig, -1e-10);
    EXPECT_GE(r.least_squares_min_eig, -1e-10);
    EXPECT_GE(r.scalar_least_squares_gap, -1e-10);
  }
}

TEST(Covariance, Examples) {
  const QPState mixed{DensityMatrix::maximally_mixed(2)};
  const Operator one = Operator::Identity(2, 2);
  EXPECT_NEAR(std::abs(covariance(one, one, mixed)), 0.0, 1e-15);
  EXPECT_NEAR(covariance(pauli_z(), pauli_z(), mixed).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(covariance(pauli_z(), one, mixed)), 0.0, 1e-15);
}

TEST(Covariance, ConditionalVanishesOnAlgebraAndIsInvariant) {
  qf::rng::PhiloxStream rng(12, 4);
  const QPState state(random_density(3, rng));
  const AlgebraSpec alg = random_algebra(3, rng);
  const ConditionalExpectation ce(alg, state);
  const Operator b1 = random_algebra_element(alg, rng), b2 = random_algebra_element(alg, rng);
  EXPECT_LT(conditional_covariance(b1, b2, ce).norm(), 1e-12);
  const Operator x = random_commutant_element(alg, rng);
  const Operator p0 = alg.projections().front();
  EXPECT_LT((conditional_covariance(x + p0, x + p0, ce) - conditional_covariance(x, x, ce)).norm(),
            1e-12);
}

TEST(Covariance, DecompositionDim3) {
  qf::rng::PhiloxStream rng(13, 0);
  const QPState state(random_density(3, rng));
  const AlgebraSpec alg = random_algebra(3, rng);
  const ConditionalExpectation ce(alg, state);
  const Operator x = random_commutant_element(alg, rng), y = random_commutant_element(alg, rng);
  const Operator one = Operator::Identity(3, 3);
  const Operator ex = ce(x) - state.expectation(x) * one;
  const Operator ey = ce(y) - state.expectation(y) * one;
  const Complex rhs = state.expectation(conditional_covariance(x, y, ce)) + state.expectation(ex.adjoint() * ey);
  EXPECT_LT(std::abs(covariance(x, y, state) - rhs), 1e-12);
}

TEST(Modular, TracialFixedPointAndDiagonal) {
  qf::rng::PhiloxStream rng(21, 0);
  const Operator x = random_ginibre(3, rng);
  const QPState tracial{DensityMatrix::maximally_mixed(3)};
  EXPECT_LT((modular_map(tracial, x) - x).norm(), 1e-12);
  const double p = 0.3;
  const QPState s{DensityMatrix(diag({p, 1 - p}))};
  Operator e01 = Operator::Zero(2, 2);
  e01(0, 1) = 1.0;
  EXPECT_LT((modular_map(s, e01) - (p / (1 - p)) * e01).norm(), 1e-12);
  EXPECT_LT((modular_map(s, s.rho()) - s.rho()).norm(), 1e-12);
  EXPECT_THROW(modular_map(QPState{DensityMatrix(diag({1, 0}))}, e01), qf::Error);
}

TEST(Modular, GroupPhase) {
  const double p = 0.3, t = 0.7;
  const QPState s{DensityMatrix(diag({p, 1 - p}))};
  Operator e01 = Operator::Zero(2, 2);
  e01(0, 1) = 1.0;
  const Complex phase = std::exp(Complex(0.0, t * std::log(p / (1 - p))));
  EXPECT_LT((modular_group(s, t, e01) - phase * e01).norm(), 1e-12);
  EXPECT_LT((modular_group(s, 0.0, e01) - e01).norm(), 1e-14);
}

TEST(Takesaki, CommutingTrivialAndCounterexample) {
  const std::vector<double> ts{0.1, 0.5, 1.0, 2.0, 5.0};
  const AlgebraSpec z_alg = AlgebraSpec::from_spectral(spectral_decompose(pauli_z()));
  const QPState diag_state{DensityMatrix(diag({0.3, 0.7}))};
  EXPECT_TRUE(takesaki_check(diag_state, z_alg, ts, 1e-10).invariant);
  EXPECT_TRUE(takesaki_check(diag_state, AlgebraSpec::trivial(2), ts, 1e-10).invariant);
  const AlgebraSpec x_alg = AlgebraSpec::from_spectral(spectral_decompose(pauli_x()));
  const TakesakiReport bad = takesaki_check(diag_state, x_alg, ts, 1e-10);
  EXPECT_FALSE(bad.invariant);
  EXPECT_GT(bad.max_distance, 1e-3);
}

}  // namespace
