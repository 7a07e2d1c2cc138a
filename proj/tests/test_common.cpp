#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/linalg.hpp"
#include "common/operator_json.hpp"
#include "common/steps.hpp"
#include "rng/philox.hpp"

namespace {

using qf::Complex;
using qf::Operator;
using qf::rng::PhiloxCounter;
using qf::rng::PhiloxStream;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const PhiloxCounter out = qf::rng::philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const PhiloxCounter out = qf::rng::philox4x32_10(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const PhiloxCounter out = qf::rng::philox4x32_10(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
  PhiloxStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Philox, UniformInOpenUnitInterval) {
  PhiloxStream s(1, 0);
  double sum = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Var(U) = 1/12.
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Philox, NormalMomentsWithinFiveStandardErrors) {
  PhiloxStream s(2, 9);
  constexpr int n = 200000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
  }
  m1 /= n;
  m2 /= n;
  EXPECT_NEAR(m1, 0.0, 5.0 / std::sqrt(n));
  // Var(Z^2) = 2.
  EXPECT_NEAR(m2, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Philox, SplitChildrenDiffer) {
  const PhiloxStream parent(11, 0);
  PhiloxStream c1 = parent.split(1), c1b = parent.split(1), c2 = parent.split(2);
  const std::uint64_t x = c1.next_u64();
  EXPECT_EQ(x, c1b.next_u64());
  EXPECT_NE(x, c2.next_u64());
}

TEST(Linalg, CommutatorOfPauliMatrices) {
  Operator x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -qf::kI, qf::kI, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT(qf::norm(qf::commutator(x, y) - 2.0 * qf::kI * z), 1e-15);
  EXPECT_LT(qf::norm(qf::anticommutator(x, y)), 1e-15);
}

TEST(Linalg, KronDimensionsAndMixedProduct) {
  Operator a = Operator::Random(2, 2), b = Operator::Random(3, 3);
  Operator c = Operator::Random(2, 2), d = Operator::Random(3, 3);
  const Operator lhs = qf::kron(a, b) * qf::kron(c, d);
  EXPECT_EQ(lhs.rows(), 6);
  EXPECT_LT(qf::norm(lhs - qf::kron(a * c, b * d)), 1e-12);
}

TEST(Linalg, HermitianEigenReconstructs) {
  Operator g = Operator::Random(4, 4);
  const Operator h = g + g.adjoint();
  const qf::HermitianEigen e = qf::hermitian_eig(h);
  for (int i = 1; i < 4; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  const Operator back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LT(qf::norm(back - h), 1e-12);
}

TEST(Linalg, StateVectorNormalizesAndRejectsZero) {
  qf::CVector v(2);
  v << 3.0, 4.0;
  EXPECT_NEAR(qf::StateVector(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(qf::StateVector(qf::CVector::Zero(2)), qf::Error);
  EXPECT_THROW(qf::StateVector::basis(2, 2), qf::Error);
}

TEST(Linalg, DensityMatrixValidation) {
  Operator bad_trace = Operator::Identity(2, 2);
  EXPECT_THROW(qf::DensityMatrix{bad_trace}, qf::Error);
  Operator negative(2, 2);
  negative << 1.2, 0, 0, -0.2;
  EXPECT_THROW(qf::DensityMatrix{negative}, qf::Error);
  Operator non_hermitian(2, 2);
  non_hermitian << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(qf::DensityMatrix{non_hermitian}, qf::Error);
  const qf::DensityMatrix mixed = qf::DensityMatrix::maximally_mixed(3);
  EXPECT_NEAR(mixed.expectation(Operator::Identity(3, 3)).real(), 1.0, 1e-15);
}

TEST(Csv, FormatRoundTripsExactly) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::strtod(qf::format_double(x).c_str(), nullptr), x);
  }
}

TEST(Csv, RowsAndWidthCheck) {
  qf::CsvWriter w({"t", "x"});
  const double row[] = {0.5, 2.0};
  w.add_row(row);
  EXPECT_EQ(w.str(), "t,x\n0.5,2\n");
  const double wide[] = {1.0, 2.0, 3.0};
  EXPECT_THROW(w.add_row(wide), qf::Error);
}

TEST(OperatorJson, RoundTrip) {
  Operator a(2, 2);
  a << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-0.5, 0.25);
  EXPECT_EQ(qf::operator_from_json(qf::operator_to_json(a)), a);
}

TEST(Steps, CountAndRejection) {
  EXPECT_EQ(qf::step_count(3.0, 1e-3), 3000u);
  EXPECT_THROW(qf::step_count(1.0, 0.3), qf::Error);
  EXPECT_THROW(qf::step_count(1.0, -0.1), qf::Error);
}

}  // namespace
