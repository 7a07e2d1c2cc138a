#include <gtest/gtest.h>

#include "common/error.hpp"
#include "ito/evaluate.hpp"
#include "ito/expr.hpp"
#include "ito/parser.hpp"
#include "ito/table.hpp"

namespace {

using qf::Complex;
using qf::Operator;
using namespace qf::ito;

Expr simp(const char* text) { return simplify(parse_ito_expr(text)); }

TEST(ItoTable, AllSixteenEntries) {
  using I = Increment;
  struct Golden {
    I row, col;
    std::optional<I> product;
  };
  // Written out by hand, row-major over dt, dB, dB*, dL.
  const Golden goldens[] = {
      {I::kDt, I::kDt, {}},           {I::kDt, I::kDB, {}},
      {I::kDt, I::kDBDag, {}},        {I::kDt, I::kDLambda, {}},
      {I::kDB, I::kDt, {}},           {I::kDB, I::kDB, {}},
      {I::kDB, I::kDBDag, I::kDt},    {I::kDB, I::kDLambda, I::kDB},
      {I::kDBDag, I::kDt, {}},        {I::kDBDag, I::kDB, {}},
      {I::kDBDag, I::kDBDag, {}},     {I::kDBDag, I::kDLambda, {}},
      {I::kDLambda, I::kDt, {}},      {I::kDLambda, I::kDB, {}},
      {I::kDLambda, I::kDBDag, I::kDBDag}, {I::kDLambda, I::kDLambda, I::kDLambda},
  };
  for (const Golden& g : goldens) {
    EXPECT_EQ(table_product(g.row, g.col), g.product)
        << increment_name(g.row) << "." << increment_name(g.col);
    const Expr expected = g.product ? Expr::increment(*g.product) : Expr();
    EXPECT_TRUE(equal(ito_table(g.row, g.col), expected));
  }
}

TEST(ItoTable, NonzeroEntriesAreExactlyOutOfWickOrder) {
  for (Increment a : kAllIncrements) {
    for (Increment b : kAllIncrements) {
      if (table_product(a, b)) {
        EXPECT_TRUE(out_of_wick_order(a, b));
      }
    }
  }
  EXPECT_FALSE(out_of_wick_order(Increment::kDBDag, Increment::kDB));
}

TEST(ItoTable, PairExamples) {
  EXPECT_TRUE(equal(simp("dB.dB*"), simp("dt")));
  EXPECT_TRUE(simp("dB*.dB").empty());
  EXPECT_TRUE(equal(simp("dL.dL"), simp("dL")));
}

TEST(ItoTable, Associative) { EXPECT_EQ(associativity_mismatches(), 0); }

TEST(Quadratures, Identities) {
  EXPECT_TRUE(equal(simp("dQ.dQ"), simp("dt")));
  EXPECT_TRUE(equal(simp("dP.dP"), simp("dt")));
  EXPECT_TRUE(equal(simp("dQ.dP"), simp("(0+1i) dt")));
  EXPECT_TRUE(equal(simp("dQ.dP - dP.dQ"), simp("(0+2i) dt")));
  const QuadratureReport r = quadrature_pair_commutator_check();
  EXPECT_TRUE(equal(r.commutator, simp("(0+2i) dt")));
  EXPECT_TRUE(equal(simp("dW.dW"), simp("dt")));
  EXPECT_TRUE(simp("dW.dt").empty());
}

TEST(Quadratures, PoissonIsIdempotent) {
  EXPECT_TRUE(equal(simp("dN.dN"), simp("dN")));
  const Expr dn = poisson_increment();
  EXPECT_TRUE(equal(ito_product(dn, dn), simplify(dn)));
}

TEST(Parser, AliasesExpand) {
  EXPECT_TRUE(equal(simp("dQ"), simp("dB + dB*")));
  EXPECT_TRUE(equal(simp("dP"), simp("(0-1i) dB + (0+1i) dB*")));
  EXPECT_EQ(simp("L.dB* - L*.dB - (0.5+0i) L*.L.dt").terms().size(), 3u);
  EXPECT_TRUE(simp("0").empty());
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  try {
    parse_ito_expr("dB..dB");
    FAIL();
  } catch (const qf::SyntaxError& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_ito_expr("dB + ");
    FAIL();
  } catch (const qf::SyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_ito_expr("dX"), qf::SyntaxError);
}

TEST(Parser, SimplifiedFormIsCanonicalAndRoundTrips) {
  const Expr e = simp("L.dB* - L*.dB - (0.5+0i) L*.L.dt + dN.dN");
  EXPECT_TRUE(e.is_canonical());
  EXPECT_TRUE(equal(simplify(parse_ito_expr(to_string(e))), e));
}

TEST(Adjoint, SwapsCreationAndAnnihilation) {
  EXPECT_TRUE(equal(simplify(adjoint(simp("L.dB*"))), simp("L*.dB")));
  EXPECT_EQ(increment_adjoint(Increment::kDLambda), Increment::kDLambda);
}

TEST(Evaluate, SingleBinding) {
  Operator m(2, 2);
  m << 1, Complex(0, 2), 3, 4;
  const NumericCoefficients c = evaluate_numeric(simp("L.dB*"), {{"L", m}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.at(Increment::kDBDag), m);
}

TEST(Evaluate, HudsonParthasarathyDrift) {
  Operator m(2, 2), k(2, 2);
  m << 0, 1, 0, 0;
  k << 1, 0, 0, -1;
  const NumericCoefficients c = evaluate_numeric(simp("(-0.5+0i) L*.L.dt + (0-1i) H.dt"),
                                                 {{"L", m}, {"H", k}});
  const Operator expected = -(0.5 * m.adjoint() * m + qf::kI * k);
  EXPECT_LT((c.at(Increment::kDt) - expected).norm(), 1e-15);
}

TEST(Evaluate, ZeroAndUnbound) {
  EXPECT_TRUE(evaluate_numeric(simp("0"), {}, {}, 2).empty());
  try {
    evaluate_numeric(simp("L.dB"), {});
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kUnboundSymbol);
  }
}

TEST(Evaluate, ParametersScale) {
  const NumericCoefficients c = evaluate_numeric(simp("dN"), {}, {{"nu", 4.0}}, 1);
  EXPECT_NEAR(c.at(Increment::kDB)(0, 0).real(), 2.0, 1e-15);
  EXPECT_NEAR(c.at(Increment::kDt)(0, 0).real(), 4.0, 1e-15);
  EXPECT_NEAR(c.at(Increment::kDLambda)(0, 0).real(), 1.0, 1e-15);
}

}  // namespace
