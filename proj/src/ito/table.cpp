#include "ito/table.hpp"

#include <array>

namespace qf::ito {

std::optional<Increment> table_product(Increment row, Increment column) {
  using enum Increment;
  if (row == kDB && column == kDBDag) return kDt;
  if (row == kDB && column == kDLambda) return kDB;
  if (row == kDLambda && column == kDBDag) return kDBDag;
  if (row == kDLambda && column == kDLambda) return kDLambda;
  return std::nullopt;
}

Expr ito_table(Increment row, Increment column) {
  const auto entry = table_product(row, column);
  return entry ? Expr::increment(*entry) : Expr();
}

bool out_of_wick_order(Increment left, Increment right) {
  using enum Increment;
  const bool annihilates = left == kDB || left == kDLambda;
  const bool creates = right == kDBDag || right == kDLambda;
  return annihilates && creates;
}

std::string render_table() {
  constexpr int kWidth = 5;
  auto cell = [](std::string s) {
    s.resize(kWidth, ' ');
    return s;
  };
  std::string out = cell("x") + "|";
  for (Increment c : kAllIncrements) out += ' ' + cell(increment_name(c));
  out += '\n' + std::string(kWidth, '-') + '+' + std::string(4 * (kWidth + 1), '-') + '\n';
  for (Increment r : kAllIncrements) {
    out += cell(increment_name(r)) + "|";
    for (Increment c : kAllIncrements) {
      const auto entry = table_product(r, c);
      out += ' ' + cell(entry ? increment_name(*entry) : "0");
    }
    // Trim the trailing padding of the last cell.
    while (out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

QuadratureReport quadrature_pair_commutator_check() {
  const Expr db = Expr::increment(Increment::kDB);
  const Expr dbd = Expr::increment(Increment::kDBDag);
  const Expr dq = db + dbd;
  const Expr dp = db * Complex(0.0, -1.0) + dbd * Complex(0.0, 1.0);
  QuadratureReport r;
  r.dq_dq = ito_product(dq, dq);
  r.dp_dp = ito_product(dp, dp);
  r.dq_dp = ito_product(dq, dp);
  r.dp_dq = ito_product(dp, dq);
  r.commutator = r.dq_dp - r.dp_dq;
  return r;
}

int associativity_mismatches() {
  int mismatches = 0;
  for (Increment a : kAllIncrements) {
    for (Increment b : kAllIncrements) {
      for (Increment c : kAllIncrements) {
        const Expr x = Expr::increment(a);
        const Expr y = Expr::increment(b);
        const Expr z = Expr::increment(c);
        if (!equal(ito_product(ito_product(x, y), z),
                   ito_product(x, ito_product(y, z)))) {
          ++mismatches;
        }
      }
    }
  }
  return mismatches;
}

}  // namespace qf::ito
