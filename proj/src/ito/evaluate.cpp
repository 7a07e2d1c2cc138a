#include "ito/evaluate.hpp"

#include <cmath>

#include "common/error.hpp"

namespace qf::ito {

NumericCoefficients evaluate_numeric(const Expr& expr,
                                     const SymbolBindings& symbols,
                                     const ParamBindings& params,
                                     std::optional<Eigen::Index> dim) {
  Eigen::Index d = dim.value_or(symbols.empty() ? 1 : symbols.begin()->second.rows());
  for (const auto& [name, m] : symbols) {
    if (m.rows() != d || m.cols() != d) {
      fail(ErrorCode::kDimensionMismatch, "evaluate_numeric: binding '" + name + "' has the wrong shape");
    }
  }

  NumericCoefficients out;
  const Expr simplified = simplify(expr);
  for (const Monomial& term : simplified.terms()) {
    Complex scale = term.weight;
    for (const auto& [name, half_powers] : term.params) {
      const auto it = params.find(name);
      if (it == params.end()) {
        fail(ErrorCode::kUnboundSymbol, "evaluate_numeric: parameter $" + name + " is unbound");
      }
      scale *= std::pow(it->second, 0.5 * half_powers);
    }
    Operator product = identity(d);
    for (const Symbol& s : term.word) {
      const auto it = symbols.find(s.name);
      if (it == symbols.end()) {
        fail(ErrorCode::kUnboundSymbol, "evaluate_numeric: symbol " + s.name + " is unbound");
      }
      product = s.adjoint ? Operator(product * it->second.adjoint())
                          : Operator(product * it->second);
    }
    auto [slot, inserted] = out.try_emplace(term.increment(), Operator::Zero(d, d));
    slot->second += scale * product;
  }
  return out;
}

}  // namespace qf::ito
