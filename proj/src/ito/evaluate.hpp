#pragma once

#include <map>
#include <optional>
#include <string>

#include "common/linalg.hpp"
#include "ito/expr.hpp"

namespace qf::ito {

using SymbolBindings = std::map<std::string, Operator>;
using ParamBindings = std::map<std::string, double>;
// Keyed by increment; nullopt holds the increment-free part.
using NumericCoefficients = std::map<std::optional<Increment>, Operator>;

// Simplifies `expr` and multiplies the bound matrices of each term in word
// order (X* binds to the adjoint of X). Throws UnboundSymbol for a missing
// symbol or parameter and DimensionMismatch if the bound matrices differ in
// size. `dim` sizes the identity for symbol-free terms when no symbol is
// bound.
NumericCoefficients evaluate_numeric(const Expr& expr,
                                     const SymbolBindings& symbols,
                                     const ParamBindings& params = {},
                                     std::optional<Eigen::Index> dim = std::nullopt);

}  // namespace qf::ito
