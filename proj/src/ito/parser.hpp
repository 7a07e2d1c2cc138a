#pragma once

#include <string_view>

#include "ito/expr.hpp"

namespace qf::ito {

/*!
 * Parses an increment expression.
 *
 *   expr    := "0" | [sign] term (sign term)*
 *   term    := scalar | [scalar] factor ("." factor)*
 *   scalar  := number | "(" number ("+" | "-") number "i" ")"
 *   factor  := increment | ident ["*"] | param
 *   param   := "$" ident ["^" int ["/2"]] | "sqrt(" "$" ident ")"
 *   increment := dt | dB | dB* | dL | dW | dQ | dP | dN
 *
 * dW and dQ expand to dB + dB*, dP to -i dB + i dB*, and dN to
 * dL + sqrt($nu) dB* + sqrt($nu) dB + $nu dt. A scalar followed by a factor
 * must be separated from it by whitespace. Increment products are kept
 * unresolved; call simplify() for the canonical form.
 *
 * Throws SyntaxError with the byte offset and the expected tokens.
 */
Expr parse_ito_expr(std::string_view text);

// dN with intensity parameter `nu`.
Expr poisson_increment(const std::string& nu = "nu");

}  // namespace qf::ito
