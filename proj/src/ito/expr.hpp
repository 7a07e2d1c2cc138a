#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/linalg.hpp"

namespace qf::ito {

// Fundamental increments, in canonical order. dW, dQ, dP and dN are aliases
// that the parser expands into these before any product is formed.
enum class Increment : int { kDt = 0, kDB = 1, kDBDag = 2, kDLambda = 3 };

inline constexpr Increment kAllIncrements[] = {
    Increment::kDt, Increment::kDB, Increment::kDBDag, Increment::kDLambda};

const char* increment_name(Increment inc);  // "dt", "dB", "dB*", "dL"
Increment increment_adjoint(Increment inc);

struct Symbol {
  std::string name;
  bool adjoint = false;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/*!
 * weight * params * word * increments.
 *
 * `params` maps commuting scalar parameter names to half-integer powers
 * (1 means sqrt($nu), 2 means $nu). `word` is an ordered product of
 * noncommuting coefficient symbols. Adapted coefficients commute with the
 * current increments, so only the relative order of increments matters.
 * A canonical monomial carries at most one increment.
 */
struct Monomial {
  Complex weight{1.0, 0.0};
  std::map<std::string, int> params;
  std::vector<Symbol> word;
  std::vector<Increment> increments;

  std::optional<Increment> increment() const;
};

class Expr {
 public:
  Expr() = default;
  explicit Expr(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

  static Expr scalar(Complex c);
  static Expr increment(Increment inc);
  static Expr symbol(std::string name, bool adjoint = false);
  static Expr param(std::string name, int half_powers);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // True when every term carries at most one increment and the terms are
  // sorted, merged and nonzero.
  bool is_canonical() const;

  Expr operator+(const Expr& other) const;
  Expr operator-(const Expr& other) const;
  Expr operator*(Complex c) const;

 private:
  std::vector<Monomial> terms_;
};

// Product without increment resolution: words and increment sequences are
// concatenated, left factor first.
Expr raw_product(const Expr& x, const Expr& y);

// Resolves every increment sequence via the Ito table, then merges like
// terms and drops exact zeros.
Expr simplify(const Expr& x);

// The resolved product of two increment expressions.
Expr ito_product(const Expr& x, const Expr& y);

Expr adjoint(const Expr& x);

// Symbolic equality of canonical forms; exact, no tolerance.
bool equal(const Expr& x, const Expr& y);

std::string to_string(const Expr& x);

}  // namespace qf::ito
