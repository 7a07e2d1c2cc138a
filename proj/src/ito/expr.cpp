#include "ito/expr.hpp"

#include <algorithm>

#include "common/csv.hpp"
#include "ito/table.hpp"

namespace qf::ito {

const char* increment_name(Increment inc) {
  switch (inc) {
    case Increment::kDt: return "dt";
    case Increment::kDB: return "dB";
    case Increment::kDBDag: return "dB*";
    case Increment::kDLambda: return "dL";
  }
  return "?";
}

Increment increment_adjoint(Increment inc) {
  switch (inc) {
    case Increment::kDB: return Increment::kDBDag;
    case Increment::kDBDag: return Increment::kDB;
    default: return inc;
  }
}

std::optional<Increment> Monomial::increment() const {
  if (increments.empty()) return std::nullopt;
  return increments.front();
}

namespace {

bool same_shape(const Monomial& a, const Monomial& b) {
  return a.increments == b.increments && a.word == b.word && a.params == b.params;
}

// Orders by increment, then word, then params.
bool canonical_less(const Monomial& a, const Monomial& b) {
  if (a.increments.size() != b.increments.size()) {
    return a.increments.size() < b.increments.size();
  }
  if (a.increments != b.increments) {
    if (a.increments.empty()) return true;
    if (b.increments.empty()) return false;
    return a.increments < b.increments;
  }
  if (a.word != b.word) return a.word < b.word;
  return a.params < b.params;
}

// Sorts, merges like terms and drops exact zeros.
std::vector<Monomial> normalize(std::vector<Monomial> terms) {
  std::stable_sort(terms.begin(), terms.end(), canonical_less);
  std::vector<Monomial> out;
  for (auto& t : terms) {
    if (!out.empty() && same_shape(out.back(), t)) {
      out.back().weight += t.weight;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.weight == Complex(0.0, 0.0); });
  return out;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  m.weight *= b.weight;
  for (const auto& [name, power] : b.params) m.params[name] += power;
  m.word.insert(m.word.end(), b.word.begin(), b.word.end());
  m.increments.insert(m.increments.end(), b.increments.begin(), b.increments.end());
  return m;
}

std::string param_text(const std::string& name, int half_powers) {
  const std::string p = "$" + name;
  if (half_powers == 1) return "sqrt(" + p + ")";
  if (half_powers == 2) return p;
  if (half_powers % 2 == 0) return p + "^" + std::to_string(half_powers / 2);
  return p + "^" + std::to_string(half_powers) + "/2";
}

std::string body_text(const Monomial& m) {
  std::vector<std::string> parts;
  for (const auto& [name, power] : m.params) {
    if (power != 0) parts.push_back(param_text(name, power));
  }
  for (const Symbol& s : m.word) parts.push_back(s.name + (s.adjoint ? "*" : ""));
  for (Increment inc : m.increments) parts.push_back(increment_name(inc));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '.';
    out += parts[i];
  }
  return out;
}

std::string complex_text(Complex w) {
  const std::string im = format_double(std::abs(w.imag()));
  return "(" + format_double(w.real()) + (w.imag() < 0 ? "-" : "+") + im + "i)";
}

}  // namespace

Expr Expr::scalar(Complex c) {
  if (c == Complex(0.0, 0.0)) return Expr();
  Monomial m;
  m.weight = c;
  return Expr({m});
}

Expr Expr::increment(Increment inc) {
  Monomial m;
  m.increments.push_back(inc);
  return Expr({m});
}

Expr Expr::symbol(std::string name, bool adjoint) {
  Monomial m;
  m.word.push_back({std::move(name), adjoint});
  return Expr({m});
}

Expr Expr::param(std::string name, int half_powers) {
  Monomial m;
  m.params[std::move(name)] = half_powers;
  return Expr({m});
}

bool Expr::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Monomial& t = terms_[i];
    if (t.increments.size() > 1 || t.weight == Complex(0.0, 0.0)) return false;
    for (const auto& [name, power] : t.params) {
      if (power == 0) return false;
    }
    if (i > 0 && !canonical_less(terms_[i - 1], t)) return false;
  }
  return true;
}

Expr Expr::operator+(const Expr& other) const {
  std::vector<Monomial> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return Expr(normalize(std::move(terms)));
}

Expr Expr::operator-(const Expr& other) const { return *this + other * Complex(-1.0, 0.0); }

Expr Expr::operator*(Complex c) const {
  std::vector<Monomial> terms = terms_;
  for (auto& t : terms) t.weight *= c;
  return Expr(normalize(std::move(terms)));
}

Expr raw_product(const Expr& x, const Expr& y) {
  std::vector<Monomial> terms;
  terms.reserve(x.terms().size() * y.terms().size());
  for (const Monomial& a : x.terms()) {
    for (const Monomial& b : y.terms()) terms.push_back(multiply(a, b));
  }
  return Expr(normalize(std::move(terms)));
}

Expr simplify(const Expr& x) {
  std::vector<Monomial> terms;
  for (Monomial m : x.terms()) {
    if (m.increments.size() > 1) {
      // Left fold through the table; any zero entry kills the monomial.
      std::optional<Increment> acc = m.increments.front();
      for (std::size_t i = 1; i < m.increments.size() && acc; ++i) {
        acc = table_product(*acc, m.increments[i]);
      }
      if (!acc) continue;
      m.increments = {*acc};
    }
    std::erase_if(m.params, [](const auto& kv) { return kv.second == 0; });
    terms.push_back(std::move(m));
  }
  return Expr(normalize(std::move(terms)));
}

Expr ito_product(const Expr& x, const Expr& y) {
  return simplify(raw_product(x, y));
}

Expr adjoint(const Expr& x) {
  std::vector<Monomial> terms;
  for (Monomial m : x.terms()) {
    m.weight = std::conj(m.weight);
    std::reverse(m.word.begin(), m.word.end());
    for (Symbol& s : m.word) s.adjoint = !s.adjoint;
    std::reverse(m.increments.begin(), m.increments.end());
    for (Increment& inc : m.increments) inc = increment_adjoint(inc);
    terms.push_back(std::move(m));
  }
  return Expr(normalize(std::move(terms)));
}

bool equal(const Expr& x, const Expr& y) {
  const Expr a = simplify(x);
  const Expr b = simplify(y);
  if (a.terms().size() != b.terms().size()) return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    const Monomial& s = a.terms()[i];
    const Monomial& t = b.terms()[i];
    if (!same_shape(s, t) || s.weight != t.weight) return false;
  }
  return true;
}

std::string to_string(const Expr& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Monomial& m : x.terms()) {
    const std::string body = body_text(m);
    const Complex w = m.weight;
    std::string scalar;
    bool negative = false;
    if (w.imag() == 0.0) {
      negative = w.real() < 0.0;
      const double mag = std::abs(w.real());
      if (mag != 1.0 || body.empty()) scalar = format_double(mag);
    } else {
      scalar = complex_text(w);
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += scalar;
    if (!scalar.empty() && !body.empty()) out += ' ';
    out += body;
    first = false;
  }
  return out;
}

}  // namespace qf::ito
