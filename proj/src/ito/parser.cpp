#include "ito/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "common/error.hpp"

namespace qf::ito {

Expr poisson_increment(const std::string& nu) {
  const Expr root = Expr::param(nu, 1);
  return Expr::increment(Increment::kDLambda) +
         raw_product(root, Expr::increment(Increment::kDBDag)) +
         raw_product(root, Expr::increment(Increment::kDB)) +
         raw_product(Expr::param(nu, 2), Expr::increment(Increment::kDt));
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    skip_ws();
    if (at_end()) error("expression");
    Expr out;
    bool first = true;
    while (true) {
      skip_ws();
      Complex sign(1.0, 0.0);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        error("'+', '-' or end of input");
      }
      out = out + parse_term() * sign;
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void error(const std::string& expected) const {
    const std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
    throw SyntaxError(pos_, expected,
                      "syntax error at offset " + std::to_string(pos_) + ": expected " +
                          expected + ", found " + found);
  }

  void expect(char c) {
    if (peek() != c) error(std::string("'") + c + "'");
    ++pos_;
  }

  bool at_number() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))));
  }

  bool at_complex() const { return peek() == '('; }

  double parse_number() {
    if (!at_number()) error("number");
    const char* begin = s_.data() + pos_;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), value);
    if (ec != std::errc()) error("number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  Complex parse_complex() {
    expect('(');
    skip_ws();
    double re_sign = 1.0;
    if (peek() == '-') {
      re_sign = -1.0;
      ++pos_;
    }
    const double re = re_sign * parse_number();
    skip_ws();
    if (peek() != '+' && peek() != '-') error("'+' or '-'");
    const double im_sign = peek() == '-' ? -1.0 : 1.0;
    ++pos_;
    skip_ws();
    const double im = im_sign * parse_number();
    expect('i');
    skip_ws();
    expect(')');
    return {re, im};
  }

  Expr parse_term() {
    std::optional<Complex> scalar;
    if (at_number()) {
      scalar = Complex(parse_number(), 0.0);
    } else if (at_complex()) {
      scalar = parse_complex();
    }
    if (scalar) {
      const std::size_t before = pos_;
      skip_ws();
      if (at_end() || peek() == '+' || peek() == '-') return Expr::scalar(*scalar);
      if (pos_ == before) error("whitespace, '+', '-' or end of input");
    }
    Expr term = parse_factor();
    while (peek() == '.') {
      ++pos_;
      term = raw_product(term, parse_factor());
    }
    return scalar ? term * *scalar : term;
  }

  std::string parse_ident() {
    if (!ident_start(peek())) error("identifier");
    const std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr parse_param() {
    expect('$');
    const std::string name = parse_ident();
    int half_powers = 2;
    if (peek() == '^') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) error("integer exponent");
      int n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) n = 10 * n + (s_[pos_++] - '0');
      half_powers = 2 * n;
      if (peek() == '/') {
        ++pos_;
        expect('2');
        half_powers = n;
      }
      if (half_powers == 0) error("positive exponent");
    }
    return Expr::param(name, half_powers);
  }

  Expr parse_factor() {
    if (peek() == '$') return parse_param();
    if (!ident_start(peek())) error("increment, symbol or parameter");
    const std::size_t start = pos_;
    const std::string name = parse_ident();
    if (name == "sqrt" && peek() == '(') {
      ++pos_;
      Expr p = parse_param();
      expect(')');
      // sqrt($nu) halves the default power of one.
      return Expr::param(p.terms().front().params.begin()->first,
                         p.terms().front().params.begin()->second / 2);
    }
    const bool star = peek() == '*';
    if (star) ++pos_;
    using enum Increment;
    const Expr db = Expr::increment(kDB);
    const Expr dbd = Expr::increment(kDBDag);
    auto plain = [&](Expr e) {
      if (star) {
        pos_ = start + name.size();
        error("'.', '+', '-' or end of input");
      }
      return e;
    };
    if (name == "dt") return plain(Expr::increment(kDt));
    if (name == "dB") return star ? dbd : db;
    if (name == "dL") return plain(Expr::increment(kDLambda));
    if (name == "dW" || name == "dQ") return plain(db + dbd);
    if (name == "dP") return plain(db * Complex(0.0, -1.0) + dbd * Complex(0.0, 1.0));
    if (name == "dN") return plain(poisson_increment());
    // d followed by one capital is reserved for increments.
    if (name.size() == 2 && name[0] == 'd' && std::isupper(static_cast<unsigned char>(name[1]))) {
      pos_ = start;
      error("one of dt, dB, dB*, dL, dW, dQ, dP, dN");
    }
    return Expr::symbol(name, star);
  }
};

}  // namespace

Expr parse_ito_expr(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace qf::ito
