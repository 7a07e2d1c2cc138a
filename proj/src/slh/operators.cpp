#include "slh/operators.hpp"

#include <charconv>
#include <cmath>

#include "common/error.hpp"
#include "common/operator_json.hpp"

namespace qf::slh {

Operator pauli_x() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Operator pauli_y() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Operator pauli_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Operator sigma_minus() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Operator sigma_plus() { return sigma_minus().adjoint(); }

Operator destroy(Eigen::Index dim) {
  Operator m = Operator::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return m;
}

Operator number(Eigen::Index dim) {
  Operator m = Operator::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

Operator named_atom(const std::string& text, Eigen::Index default_dim) {
  if (text == "pauli_x") return pauli_x();
  if (text == "pauli_y") return pauli_y();
  if (text == "pauli_z") return pauli_z();
  if (text == "sigma_minus") return sigma_minus();
  if (text == "sigma_plus") return sigma_plus();

  std::string name = text;
  Eigen::Index d = default_dim;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') {
      fail(ErrorCode::kInvalidArgument, "operator atom '" + text + "': missing ')'");
    }
    name = text.substr(0, open);
    const char* first = text.data() + open + 1;
    const char* last = text.data() + text.size() - 1;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value <= 0) {
      fail(ErrorCode::kInvalidArgument, "operator atom '" + text + "': bad dimension");
    }
    d = static_cast<Eigen::Index>(value);
  }
  if (d <= 0) {
    fail(ErrorCode::kInvalidArgument, "operator atom '" + text + "': dimension required");
  }
  if (name == "identity") return identity(d);
  if (name == "zero") return Operator::Zero(d, d);
  if (name == "destroy") return destroy(d);
  if (name == "number") return number(d);
  fail(ErrorCode::kInvalidArgument, "unknown operator atom '" + text + "'");
}

namespace {

Complex scale_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(ErrorCode::kInvalidArgument, "operator scale must be a number or [re, im]");
}

}  // namespace

Operator operator_from_spec(const nlohmann::json& spec, Eigen::Index dim) {
  Operator out;
  if (spec.is_string()) {
    out = named_atom(spec.get<std::string>(), dim);
  } else if (spec.is_array()) {
    if (spec.empty()) return Operator::Zero(dim, dim);
    out = Operator::Zero(dim, dim);
    for (const auto& term : spec) {
      const Operator t = operator_from_spec(term, dim);
      require_same_dim(out, t, "operator sum");
      out += t;
    }
  } else if (spec.is_object() && spec.contains("atom")) {
    for (const auto& [key, value] : spec.items()) {
      if (key != "atom" && key != "scale") {
        fail(ErrorCode::kInvalidArgument, "operator spec: unknown key '" + key + "'");
      }
    }
    if (!spec["atom"].is_string()) {
      fail(ErrorCode::kInvalidArgument, "operator spec: 'atom' must be a string");
    }
    out = named_atom(spec["atom"].get<std::string>(), dim);
    if (spec.contains("scale")) out *= scale_from_json(spec["scale"]);
  } else if (spec.is_object()) {
    out = operator_from_json(spec);
  } else {
    fail(ErrorCode::kInvalidArgument, "operator spec must be a string, object or array");
  }
  if (out.rows() != dim || out.cols() != dim) {
    fail(ErrorCode::kDimensionMismatch, "operator spec does not match the model dimension");
  }
  return out;
}

SLHModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, "model must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "dim" && key != "S" && key != "L" && key != "H") {
      fail(ErrorCode::kInvalidArgument, "model: unknown key '" + key + "'");
    }
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    fail(ErrorCode::kInvalidArgument, "model: 'dim' must be a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(j["dim"].get<long long>());
  auto field = [&](const char* key, const Operator& fallback) {
    return j.contains(key) ? operator_from_spec(j[key], dim) : fallback;
  };
  SLHModel model = make_model(field("S", identity(dim)),
                              field("L", Operator::Zero(dim, dim)),
                              field("H", Operator::Zero(dim, dim)));
  require_valid(model);
  return model;
}

nlohmann::json model_to_json(const SLHModel& model) {
  return {{"dim", model.dim()},
          {"S", operator_to_json(model.S)},
          {"L", operator_to_json(model.L)},
          {"H", operator_to_json(model.H)}};
}

}  // namespace qf::slh
