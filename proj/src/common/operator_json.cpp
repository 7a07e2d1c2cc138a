#include "common/operator_json.hpp"

#include "common/error.hpp"

namespace qf {

using nlohmann::json;

json operator_to_json(const Operator& a) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json rrow = json::array();
    json irow = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      rrow.push_back(a(i, j).real());
      irow.push_back(a(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

double as_number(const json& v, const char* what) {
  if (!v.is_number()) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + ": expected number");
  }
  return v.get<double>();
}

}  // namespace

Operator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) {
    fail(ErrorCode::kInvalidArgument,
         "operator JSON must be an object with \"re\" (and optional \"im\")");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "re" && key != "im") {
      fail(ErrorCode::kInvalidArgument, "operator JSON: unknown key '" + key + "'");
    }
  }
  const json& re = j.at("re");
  if (!re.is_array() || re.empty()) {
    fail(ErrorCode::kInvalidArgument, "operator JSON: \"re\" must be a non-empty array");
  }
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = static_cast<Eigen::Index>(re.at(0).size());
  Operator out = Operator::Zero(rows, cols);
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != rows)) {
    fail(ErrorCode::kDimensionMismatch, "operator JSON: re/im shape mismatch");
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& rrow = re.at(r);
    if (!rrow.is_array() || static_cast<Eigen::Index>(rrow.size()) != cols) {
      fail(ErrorCode::kDimensionMismatch, "operator JSON: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      double imag = 0.0;
      if (im) {
        const json& irow = im->at(r);
        if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != cols) {
          fail(ErrorCode::kDimensionMismatch, "operator JSON: re/im shape mismatch");
        }
        imag = as_number(irow.at(c), "operator JSON im");
      }
      out(r, c) = Complex(as_number(rrow.at(c), "operator JSON re"), imag);
    }
  }
  return out;
}

json vector_to_json(const CVector& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.at("re").is_array()) {
    fail(ErrorCode::kInvalidArgument,
         "vector JSON must be an object with a \"re\" array");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "re" && key != "im") {
      fail(ErrorCode::kInvalidArgument, "vector JSON: unknown key '" + key + "'");
    }
  }
  const json& re = j.at("re");
  CVector out(static_cast<Eigen::Index>(re.size()));
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || im->size() != re.size())) {
    fail(ErrorCode::kDimensionMismatch, "vector JSON: re/im length mismatch");
  }
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double imag = im ? as_number(im->at(i), "vector JSON im") : 0.0;
    out(static_cast<Eigen::Index>(i)) =
        Complex(as_number(re.at(i), "vector JSON re"), imag);
  }
  return out;
}

}  // namespace qf
