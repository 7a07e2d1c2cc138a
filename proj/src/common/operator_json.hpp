#pragma once

#include <json.hpp>

#include "common/linalg.hpp"

namespace qf {

// Operators serialize as {"re": [[...], ...], "im": [[...], ...]}, row-major
// nested arrays of doubles. Doubles are written with round-trip precision so
// from_json(to_json(A)) == A bit for bit.
nlohmann::json operator_to_json(const Operator& a);
Operator operator_from_json(const nlohmann::json& j);

// Vectors use the same layout with flat arrays.
nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

}  // namespace qf
