#pragma once

#include <json.hpp>
#include <string>

#include "common/linalg.hpp"
#include "slh/model.hpp"

namespace qf::slh {

// Qubit convention: basis index 0 is the ground state |g>, 1 is |e>.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator sigma_minus();  // |g><e|
Operator sigma_plus();   // |e><g|
Operator destroy(Eigen::Index dim);
Operator number(Eigen::Index dim);

/*!
 * Resolves a named atom: pauli_x, pauli_y, pauli_z, sigma_minus,
 * sigma_plus, identity(d), zero(d), destroy(d), number(d). The bare forms
 * identity, zero, destroy and number take `default_dim`. Throws
 * InvalidArgument for an unknown name.
 */
Operator named_atom(const std::string& text, Eigen::Index default_dim);

/*!
 * Operator specification as found in configs. One of
 *   - an atom name: "sigma_minus"
 *   - an explicit matrix: {"re": [[...]], "im": [[...]]}
 *   - a scaled atom: {"atom": "pauli_z", "scale": 0.5} where scale is a
 *     number or a [re, im] pair
 *   - an array of the above, summed.
 */
Operator operator_from_spec(const nlohmann::json& spec, Eigen::Index dim);

// {"dim": d, "S": spec, "L": spec, "H": spec}; S defaults to identity(d).
// Unknown keys are rejected.
SLHModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const SLHModel& model);

}  // namespace qf::slh
