#pragma once

#include <optional>
#include <string>

#include "ito/expr.hpp"

namespace qf::ito {

// The quantum Ito table, row * column:
//   dB.dB* = dt, dB.dL = dB, dL.dB* = dB*, dL.dL = dL, everything else 0.
// Returns nullopt for a zero entry.
std::optional<Increment> table_product(Increment row, Increment column);

Expr ito_table(Increment row, Increment column);

// A pair is out of Wick order when an annihilation part (dB or dL) stands
// to the left of a creation part (dB* or dL).
bool out_of_wick_order(Increment left, Increment right);

// The 4x4 table as plain text, rows and columns ordered dt, dB, dB*, dL.
std::string render_table();

struct QuadratureReport {
  Expr dq_dq;
  Expr dp_dp;
  Expr dq_dp;
  Expr dp_dq;
  Expr commutator;  // dQ.dP - dP.dQ
};

QuadratureReport quadrature_pair_commutator_check();

// Compares (x.y).z with x.(y.z) over all 64 fundamental triples; returns the
// number of mismatches.
int associativity_mismatches();

}  // namespace qf::ito
