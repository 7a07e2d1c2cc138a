#pragma once

#include <span>

#include "common/linalg.hpp"
#include "slh/model.hpp"

namespace qf::belavkin {

struct NondemolitionReport {
  double max_residual = 0.0;  // max ||[j_t(X), Y_out(s)]|| (spectral norm)
  double error_bound = 0.0;   // a priori bound on the same quantity
  int slots = 0;
  double slot_width = 0.0;
  double worst_s = 0.0;
  double worst_t = 0.0;
};

/*!
 * Checks [j_t(X), Y_out(s)] = 0 for t > s on a repeat-interaction
 * truncation of the field.
 *
 * The window [0, t_final] is cut into `slots` slots of width D, each carrying
 * one field qubit in its ground state. Slot k acts by exp(G_k) with
 *
 *   G_k = sqrt(D) (L (x) s+_k - L* (x) s-_k) - i D H,
 *
 * a partial slot of fraction f by exp(f G_k). The input quadrature is
 * Y_in(s) = sqrt(D) sum_k w_k(s) sx_k, with w_k the covered fraction of slot k.
 * Y_out(s) = U(s)* Y_in(s) U(s) and j_t(X) = U(t)* X U(t).
 *
 * In the continuum limit the commutator vanishes. On the truncation it is
 * nonzero only while s is inside a slot, and is bounded by
 * 4 f (1 - f) sqrt(D) ||X|| (2 sqrt(D) ||L|| + D ||H||).
 *
 * Throws InvalidArgument unless every s is below every t and both lie in
 * [0, t_final]; TruncationTooCoarse if the bound exceeds `tolerance`.
 */
NondemolitionReport nondemolition_check(const slh::SLHModel& model,
                                        const Operator& x,
                                        std::span<const double> t_grid,
                                        std::span<const double> s_grid,
                                        int slots, double t_final,
                                        double tolerance);

}  // namespace qf::belavkin
