#pragma once

#include <span>

#include "common/linalg.hpp"
#include "qp/spectral.hpp"

namespace qf::qp {

inline constexpr double kEpsFaithful = 1e-10;

// Delta X = rho X rho^-1, so that <Y X*> = <X* Delta(Y)>.
// Throws NonFaithfulState if the smallest eigenvalue of rho is <= eps.
Operator modular_map(const QPState& state, const Operator& x,
                     double eps_faithful = kEpsFaithful);

// sigma_t(X) = rho^{it} X rho^{-it}
Operator modular_group(const QPState& state, double t, const Operator& x,
                       double eps_faithful = kEpsFaithful);

struct TakesakiReport {
  bool invariant = true;
  double max_distance = 0.0;  // max over (t, a) of dist(sigma_t(P_a), span{P})
  double worst_t = 0.0;
  std::size_t worst_block = 0;
};

TakesakiReport takesaki_check(const QPState& state, const AlgebraSpec& algebra,
                              std::span<const double> t_samples, double tol);

}  // namespace qf::qp
