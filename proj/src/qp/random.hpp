#pragma once

#include "common/linalg.hpp"
#include "qp/spectral.hpp"
#include "rng/philox.hpp"

namespace qf::qp {

// Entries i.i.d. standard complex normal.
Operator random_ginibre(Eigen::Index dim, rng::PhiloxStream& rng);
Operator random_hermitian(Eigen::Index dim, rng::PhiloxStream& rng);
// Haar-distributed (QR of a Ginibre matrix with phase correction).
Operator random_unitary(Eigen::Index dim, rng::PhiloxStream& rng);
Operator random_projection(Eigen::Index dim, Eigen::Index rank,
                           rng::PhiloxStream& rng);

// G G* / tr(G G*) mixed with `floor` times the maximally mixed state, so the
// smallest eigenvalue is at least floor / dim.
DensityMatrix random_density(Eigen::Index dim, rng::PhiloxStream& rng,
                             double floor = 0.05);

// A random partition of a rotated basis into 2..dim nonempty blocks.
AlgebraSpec random_algebra(Eigen::Index dim, rng::PhiloxStream& rng);

Operator random_algebra_element(const AlgebraSpec& algebra,
                                rng::PhiloxStream& rng);
// sum_a P_a G_a P_a: a random element of the commutant of the algebra.
Operator random_commutant_element(const AlgebraSpec& algebra,
                                  rng::PhiloxStream& rng);

}  // namespace qf::qp
