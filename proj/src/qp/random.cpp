#include "qp/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.hpp"

namespace qf::qp {

Operator random_ginibre(Eigen::Index dim, rng::PhiloxStream& rng) {
  Operator g(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

Operator random_hermitian(Eigen::Index dim, rng::PhiloxStream& rng) {
  const Operator g = random_ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

Operator random_unitary(Eigen::Index dim, rng::PhiloxStream& rng) {
  const Eigen::HouseholderQR<Operator> qr(random_ginibre(dim, rng));
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Operator random_projection(Eigen::Index dim, Eigen::Index rank,
                           rng::PhiloxStream& rng) {
  if (rank < 0 || rank > dim) {
    fail(ErrorCode::kInvalidArgument, "random_projection: rank out of range");
  }
  const Operator u = random_unitary(dim, rng);
  const auto cols = u.leftCols(rank);
  return cols * cols.adjoint();
}

DensityMatrix random_density(Eigen::Index dim, rng::PhiloxStream& rng,
                             double floor) {
  const Operator g = random_ginibre(dim, rng);
  Operator rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - floor) * rho + (floor / static_cast<double>(dim)) * identity(dim);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

AlgebraSpec random_algebra(Eigen::Index dim, rng::PhiloxStream& rng) {
  if (dim < 2) return AlgebraSpec::trivial(dim);
  const Operator u = random_unitary(dim, rng);
  // Block count in [2, dim]; every block gets at least one basis vector.
  const auto blocks = static_cast<Eigen::Index>(2 + rng.next_u64() % (dim - 1));
  std::vector<Eigen::Index> owner(dim);
  std::iota(owner.begin(), owner.end(), 0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i >= blocks) owner[i] = static_cast<Eigen::Index>(rng.next_u64() % blocks);
  }
  std::shuffle(owner.begin(), owner.end(), rng);
  std::vector<Operator> projections(blocks, Operator::Zero(dim, dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    projections[owner[i]] += u.col(i) * u.col(i).adjoint();
  }
  return AlgebraSpec(std::move(projections));
}

Operator random_algebra_element(const AlgebraSpec& algebra,
                                rng::PhiloxStream& rng) {
  std::vector<Complex> c(algebra.size());
  for (auto& z : c) z = Complex(rng.normal(), rng.normal());
  return algebra.element(c);
}

Operator random_commutant_element(const AlgebraSpec& algebra,
                                  rng::PhiloxStream& rng) {
  Operator out = Operator::Zero(algebra.dim(), algebra.dim());
  for (const Operator& p : algebra.projections()) {
    out += p * random_ginibre(algebra.dim(), rng) * p;
  }
  return out;
}

}  // namespace qf::qp
