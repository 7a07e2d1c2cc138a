#include "qp/spectral.hpp"

#include <cmath>
#include <span>
#include <string>

#include "common/error.hpp"

namespace qf::qp {

Operator SpectralDecomposition::reconstruct() const {
  Operator out = Operator::Zero(dim(), dim());
  for (std::size_t i = 0; i < projections.size(); ++i) {
    out += eigenvalues[i] * projections[i];
  }
  return out;
}

SpectralDecomposition spectral_decompose(const Operator& a,
                                         std::optional<double> cluster_tol) {
  require_square(a, "spectral_decompose");
  if (hermiticity_residual(a) > 1e-10) {
    fail(ErrorCode::kNotHermitian, "spectral_decompose: operator is not hermitian");
  }
  const double scale = a.norm();
  const double tol = cluster_tol.value_or(scale > 0.0 ? 1e-10 * scale : 1e-10);
  if (!(tol > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "spectral_decompose: cluster_tol must be positive");
  }

  const HermitianEigen eig = hermitian_eig(a);
  SpectralDecomposition out;
  const Eigen::Index n = eig.values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    // Chain consecutive eigenvalues whose gap is below the tolerance.
    while (end < n && eig.values(end) - eig.values(end - 1) < tol) ++end;
    const Eigen::Index count = end - start;
    const auto block = eig.vectors.middleCols(start, count);
    out.eigenvalues.push_back(eig.values.segment(start, count).mean());
    out.projections.push_back(block * block.adjoint());
    start = end;
  }
  return out;
}

AlgebraSpec::AlgebraSpec(std::vector<Operator> projections)
    : projections_(std::move(projections)) {
  if (projections_.empty()) {
    fail(ErrorCode::kInvalidArgument, "AlgebraSpec: empty projection family");
  }
  const Eigen::Index d = projections_.front().rows();
  Operator total = Operator::Zero(d, d);
  for (std::size_t i = 0; i < projections_.size(); ++i) {
    const Operator& p = projections_[i];
    require_square(p, "AlgebraSpec");
    if (p.rows() != d) {
      fail(ErrorCode::kDimensionMismatch, "AlgebraSpec: projections differ in dimension");
    }
    if (!is_projection(p, kTolerance)) {
      fail(ErrorCode::kInvalidArgument,
           "AlgebraSpec: member " + std::to_string(i) + " is not a projection");
    }
    const double rank = p.trace().real();
    if (rank < 0.5) {
      fail(ErrorCode::kInvalidArgument, "AlgebraSpec: zero projection in family");
    }
    ranks_.push_back(std::round(rank));
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * projections_[j]).norm() > kTolerance) {
        fail(ErrorCode::kInvalidArgument, "AlgebraSpec: projections not orthogonal");
      }
    }
    total += p;
  }
  if ((total - identity(d)).norm() > kTolerance) {
    fail(ErrorCode::kInvalidArgument, "AlgebraSpec: projections do not sum to identity");
  }
}

AlgebraSpec AlgebraSpec::from_spectral(const SpectralDecomposition& spec) {
  return AlgebraSpec(spec.projections);
}

AlgebraSpec AlgebraSpec::trivial(Eigen::Index dim) {
  return AlgebraSpec({identity(dim)});
}

Operator AlgebraSpec::element(std::span<const Complex> coefficients) const {
  if (coefficients.size() != projections_.size()) {
    fail(ErrorCode::kDimensionMismatch, "AlgebraSpec::element: wrong coefficient count");
  }
  Operator out = Operator::Zero(dim(), dim());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    out += coefficients[i] * projections_[i];
  }
  return out;
}

Operator AlgebraSpec::project_onto_span(const Operator& m) const {
  require_same_dim(m, projections_.front(), "AlgebraSpec::project_onto_span");
  Operator out = Operator::Zero(dim(), dim());
  for (std::size_t i = 0; i < projections_.size(); ++i) {
    // <P_a, M>_HS / <P_a, P_a>_HS with <P_a, P_a> = rank(P_a)
    const Complex c = (projections_[i].adjoint() * m).trace() / ranks_[i];
    out += c * projections_[i];
  }
  return out;
}

double AlgebraSpec::distance_to_span(const Operator& m) const {
  return (m - project_onto_span(m)).norm();
}

double AlgebraSpec::commutant_residual(const Operator& a) const {
  require_same_dim(a, projections_.front(), "AlgebraSpec::commutant_residual");
  double worst = 0.0;
  for (const Operator& p : projections_) {
    worst = std::max(worst, (a * p - p * a).norm());
  }
  return worst;
}

}  // namespace qf::qp
