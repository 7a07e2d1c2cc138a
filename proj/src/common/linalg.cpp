#include "common/linalg.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace qf {

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double norm(const Operator& a) { return a.norm(); }

double hermiticity_residual(const Operator& a) {
  return (a - a.adjoint()).norm();
}

double unitarity_residual(const Operator& u) {
  return (u.adjoint() * u - identity(u.rows())).norm();
}

double projection_residual(const Operator& p) {
  return (p * p - p).norm() + hermiticity_residual(p);
}

bool is_hermitian(const Operator& a, double tol) {
  return a.rows() == a.cols() && hermiticity_residual(a) <= tol;
}

bool is_unitary(const Operator& u, double tol) {
  return u.rows() == u.cols() && unitarity_residual(u) <= tol;
}

bool is_projection(const Operator& p, double tol) {
  return p.rows() == p.cols() && projection_residual(p) <= tol;
}

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": operator must be a non-empty square matrix");
  }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": dimension mismatch (" +
             std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) +
             ")");
  }
}

HermitianEigen hermitian_eig(const Operator& a) {
  require_square(a, "hermitian_eig");
  const Operator h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator hermitian_function(const Operator& a,
                            const std::function<Complex(double)>& f) {
  const HermitianEigen eig = hermitian_eig(a);
  CVector fvals(eig.values.size());
  for (Eigen::Index i = 0; i < fvals.size(); ++i) fvals(i) = f(eig.values(i));
  return eig.vectors * fvals.asDiagonal() * eig.vectors.adjoint();
}

double min_eigenvalue(const Operator& hermitian) {
  return hermitian_eig(hermitian).values.minCoeff();
}

double max_eigenvalue(const Operator& hermitian) {
  return hermitian_eig(hermitian).values.maxCoeff();
}

StateVector::StateVector(CVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  const double n = amplitudes_.norm();
  if (amplitudes_.size() == 0 || !(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::kInvalidArgument,
         "StateVector: amplitudes must be finite and nonzero");
  }
  amplitudes_ /= n;
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    fail(ErrorCode::kInvalidArgument, "StateVector::basis: index out of range");
  }
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Operator entries) : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  if (!entries_.allFinite()) {
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: non-finite entries");
  }
  if (hermiticity_residual(entries_) > kTolerance) {
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: not hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > kTolerance) {
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: trace differs from 1");
  }
  if (min_eigenvalue(entries_) < -kTolerance) {
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const CVector& v = psi.amplitudes();
  Operator rho = v * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho / rho.trace().real());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

Complex DensityMatrix::expectation(const Operator& x) const {
  require_same_dim(entries_, x, "DensityMatrix::expectation");
  // tr(ρX) without forming the product.
  return (entries_.transpose().cwiseProduct(x)).sum();
}

}  // namespace qf
