#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qf {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

Operator identity(Eigen::Index dim);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);
Operator kron(const Operator& a, const Operator& b);

// Frobenius norm; all residuals in the project are measured with it.
double norm(const Operator& a);
double hermiticity_residual(const Operator& a);
double unitarity_residual(const Operator& u);
double projection_residual(const Operator& p);

bool is_hermitian(const Operator& a, double tol);
bool is_unitary(const Operator& u, double tol);
bool is_projection(const Operator& p, double tol);

void require_square(const Operator& a, const char* what);
void require_same_dim(const Operator& a, const Operator& b, const char* what);

struct HermitianEigen {
  RVector values;   // ascending
  Operator vectors; // columns are orthonormal eigenvectors
};

// Eigendecomposition of the hermitian part of `a`.
HermitianEigen hermitian_eig(const Operator& a);

// f(A) = V f(Λ) V† for hermitian A.
Operator hermitian_function(const Operator& a,
                            const std::function<Complex(double)>& f);

double min_eigenvalue(const Operator& hermitian);
double max_eigenvalue(const Operator& hermitian);

/// Unit-norm pure state.
class StateVector {
 public:
  // Normalizes `amplitudes`; throws InvalidArgument on the zero vector.
  explicit StateVector(CVector amplitudes);

  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  // Validates the invariants; throws InvalidArgument if any fails.
  explicit DensityMatrix(Operator entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Operator& entries() const { return entries_; }

  Complex expectation(const Operator& x) const;

 private:
  Operator entries_;
};

}  // namespace qf
