#pragma once

#include <optional>
#include <span>
#include <vector>

#include "common/linalg.hpp"

namespace qf::qp {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // strictly increasing
  std::vector<Operator> projections;

  Eigen::Index dim() const {
    return projections.empty() ? 0 : projections.front().rows();
  }
  Operator reconstruct() const;
};

// Eigenvalues closer than `cluster_tol` share an eigenspace. The default
// tolerance is 1e-10 * ||A|| (1e-10 for the zero operator).
SpectralDecomposition spectral_decompose(
    const Operator& a, std::optional<double> cluster_tol = std::nullopt);

/*!
 * Commutative subalgebra generated by a complete family of mutually
 * orthogonal projections {P_a}: its elements are the combinations
 * sum_a c_a P_a.
 */
class AlgebraSpec {
 public:
  static constexpr double kTolerance = 1e-10;

  // Throws InvalidArgument unless the family is complete, orthogonal and
  // consists of nonzero projections.
  explicit AlgebraSpec(std::vector<Operator> projections);

  static AlgebraSpec from_spectral(const SpectralDecomposition& spec);
  static AlgebraSpec trivial(Eigen::Index dim);

  Eigen::Index dim() const { return projections_.front().rows(); }
  std::size_t size() const { return projections_.size(); }
  const std::vector<Operator>& projections() const { return projections_; }
  const std::vector<double>& ranks() const { return ranks_; }

  Operator element(std::span<const Complex> coefficients) const;

  // Hilbert-Schmidt orthogonal projection of `m` onto span{P_a}.
  Operator project_onto_span(const Operator& m) const;
  double distance_to_span(const Operator& m) const;

  // max_a ||[A, P_a]||
  double commutant_residual(const Operator& a) const;

 private:
  std::vector<Operator> projections_;
  std::vector<double> ranks_;
};

/// Finite-dimensional QP space state <X> = tr(rho X).
class QPState {
 public:
  explicit QPState(DensityMatrix rho) : rho_(std::move(rho)) {}

  Eigen::Index dim() const { return rho_.dim(); }
  const DensityMatrix& density() const { return rho_; }
  const Operator& rho() const { return rho_.entries(); }

  Complex expectation(const Operator& x) const { return rho_.expectation(x); }

 private:
  DensityMatrix rho_;
};

}  // namespace qf::qp
