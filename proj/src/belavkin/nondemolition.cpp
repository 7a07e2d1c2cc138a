#include "belavkin/nondemolition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "belavkin/zakai.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "slh/operators.hpp"

namespace qf::belavkin {

namespace {

double spectral_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Operator>(a).singularValues()(0);
}

class RepeatInteraction {
 public:
  RepeatInteraction(const slh::SLHModel& model, int slots, double width)
      : d_(model.dim()), slots_(slots), width_(width) {
    const double root = std::sqrt(width);
    for (int k = 0; k < slots; ++k) {
      const Operator g = root * (embed(model.L, slh::sigma_plus(), k) -
                                 embed(model.L.adjoint(), slh::sigma_minus(), k)) -
                         kI * width * embed(model.H, identity(2), k);
      // G is anti-hermitian, so iG is hermitian and exp(fG) = exp(-i f (iG)).
      generators_.push_back(hermitian_eig(kI * g));
    }
    Operator u = identity(dim());
    prefix_.push_back(u);
    for (int k = 0; k < slots; ++k) {
      u = slot_unitary(k, 1.0) * u;
      prefix_.push_back(u);
    }
  }

  Eigen::Index dim() const { return d_ << slots_; }

  // A on the system, B on field qubit k.
  Operator embed(const Operator& a, const Operator& b, int k) const {
    const Operator before = identity(Eigen::Index{1} << k);
    const Operator after = identity(Eigen::Index{1} << (slots_ - 1 - k));
    return kron(a, kron(before, kron(b, after)));
  }

  Operator slot_unitary(int k, double f) const {
    const HermitianEigen& eig = generators_[k];
    CVector phase(eig.values.size());
    for (Eigen::Index i = 0; i < phase.size(); ++i) {
      phase(i) = std::exp(-kI * f * eig.values(i));
    }
    return eig.vectors * phase.asDiagonal() * eig.vectors.adjoint();
  }

  // (slot index, fraction) of time t; slot == slots_ past the window end.
  std::pair<int, double> locate(double t) const {
    const double pos = t / width_;
    int k = static_cast<int>(std::floor(pos));
    if (k >= slots_) return {slots_, 0.0};
    k = std::max(k, 0);
    return {k, pos - k};
  }

  Operator evolution(double t) const {
    const auto [k, f] = locate(t);
    if (k >= slots_ || f == 0.0) return prefix_[k];
    return slot_unitary(k, f) * prefix_[k];
  }

  Operator input_quadrature(double s) const {
    const auto [k, f] = locate(s);
    const double root = std::sqrt(width_);
    Operator y = Operator::Zero(dim(), dim());
    for (int j = 0; j < k; ++j) y += root * embed(identity(d_), slh::pauli_x(), j);
    if (k < slots_ && f > 0.0) y += f * root * embed(identity(d_), slh::pauli_x(), k);
    return y;
  }

  double fraction(double s) const { return locate(s).second; }

 private:
  Eigen::Index d_;
  int slots_;
  double width_;
  std::vector<HermitianEigen> generators_;
  std::vector<Operator> prefix_;  // prefix_[k] = U_{k-1} ... U_0
};

}  // namespace

NondemolitionReport nondemolition_check(const slh::SLHModel& model,
                                        const Operator& x,
                                        std::span<const double> t_grid,
                                        std::span<const double> s_grid,
                                        int slots, double t_final,
                                        double tolerance) {
  slh::require_valid(model);
  require_unit_scattering(model);
  require_same_dim(x, model.H, "nondemolition_check");
  if (slots < 1 || slots > 10) {
    fail(ErrorCode::kInvalidArgument, "nondemolition_check: slots must be in 1..10");
  }
  if (!(t_final > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "nondemolition_check: t_final must be positive");
  }
  if (t_grid.empty() || s_grid.empty()) {
    fail(ErrorCode::kInvalidArgument, "nondemolition_check: empty time grid");
  }
  const auto [s_lo, s_hi] = std::minmax_element(s_grid.begin(), s_grid.end());
  const auto [t_lo, t_hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  if (!(*s_hi < *t_lo)) {
    fail(ErrorCode::kInvalidArgument, "nondemolition_check: every s must precede every t");
  }
  if (*s_lo < 0.0 || *t_hi > t_final) {
    fail(ErrorCode::kInvalidArgument, "nondemolition_check: times outside [0, t_final]");
  }

  NondemolitionReport report;
  report.slots = slots;
  report.slot_width = t_final / slots;
  const double root = std::sqrt(report.slot_width);
  const RepeatInteraction ri(model, slots, report.slot_width);

  const double x_norm = spectral_norm(x);
  const double coupling = 2.0 * root * spectral_norm(model.L) +
                          report.slot_width * spectral_norm(model.H);
  for (const double s : s_grid) {
    const double f = ri.fraction(s);
    report.error_bound = std::max(report.error_bound, 4.0 * f * (1.0 - f) * root * x_norm * coupling);
  }
  if (report.error_bound > tolerance) {
    fail(ErrorCode::kTruncationTooCoarse,
         "nondemolition_check: truncation error bound " + format_double(report.error_bound) +
             " exceeds tolerance " + format_double(tolerance));
  }

  const Operator x_joint = ri.embed(x, identity(2), 0);
  std::vector<Operator> heisenberg_x;
  for (const double t : t_grid) {
    const Operator u = ri.evolution(t);
    heisenberg_x.push_back(u.adjoint() * x_joint * u);
  }
  for (const double s : s_grid) {
    const Operator u = ri.evolution(s);
    const Operator y_out = u.adjoint() * ri.input_quadrature(s) * u;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double r = spectral_norm(heisenberg_x[i] * y_out - y_out * heisenberg_x[i]);
      if (r > report.max_residual) {
        report.max_residual = r;
        report.worst_s = s;
        report.worst_t = t_grid[i];
      }
    }
  }
  return report;
}

}  // namespace qf::belavkin
