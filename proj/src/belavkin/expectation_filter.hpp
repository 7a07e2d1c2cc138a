#pragma once

#include <vector>

#include "belavkin/trajectory.hpp"
#include "common/linalg.hpp"
#include "slh/model.hpp"

namespace qf::belavkin {

/*!
 * The normalized filter in expectation form,
 *
 *   dE(X) = E(L X) dt + {E(X L + L* X) - E(X) E(L + L*)} dI,
 *   dI    = dY - E(L + L*) dt,
 *
 * stepped with Euler-Maruyama. The moments on the right are evaluated from a
 * carried conditional density rho, which is advanced by the dual step
 *
 *   rho' = rho + L*(rho) dt + (L rho + rho L* - E(L + L*) rho) dI,
 *
 * so the estimates and tr(rho X) agree up to round-off.
 */
class ExpectationFormFilter {
 public:
  ExpectationFormFilter(const slh::SLHModel& model, const Operator& rho0,
                        std::vector<Observable> observables);

  // One Euler step; returns the innovation increment dI.
  double step(double dy, double dt);

  const Operator& density() const { return rho_; }
  const std::vector<double>& estimates() const { return estimates_; }
  const std::vector<Observable>& observables() const { return observables_; }
  double expectation(const Operator& x) const;

 private:
  slh::SLHModel model_;
  Operator rho_;
  std::vector<Observable> observables_;
  std::vector<double> estimates_;
  std::vector<Operator> generated_;  // L X per observable
  std::vector<Operator> gain_ops_;   // X L + L* X per observable
  Operator quadrature_;
};

// Single-step convenience form: returns the updated estimates for
// `observables` given the carried density `rho` (which is not modified).
std::vector<double> filter_step_expectation_form(
    const std::vector<double>& estimates, const Operator& rho,
    const slh::SLHModel& model, const std::vector<Observable>& observables,
    double dy, double dt);

}  // namespace qf::belavkin
