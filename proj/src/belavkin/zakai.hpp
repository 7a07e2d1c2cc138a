#pragma once

#include "common/linalg.hpp"
#include "slh/model.hpp"

namespace qf::belavkin {

inline constexpr double kEpsNorm = 1e-300;
inline constexpr double kScatteringTolerance = 1e-12;

// Throws ScatteringNotSupported unless ||S - 1|| <= 1e-12.
void require_unit_scattering(const slh::SLHModel& model);

/*!
 * Euler-Maruyama step of the Belavkin-Zakai equation
 *
 *   d chi = -(1/2 L*L + iH) chi dt + L chi dy.
 *
 * The stepper precomputes M = 1 - (1/2 L*L + iH) dt once, so a step is
 * chi' = M chi + dy L chi.
 */
class ZakaiStepper {
 public:
  ZakaiStepper(const slh::SLHModel& model, double dt);

  double dt() const { return dt_; }
  const Operator& drift_map() const { return m_; }
  const Operator& coupling() const { return l_; }

  // In place; `scratch` must not alias `chi`.
  void step(CVector& chi, double dy, CVector& scratch) const;
  CVector step(const CVector& chi, double dy) const;

 private:
  double dt_;
  Operator m_;
  Operator l_;
};

CVector zakai_step(const CVector& chi, double dy, const slh::SLHModel& model,
                   double dt);

// <chi|X|chi> / <chi|chi>. Throws CollapsedNorm when <chi|chi> < 1e-300.
double filter_expectation(const CVector& chi, const Operator& x);

/*!
 * Rescales chi to unit norm and adds ln <chi|chi> (the squared-norm
 * convention) to `log_norm`, so exp(log_norm) tracks the norm the
 * unrescaled evolution would have. Throws CollapsedNorm for a zero or
 * non-finite vector.
 */
void renormalize_in_place(CVector& chi, double& log_norm);

}  // namespace qf::belavkin
