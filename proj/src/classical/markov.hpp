#pragma once

#include <functional>
#include <span>

#include "classical/grid.hpp"

namespace qf::classical {

// T(x, t | x0, t0): density of X_t at x given X_t0 = x0.
using TransitionKernel =
    std::function<double(double x, double t, double x0, double t0)>;

// Heat kernel: N(x; x0, t - t0).
double wiener_kernel(double x, double t, double x0, double t0);

/*!
 * max over x, x0 in `eval_points` of
 *   | integral T(x, t2 | x1, t1) T(x1, t1 | x0, t0) dx1 - T(x, t2 | x0, t0) |
 * with the x1 integral taken by the trapezoid rule on `grid`. The
 * degenerate case t1 == t0 (identity kernel) returns 0.
 */
double chapman_kolmogorov_check(const TransitionKernel& kernel, double t0,
                                double t1, double t2, const Grid& grid,
                                std::span<const double> eval_points);

}  // namespace qf::classical
