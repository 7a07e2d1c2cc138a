#pragma once

#include <cmath>
#include <cstddef>

#include "common/error.hpp"

namespace qf {

// Number of fixed steps of size dt covering [0, t_final]. Throws
// InvalidArgument unless t_final is a positive multiple of dt (to 1e-9
// relative).
inline std::size_t step_count(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !(t_final > 0.0) || !std::isfinite(t_final)) {
    fail(ErrorCode::kInvalidArgument, "t_final and dt must be positive");
  }
  const double ratio = t_final / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
    fail(ErrorCode::kInvalidArgument, "t_final must be a multiple of dt");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace qf
