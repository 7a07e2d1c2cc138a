#include "classical/grid.hpp"

#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace qf::classical {

Grid Grid::make(double x_min, double x_max, std::size_t n) {
  if (n < 2 || !(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    fail(ErrorCode::kInvalidArgument, "grid: need n >= 2 and x_min < x_max");
  }
  return {x_min, x_max, n};
}

std::vector<double> Grid::points() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
  return out;
}

double trapezoid(std::span<const double> values, double dx) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * dx;
}

GridDensity::GridDensity(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) {
    fail(ErrorCode::kDimensionMismatch, "GridDensity: value count does not match the grid");
  }
  for (const double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::kInvalidArgument, "GridDensity: values must be finite and nonnegative");
    }
  }
}

GridDensity GridDensity::from_function(const Grid& grid,
                                       const std::function<double(double)>& f) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
  return GridDensity(grid, std::move(v));
}

double GridDensity::integral() const { return trapezoid(values_, grid_.dx()); }

GridDensity& GridDensity::normalize() {
  const double z = integral();
  if (!(z > 0.0) || !std::isfinite(z)) {
    fail(ErrorCode::kZeroEvidence, "GridDensity: cannot normalize zero mass");
  }
  for (double& v : values_) v /= z;
  return *this;
}

GridDensity GridDensity::normalized() const {
  GridDensity out = *this;
  out.normalize();
  return out;
}

double GridDensity::expectation(const std::function<double(double)>& f) const {
  std::vector<double> w(values_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = f(grid_.x(i)) * values_[i];
  const double z = integral();
  if (!(z > 0.0)) fail(ErrorCode::kZeroEvidence, "GridDensity: zero mass");
  return trapezoid(w, grid_.dx()) / z;
}

double GridDensity::mean() const {
  return expectation([](double x) { return x; });
}

double GridDensity::variance() const {
  const double m = mean();
  return expectation([m](double x) { return (x - m) * (x - m); });
}

double gaussian_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

}  // namespace qf::classical
