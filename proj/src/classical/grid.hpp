#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qf::classical {

/// Uniform grid of n >= 2 points on [x_min, x_max].
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 2;

  // Throws InvalidArgument for n < 2 or an empty interval.
  static Grid make(double x_min, double x_max, std::size_t n);

  double dx() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  std::vector<double> points() const;
};

double trapezoid(std::span<const double> values, double dx);

/// Nonnegative values on a grid; a probability density once normalized.
class GridDensity {
 public:
  GridDensity(Grid grid, std::vector<double> values);
  static GridDensity from_function(const Grid& grid,
                                   const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double integral() const;
  // Throws ZeroEvidence if the integral is not positive.
  GridDensity& normalize();
  GridDensity normalized() const;

  // Moments of the normalized density.
  double expectation(const std::function<double(double)>& f) const;
  double mean() const;
  double variance() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

double gaussian_pdf(double x, double mean, double variance);

}  // namespace qf::classical
