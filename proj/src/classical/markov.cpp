#include "classical/markov.hpp"

#include <cmath>
#include <vector>

#include "common/error.hpp"

namespace qf::classical {

double wiener_kernel(double x, double t, double x0, double t0) {
  return gaussian_pdf(x, x0, t - t0);
}

double chapman_kolmogorov_check(const TransitionKernel& kernel, double t0,
                                double t1, double t2, const Grid& grid,
                                std::span<const double> eval_points) {
  if (!(t0 <= t1 && t1 <= t2)) {
    fail(ErrorCode::kInvalidArgument, "chapman_kolmogorov_check: need t0 <= t1 <= t2");
  }
  if (t1 == t0) return 0.0;

  const std::vector<double> nodes = grid.points();
  std::vector<double> left(grid.n);
  std::vector<double> product(grid.n);
  double worst = 0.0;
  for (const double x0 : eval_points) {
    for (std::size_t i = 0; i < grid.n; ++i) left[i] = kernel(nodes[i], t1, x0, t0);
    for (const double x : eval_points) {
      for (std::size_t i = 0; i < grid.n; ++i) {
        product[i] = kernel(x, t2, nodes[i], t1) * left[i];
      }
      const double composed = trapezoid(product, grid.dx());
      worst = std::max(worst, std::abs(composed - kernel(x, t2, x0, t0)));
    }
  }
  return worst;
}

}  // namespace qf::classical
