#include "vn/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "common/error.hpp"
#include "rng/philox.hpp"

namespace qf::vn {

namespace {

constexpr double kClipTolerance = 1e-8;

double node_weight(const Grid& g, std::size_t i) {
  return (i == 0 || i + 1 == g.n) ? 0.5 * g.dx() : g.dx();
}

// Cumulative trapezoid of a nonnegative node series, starting at 0.
std::vector<double> cumulative(const Grid& g, const std::vector<double>& f) {
  std::vector<double> c(g.n, 0.0);
  for (std::size_t i = 1; i < g.n; ++i) c[i] = c[i - 1] + 0.5 * (f[i - 1] + f[i]) * g.dx();
  return c;
}

double interpolate_cumulative(const Grid& g, const std::vector<double>& c, double x) {
  if (x <= g.x_min) return 0.0;
  if (x >= g.x_max) return c.back();
  const double s = (x - g.x_min) / g.dx();
  const auto i = std::min(static_cast<std::size_t>(s), g.n - 2);
  const double f = s - static_cast<double>(i);
  return c[i] + f * (c[i + 1] - c[i]);
}

}  // namespace

GridWavefunction::GridWavefunction(Grid grid, std::vector<Complex> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.n) {
    fail(ErrorCode::kDimensionMismatch, "GridWavefunction: amplitude count does not match the grid");
  }
  for (const Complex& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      fail(ErrorCode::kInvalidArgument, "GridWavefunction: amplitudes must be finite");
    }
  }
}

GridWavefunction GridWavefunction::gaussian(const Grid& grid, double mean, double sd) {
  if (!(sd > 0.0)) fail(ErrorCode::kNonpositiveVariance, "gaussian wavefunction: sd must be positive");
  std::vector<Complex> a(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double z = grid.x(i) - mean;
    a[i] = std::exp(-z * z / (4.0 * sd * sd));
  }
  GridWavefunction out(grid, std::move(a));
  out.normalize();
  return out;
}

GridWavefunction GridWavefunction::spike(const Grid& grid, double x0) {
  const double s = std::round((x0 - grid.x_min) / grid.dx());
  const auto k = static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(grid.n - 1)));
  std::vector<Complex> a(grid.n, Complex(0.0, 0.0));
  a[k] = 1.0;
  GridWavefunction out(grid, std::move(a));
  out.normalize();
  return out;
}

double GridWavefunction::norm_squared() const {
  std::vector<double> d(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) d[i] = std::norm(amplitudes_[i]);
  return classical::trapezoid(d, grid_.dx());
}

GridWavefunction& GridWavefunction::normalize() {
  const double z = norm_squared();
  if (!(z > 0.0) || !std::isfinite(z)) {
    fail(ErrorCode::kZeroDensityPointer, "GridWavefunction: cannot normalize a zero wavefunction");
  }
  const double scale = 1.0 / std::sqrt(z);
  for (Complex& a : amplitudes_) a *= scale;
  return *this;
}

Complex GridWavefunction::at(double x) const {
  if (x < grid_.x_min || x > grid_.x_max) return {0.0, 0.0};
  const double s = (x - grid_.x_min) / grid_.dx();
  const auto i = std::min(static_cast<std::size_t>(s), grid_.n - 2);
  const double f = s - static_cast<double>(i);
  if (f == 0.0) return amplitudes_[i];
  if (f == 1.0) return amplitudes_[i + 1];
  return (1.0 - f) * amplitudes_[i] + f * amplitudes_[i + 1];
}

GridDensity GridWavefunction::density() const {
  std::vector<double> d(grid_.n);
  for (std::size_t i = 0; i < grid_.n; ++i) d[i] = std::norm(amplitudes_[i]);
  return GridDensity(grid_, std::move(d));
}

JointAmplitude::JointAmplitude(GridWavefunction psi, GridWavefunction phi, double mu,
                               Grid y_grid)
    : psi_(std::move(psi)), phi_(std::move(phi)), mu_(mu), y_grid_(y_grid) {
  if (!std::isfinite(mu_)) fail(ErrorCode::kInvalidArgument, "joint_amplitude: mu must be finite");
  psi_.normalize();
  phi_.normalize();

  const Grid& gp = phi_.grid();
  std::vector<double> phi_density(gp.n);
  for (std::size_t i = 0; i < gp.n; ++i) phi_density[i] = std::norm(phi_.amplitudes()[i]);
  const std::vector<double> c = cumulative(gp, phi_density);
  const double phi_total = c.back();

  const Grid& gx = psi_.grid();
  double lost = 0.0;
  for (std::size_t i = 0; i < gx.n; ++i) {
    const double w = node_weight(gx, i) * std::norm(psi_.amplitudes()[i]);
    if (w == 0.0) continue;
    const double shift = mu_ * gx.x(i);
    const double inside = interpolate_cumulative(gp, c, y_grid_.x_max - shift) -
                          interpolate_cumulative(gp, c, y_grid_.x_min - shift);
    lost += w * std::max(0.0, 1.0 - inside / phi_total);
  }
  clipped_mass_ = lost;
  if (clipped_mass_ > kClipTolerance) {
    fail(ErrorCode::kSupportClipped,
         "joint_amplitude: " + format_double(clipped_mass_) +
             " of the joint mass lies outside the y grid; widen it");
  }
}

Complex JointAmplitude::operator()(std::size_t ix, std::size_t iy) const {
  const double x = psi_.grid().x(ix);
  return psi_.amplitudes()[ix] * phi_.at(y_grid_.x(iy) - mu_ * x);
}

double JointAmplitude::pointer_density_at(double y) const {
  const Grid& gx = psi_.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < gx.n; ++i) {
    const double p = std::norm(psi_.amplitudes()[i]);
    if (p == 0.0) continue;
    sum += node_weight(gx, i) * p * std::norm(phi_.at(y - mu_ * gx.x(i)));
  }
  return sum;
}

double JointAmplitude::total_mass() const {
  std::vector<double> rho(y_grid_.n);
  for (std::size_t j = 0; j < y_grid_.n; ++j) rho[j] = pointer_density_at(y_grid_.x(j));
  return classical::trapezoid(rho, y_grid_.dx());
}

JointAmplitude joint_amplitude(const GridWavefunction& psi_prior,
                               const GridWavefunction& phi, double mu,
                               const Grid& y_grid) {
  return JointAmplitude(psi_prior, phi, mu, y_grid);
}

GridDensity pointer_pdf(const JointAmplitude& joint) {
  const Grid& gy = joint.y_grid();
  std::vector<double> rho(gy.n);
  for (std::size_t j = 0; j < gy.n; ++j) rho[j] = joint.pointer_density_at(gy.x(j));
  GridDensity out(gy, std::move(rho));
  out.normalize();
  return out;
}

GridWavefunction posterior_wavefunction(const JointAmplitude& joint, double y,
                                        double eps) {
  const double rho = joint.pointer_density_at(y);
  if (!(rho > eps)) {
    fail(ErrorCode::kZeroDensityPointer,
         "posterior_wavefunction: pointer density vanishes at y=" + format_double(y));
  }
  const Grid& gx = joint.psi().grid();
  const double scale = 1.0 / std::sqrt(rho);
  std::vector<Complex> a(gx.n);
  for (std::size_t i = 0; i < gx.n; ++i) {
    a[i] = joint.psi().amplitudes()[i] * joint.phi().at(y - joint.mu() * gx.x(i)) * scale;
  }
  GridWavefunction out(gx, std::move(a));
  out.normalize();
  return out;
}

CsvWriter wavefunction_csv(const GridWavefunction& psi) {
  CsvWriter csv({"x", "re", "im", "density"});
  for (std::size_t i = 0; i < psi.grid().n; ++i) {
    const Complex a = psi.amplitudes()[i];
    const std::vector<double> row{psi.grid().x(i), a.real(), a.imag(), std::norm(a)};
    csv.add_row(row);
  }
  return csv;
}

InverseCdfSampler::InverseCdfSampler(const GridDensity& density)
    : grid_(density.grid()), cdf_(cumulative(density.grid(), density.values())) {
  const double total = cdf_.back();
  if (!(total > 0.0)) fail(ErrorCode::kZeroEvidence, "InverseCdfSampler: zero mass");
  for (double& c : cdf_) c /= total;
}

double InverseCdfSampler::operator()(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return grid_.x_min;
  if (it == cdf_.end()) return grid_.x_max;
  const auto j = static_cast<std::size_t>(it - cdf_.begin());  // cdf_[j-1] <= u < cdf_[j]
  const double lo = cdf_[j - 1];
  const double hi = cdf_[j];
  const double f = (u - lo) / (hi - lo);
  return grid_.x(j - 1) + f * grid_.dx();
}

SignalNoiseReport signal_noise_decomposition_check(const GridWavefunction& psi_prior,
                                                   const GridWavefunction& phi,
                                                   double mu, const Grid& y_grid,
                                                   std::size_t n_samples,
                                                   std::uint64_t seed) {
  if (n_samples < 2) fail(ErrorCode::kInvalidArgument, "signal_noise_decomposition_check: need n_samples >= 2");
  const JointAmplitude joint(psi_prior, phi, mu, y_grid);
  const InverseCdfSampler sample(pointer_pdf(joint));

  const GridDensity px = joint.psi().density();
  const GridDensity pphi = joint.phi().density();

  rng::PhiloxStream rng(seed, 0);
  std::vector<double> ys(n_samples);
  double mean = 0.0;
  for (double& y : ys) {
    y = sample(rng.uniform());
    mean += y;
  }
  const double n = static_cast<double>(n_samples);
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double y : ys) {
    const double d = (y - mean) * (y - mean);
    m2 += d;
    m4 += d * d;
  }
  const double var = m2 / (n - 1.0);
  const double central4 = m4 / n;
  const double biased_var = m2 / n;

  SignalNoiseReport r;
  r.samples = n_samples;
  r.sample_mean = mean;
  r.sample_variance = var;
  r.mean_standard_error = std::sqrt(var / n);
  r.variance_standard_error = std::sqrt(std::max(0.0, central4 - biased_var * biased_var) / n);
  r.expected_mean = mu * px.mean() + pphi.mean();
  r.expected_variance = mu * mu * px.variance() + pphi.variance();
  r.mean_ok = std::abs(r.sample_mean - r.expected_mean) <= 3.0 * r.mean_standard_error;
  r.variance_ok = std::abs(r.sample_variance - r.expected_variance) <= 3.0 * r.variance_standard_error;
  return r;
}

}  // namespace qf::vn
