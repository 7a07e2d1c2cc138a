#pragma once

#include <cstdint>
#include <vector>

#include "classical/grid.hpp"
#include "common/csv.hpp"
#include "common/linalg.hpp"

namespace qf::vn {

using classical::Grid;
using classical::GridDensity;

/// Complex amplitudes on a uniform position grid.
class GridWavefunction {
 public:
  GridWavefunction(Grid grid, std::vector<Complex> amplitudes);
  static GridWavefunction gaussian(const Grid& grid, double mean, double sd);
  // Unit mass concentrated on the node nearest x0.
  static GridWavefunction spike(const Grid& grid, double x0);

  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  double norm_squared() const;  // trapezoid of |psi|^2
  // Throws ZeroDensityPointer if the norm vanishes.
  GridWavefunction& normalize();

  // Linear interpolation; zero outside the grid.
  Complex at(double x) const;

  GridDensity density() const;

 private:
  Grid grid_;
  std::vector<Complex> amplitudes_;
};

/*!
 * Joint amplitude Psi(x, y) = psi(x) phi(y - mu x) after the pointer
 * coupling, evaluated lazily on (psi grid) x (y grid). phi is read off its
 * own grid by linear interpolation, which is exact whenever y - mu x lands
 * on phi's nodes.
 */
class JointAmplitude {
 public:
  // Throws SupportClipped if more than 1e-8 of the joint mass falls outside
  // the y grid.
  JointAmplitude(GridWavefunction psi, GridWavefunction phi, double mu, Grid y_grid);

  const GridWavefunction& psi() const { return psi_; }
  const GridWavefunction& phi() const { return phi_; }
  double mu() const { return mu_; }
  const Grid& y_grid() const { return y_grid_; }
  double clipped_mass() const { return clipped_mass_; }

  Complex operator()(std::size_t ix, std::size_t iy) const;
  // Unnormalized rho_Y(y) = int |psi(x) phi(y - mu x)|^2 dx.
  double pointer_density_at(double y) const;
  // Total mass int int |Psi|^2 over the product grid.
  double total_mass() const;

 private:
  GridWavefunction psi_;
  GridWavefunction phi_;
  double mu_;
  Grid y_grid_;
  double clipped_mass_ = 0.0;
};

JointAmplitude joint_amplitude(const GridWavefunction& psi_prior,
                               const GridWavefunction& phi, double mu,
                               const Grid& y_grid);

// Normalized pointer distribution on the y grid.
GridDensity pointer_pdf(const JointAmplitude& joint);

/*!
 * psi_post(x|y) = psi(x) phi(y - mu x) / sqrt(rho_Y(y)), normalized over x.
 * Throws ZeroDensityPointer if rho_Y(y) <= eps.
 */
GridWavefunction posterior_wavefunction(const JointAmplitude& joint, double y,
                                        double eps = 1e-300);

// Columns: x, re, im, density.
CsvWriter wavefunction_csv(const GridWavefunction& psi);

/*!
 * Inverse-CDF sampler for a grid density: the CDF is the cumulative
 * trapezoid on the nodes and is inverted by linear interpolation inside
 * each cell.
 */
class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const GridDensity& density);
  double operator()(double u) const;

 private:
  Grid grid_;
  std::vector<double> cdf_;
};

struct SignalNoiseReport {
  std::size_t samples = 0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double mean_standard_error = 0.0;
  double variance_standard_error = 0.0;
  double expected_mean = 0.0;      // mu E[X] + E_phi[Y]
  double expected_variance = 0.0;  // mu^2 Var(X) + Var_phi(Y)
  bool mean_ok = false;            // within 3 SE
  bool variance_ok = false;
  bool pass() const { return mean_ok && variance_ok; }
};

/*!
 * Samples the pointer reading from pointer_pdf and compares its first two
 * moments with the signal-plus-noise prediction Y = mu X + Y_in.
 */
SignalNoiseReport signal_noise_decomposition_check(const GridWavefunction& psi_prior,
                                                   const GridWavefunction& phi,
                                                   double mu, const Grid& y_grid,
                                                   std::size_t n_samples,
                                                   std::uint64_t seed);

}  // namespace qf::vn
