#pragma once

#include <array>
#include <complex>
#include <vector>

#include "vlasov/fourier.hpp"
#include "vlasov/grid.hpp"

namespace vlasov {

/// rho = int f dv at the spatial nodes (grid points or Gauss nodes), x1 fastest.
struct DensityField {
  std::array<int, 2> n{1, 1};
  tracked_vector<double> rho;
};

/// E at the same spatial nodes as the density; e2 is empty for one space dimension.
struct ElectricField {
  std::array<int, 2> n{1, 1};
  tracked_vector<double> e1;
  tracked_vector<double> e2;
  /// (sum rho w)/|Omega_x| - 1 of the density that produced this field.
  double neutrality_defect = 0.0;
};

inline constexpr double neutrality_warning_threshold = 1e-6;

DensityField compute_density(const DistributionField& field, int workers = 1);

/// Periodic Poisson solve -Lap phi = rho - 1, E = -grad phi, in Fourier space.
///
/// The k = 0 mode of phi and the Nyquist modes of E are dropped. Spline grids
/// transform on the grid points directly. dG grids transform the density
/// evaluated at cell centres, divide out the per-mode gain of that sampling,
/// and evaluate the Fourier series of E at the Gauss nodes.
class PoissonSolver {
 public:
  explicit PoissonSolver(const GridSpec& grid, TransformBackend backend = TransformBackend::fftw);

  ElectricField solve(const DensityField& density) const;

  /// Fourier coefficients of E_d on the transform grid (unnormalized DFT convention).
  void field_modes(const DensityField& density, tracked_vector<std::complex<double>>& e1_hat,
                   tracked_vector<std::complex<double>>& e2_hat) const;

  int space_dims() const { return dims_; }
  std::array<int, 2> transform_size() const { return {m_[0], m_[1]}; }

 private:
  tracked_vector<std::complex<double>> sample_density(const DensityField& density) const;

  GridSpec grid_;
  int dims_;
  std::array<int, 2> n_{1, 1};  // spatial nodes per axis
  std::array<int, 2> m_{1, 1};  // transform points per axis
  std::array<double, 2> length_{1.0, 1.0};
  FourierTransform transform_;
  // dG: Lagrange weights at the cell centre, and exp(i k (x_node - x_centre0)) tables
  std::vector<double> centre_weights_;
  std::array<std::vector<std::complex<double>>, 2> phase_;
  // centre sampling multiplies mode m by sum_j l_j(1/2) exp(i k h (xi_j - 1/2)); divided out
  std::array<std::vector<double>, 2> centre_gain_;
};

ElectricField solve_poisson(const GridSpec& grid, const DensityField& density);

/// 1/2 sum (E1^2 + E2^2) with the grid's spatial quadrature weights.
double electric_energy(const GridSpec& grid, const ElectricField& field);

}  // namespace vlasov
