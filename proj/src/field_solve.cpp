#include "vlasov/field_solve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vlasov/dg.hpp"

namespace vlasov {

namespace {

std::array<int, 2> spatial_nodes(const GridSpec& grid) {
  return {grid.dof(0), grid.space_dims() == 2 ? grid.dof(1) : 1};
}

}  // namespace

DensityField compute_density(const DistributionField& field, int workers) {
  const GridSpec& grid = field.grid();
  const int sd = grid.space_dims();
  const std::vector<std::size_t>& strides = field.layout().strides;
  DensityField density;
  density.n = spatial_nodes(grid);
  const int n1 = density.n[0];
  const int n2 = density.n[1];
  density.rho.assign(static_cast<std::size_t>(n1) * n2, 0.0);

  const int va1 = grid.velocity_axis(0);
  const int nv1 = grid.dof(va1);
  const int nv2 = sd == 2 ? grid.dof(grid.velocity_axis(1)) : 1;
  const std::size_t sx1 = strides[0];
  const std::size_t sx2 = sd == 2 ? strides[1] : 0;
  const std::size_t sv1 = strides[va1];
  const std::size_t sv2 = sd == 2 ? strides[grid.velocity_axis(1)] : 0;
  const double* f = field.data().data();
  double* rho = density.rho.data();

  // every rho entry accumulates over the velocity nodes in the same fixed order
  // (v1 fastest), whatever the number of workers
  if (sd == 2) {
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
    for (int i2 = 0; i2 < n2; ++i2) {
      double* row = rho + static_cast<std::size_t>(i2) * n1;
      for (int j2 = 0; j2 < nv2; ++j2) {
        const double w2 = grid.weight(grid.velocity_axis(1), j2);
        for (int j1 = 0; j1 < nv1; ++j1) {
          const double w = grid.weight(va1, j1) * w2;
          const double* base = f + j1 * sv1 + j2 * sv2 + i2 * sx2;
          for (int i1 = 0; i1 < n1; ++i1) row[i1] += w * base[i1 * sx1];
        }
      }
    }
  } else {
    for (int j1 = 0; j1 < nv1; ++j1) {
      const double w = grid.weight(va1, j1);
      const double* base = f + j1 * sv1;
      for (int i1 = 0; i1 < n1; ++i1) rho[i1] += w * base[i1 * sx1];
    }
  }
  return density;
}

PoissonSolver::PoissonSolver(const GridSpec& grid, TransformBackend backend)
    : grid_(grid),
      dims_(grid.space_dims()),
      n_(spatial_nodes(grid)),
      m_{grid.axis(0).count, dims_ == 2 ? grid.axis(1).count : 1},
      length_{grid.axis(0).length(), dims_ == 2 ? grid.axis(1).length() : 1.0},
      transform_(m_[0], m_[1], backend) {
  if (grid.method() != Method::dg) return;
  const int np = grid.nodes_per_cell();
  centre_weights_.resize(np);
  dg::lagrange_basis(grid.reference_nodes(), 0.5, centre_weights_);
  for (int d = 0; d < dims_; ++d) {
    const double h = grid.axis(d).spacing();
    const double centre0 = grid.axis(d).lower + 0.5 * h;
    std::vector<double>& gain = centre_gain_[d];
    gain.resize(m_[d]);
    for (int m = 0; m < m_[d]; ++m) {
      const double kh = 2.0 * std::numbers::pi * signed_frequency(m, m_[d]) / length_[d] * h;
      std::complex<double> g = 0.0;
      for (int j = 0; j < np; ++j) g += centre_weights_[j] * std::polar(1.0, kh * (grid.reference_nodes()[j] - 0.5));
      // symmetric nodes make the gain real and, below Nyquist, well away from zero
      gain[m] = g.real();
    }
    std::vector<std::complex<double>>& table = phase_[d];
    table.resize(static_cast<std::size_t>(n_[d]) * m_[d]);
    for (int i = 0; i < n_[d]; ++i) {
      const double dx = grid.node(d, i) - centre0;
      for (int m = 0; m < m_[d]; ++m) {
        const double k = 2.0 * std::numbers::pi * signed_frequency(m, m_[d]) / length_[d];
        table[static_cast<std::size_t>(i) * m_[d] + m] = std::polar(1.0, k * dx);
      }
    }
  }
}

tracked_vector<std::complex<double>> PoissonSolver::sample_density(const DensityField& density) const {
  if (density.n != n_) throw std::invalid_argument("PoissonSolver: density grid mismatch");
  tracked_vector<std::complex<double>> samples(static_cast<std::size_t>(m_[0]) * m_[1]);
  if (grid_.method() == Method::spline) {
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = density.rho[i];
    return samples;
  }
  const int np = grid_.nodes_per_cell();
  const int np2 = dims_ == 2 ? np : 1;
  for (int c2 = 0; c2 < m_[1]; ++c2) {
    for (int c1 = 0; c1 < m_[0]; ++c1) {
      double value = 0.0;
      for (int j2 = 0; j2 < np2; ++j2) {
        const double w2 = dims_ == 2 ? centre_weights_[j2] : 1.0;
        const std::size_t row = static_cast<std::size_t>(c2 * np2 + j2) * n_[0];
        double partial = 0.0;
        for (int j1 = 0; j1 < np; ++j1) partial += centre_weights_[j1] * density.rho[row + c1 * np + j1];
        value += w2 * partial;
      }
      samples[c1 + static_cast<std::size_t>(m_[0]) * c2] = value;
    }
  }
  return samples;
}

void PoissonSolver::field_modes(const DensityField& density, tracked_vector<std::complex<double>>& e1_hat,
                                tracked_vector<std::complex<double>>& e2_hat) const {
  tracked_vector<std::complex<double>> rho_hat = sample_density(density);
  transform_.forward(rho_hat, rho_hat);
  const std::size_t total = rho_hat.size();
  e1_hat.assign(total, 0.0);
  e2_hat.assign(dims_ == 2 ? total : 0, 0.0);
  const std::complex<double> minus_i(0.0, -1.0);
  for (int m2 = 0; m2 < m_[1]; ++m2) {
    const bool nyquist2 = dims_ == 2 && 2 * m2 == m_[1];
    const double k2 = dims_ == 2 ? 2.0 * std::numbers::pi * signed_frequency(m2, m_[1]) / length_[1] : 0.0;
    for (int m1 = 0; m1 < m_[0]; ++m1) {
      const bool nyquist1 = 2 * m1 == m_[0];
      const double k1 = 2.0 * std::numbers::pi * signed_frequency(m1, m_[0]) / length_[0];
      const double k_sq = k1 * k1 + k2 * k2;
      if (k_sq == 0.0 || nyquist1 || nyquist2) continue;
      const std::size_t idx = m1 + static_cast<std::size_t>(m_[0]) * m2;
      std::complex<double> phi_hat = rho_hat[idx] / k_sq;
      if (grid_.method() == Method::dg) phi_hat /= centre_gain_[0][m1] * (dims_ == 2 ? centre_gain_[1][m2] : 1.0);
      e1_hat[idx] = minus_i * k1 * phi_hat;
      if (dims_ == 2) e2_hat[idx] = minus_i * k2 * phi_hat;
    }
  }
}

ElectricField PoissonSolver::solve(const DensityField& density) const {
  ElectricField field;
  field.n = n_;
  const std::size_t nodes = static_cast<std::size_t>(n_[0]) * n_[1];

  double charge = 0.0;
  double measure = 1.0;
  for (int d = 0; d < dims_; ++d) measure *= length_[d];
  for (int i2 = 0; i2 < n_[1]; ++i2) {
    const double w2 = dims_ == 2 ? grid_.weight(1, i2) : 1.0;
    for (int i1 = 0; i1 < n_[0]; ++i1) charge += density.rho[i1 + static_cast<std::size_t>(n_[0]) * i2] * grid_.weight(0, i1) * w2;
  }
  field.neutrality_defect = charge / measure - 1.0;

  tracked_vector<std::complex<double>> e1_hat;
  tracked_vector<std::complex<double>> e2_hat;
  field_modes(density, e1_hat, e2_hat);
  const double norm = 1.0 / static_cast<double>(static_cast<std::size_t>(m_[0]) * m_[1]);

  if (grid_.method() == Method::spline) {
    transform_.inverse(e1_hat, e1_hat);
    field.e1.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) field.e1[i] = e1_hat[i].real() * norm;
    if (dims_ == 2) {
      transform_.inverse(e2_hat, e2_hat);
      field.e2.resize(nodes);
      for (std::size_t i = 0; i < nodes; ++i) field.e2[i] = e2_hat[i].real() * norm;
    }
    return field;
  }

  // Fourier series of E at the Gauss nodes, separably: first along x2, then x1
  auto evaluate = [&](const tracked_vector<std::complex<double>>& hat, tracked_vector<double>& out) {
    out.assign(nodes, 0.0);
    tracked_vector<std::complex<double>> partial(static_cast<std::size_t>(m_[0]) * n_[1]);
    for (int i2 = 0; i2 < n_[1]; ++i2) {
      for (int m1 = 0; m1 < m_[0]; ++m1) {
        std::complex<double> acc = 0.0;
        if (dims_ == 2) {
          const std::complex<double>* p2 = phase_[1].data() + static_cast<std::size_t>(i2) * m_[1];
          for (int m2 = 0; m2 < m_[1]; ++m2) acc += hat[m1 + static_cast<std::size_t>(m_[0]) * m2] * p2[m2];
        } else {
          acc = hat[m1];
        }
        partial[m1 + static_cast<std::size_t>(m_[0]) * i2] = acc;
      }
    }
    for (int i2 = 0; i2 < n_[1]; ++i2) {
      for (int i1 = 0; i1 < n_[0]; ++i1) {
        const std::complex<double>* p1 = phase_[0].data() + static_cast<std::size_t>(i1) * m_[0];
        double acc = 0.0;
        for (int m1 = 0; m1 < m_[0]; ++m1) acc += (partial[m1 + static_cast<std::size_t>(m_[0]) * i2] * p1[m1]).real();
        out[i1 + static_cast<std::size_t>(n_[0]) * i2] = acc * norm;
      }
    }
  };
  evaluate(e1_hat, field.e1);
  if (dims_ == 2) evaluate(e2_hat, field.e2);
  return field;
}

ElectricField solve_poisson(const GridSpec& grid, const DensityField& density) {
  return PoissonSolver(grid).solve(density);
}

double electric_energy(const GridSpec& grid, const ElectricField& field) {
  const int sd = grid.space_dims();
  double energy = 0.0;
  for (int i2 = 0; i2 < field.n[1]; ++i2) {
    const double w2 = sd == 2 ? grid.weight(1, i2) : 1.0;
    for (int i1 = 0; i1 < field.n[0]; ++i1) {
      const std::size_t i = i1 + static_cast<std::size_t>(field.n[0]) * i2;
      double e_sq = field.e1[i] * field.e1[i];
      if (!field.e2.empty()) e_sq += field.e2[i] * field.e2[i];
      energy += e_sq * grid.weight(0, i1) * w2;
    }
  }
  return 0.5 * energy;
}

}  // namespace vlasov
