#include "vlasov/evaluate.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vlasov/dg.hpp"
#include "vlasov/spline.hpp"

namespace vlasov {

namespace {

constexpr double snap_tolerance = 8.0 * std::numeric_limits<double>::epsilon();

// Position in units of h from the axis origin, wrapped into [0, count).
double wrapped_position(const Axis& axis, double x) {
  const double period = axis.length();
  double p = std::fmod(x - axis.lower, period);
  if (p < 0.0) p += period;
  double t = p / axis.spacing();
  if (t >= axis.count) t -= axis.count;
  return t;
}

}  // namespace

FieldEvaluator::FieldEvaluator(const DistributionField& field)
    : grid_(field.grid()), values_(field.canonical_values()) {
  const int d = grid_.dimension();
  strides_.resize(d);
  std::size_t stride = 1;
  for (int a = 0; a < d; ++a) {
    strides_[a] = stride;
    stride *= static_cast<std::size_t>(grid_.dof(a));
  }
  if (grid_.method() != Method::spline) return;

  coeffs_ = values_;
  std::vector<double> line;
  std::vector<double> omega;
  for (int a = 0; a < d; ++a) {
    const int n = grid_.dof(a);
    const spline::PeriodicSplineSolver solver(n);
    line.resize(n);
    omega.resize(n);
    const std::size_t lines = coeffs_.size() / n;
    const std::size_t s = strides_[a];
    for (std::size_t l = 0; l < lines; ++l) {
      // lines along a: base = (l % s) + (l / s) * s * n
      const std::size_t base = (l % s) + (l / s) * s * n;
      for (int k = 0; k < n; ++k) line[k] = coeffs_[base + k * s];
      solver.solve(line, omega);
      for (int k = 0; k < n; ++k) coeffs_[base + k * s] = omega[k];
    }
  }
}

double FieldEvaluator::operator()(std::span<const double> point) const {
  const int d = grid_.dimension();
  if (static_cast<int>(point.size()) != d) throw std::invalid_argument("FieldEvaluator: point dimension mismatch");

  if (grid_.method() == Method::spline) {
    std::array<std::array<double, 4>, max_dims> w{};
    std::array<std::array<std::size_t, 4>, max_dims> idx{};
    std::array<std::size_t, max_dims> node{};
    bool on_node = true;
    for (int a = 0; a < d; ++a) {
      const Axis& ax = grid_.axis(a);
      const long n = ax.count;
      const double t = wrapped_position(ax, point[a]);
      long j = static_cast<long>(std::floor(t));
      double frac = t - static_cast<double>(j);
      if (frac > 1.0 - snap_tolerance) {
        frac = 0.0;
        j += 1;
      }
      if (frac < snap_tolerance) frac = 0.0;
      j %= n;
      node[a] = static_cast<std::size_t>(j);
      on_node = on_node && frac == 0.0;
      for (int k = -1; k <= 2; ++k) {
        w[a][k + 1] = spline::bspline_kernel(frac - k, 1.0);
        long i = (j + k) % n;
        if (i < 0) i += n;
        idx[a][k + 1] = static_cast<std::size_t>(i);
      }
    }
    if (on_node) {
      std::size_t off = 0;
      for (int a = 0; a < d; ++a) off += node[a] * strides_[a];
      return values_[off];
    }
    double value = 0.0;
    if (d == 2) {
      for (int k1 = 0; k1 < 4; ++k1) {
        double partial = 0.0;
        for (int k0 = 0; k0 < 4; ++k0) partial += w[0][k0] * coeffs_[idx[0][k0] + idx[1][k1] * strides_[1]];
        value += w[1][k1] * partial;
      }
      return value;
    }
    for (int k3 = 0; k3 < 4; ++k3) {
      for (int k2 = 0; k2 < 4; ++k2) {
        for (int k1 = 0; k1 < 4; ++k1) {
          const std::size_t base = idx[1][k1] * strides_[1] + idx[2][k2] * strides_[2] + idx[3][k3] * strides_[3];
          double partial = 0.0;
          for (int k0 = 0; k0 < 4; ++k0) partial += w[0][k0] * coeffs_[idx[0][k0] + base];
          value += w[1][k1] * w[2][k2] * w[3][k3] * partial;
        }
      }
    }
    return value;
  }

  const int np = grid_.nodes_per_cell();
  const std::vector<double>& nodes = grid_.reference_nodes();
  std::array<std::array<double, dg::max_nodes>, max_dims> lag{};
  std::array<std::size_t, max_dims> first{};
  for (int a = 0; a < d; ++a) {
    const Axis& ax = grid_.axis(a);
    const double t = wrapped_position(ax, point[a]);
    long cell = static_cast<long>(std::floor(t));
    if (cell >= ax.count) cell = ax.count - 1;
    double xi = t - static_cast<double>(cell);
    for (int j = 0; j < np; ++j) {
      if (std::abs(xi - nodes[j]) < snap_tolerance) xi = nodes[j];
    }
    dg::lagrange_basis(nodes, xi, std::span<double>(lag[a].data(), np));
    first[a] = static_cast<std::size_t>(cell) * np;
  }
  double value = 0.0;
  if (d == 2) {
    for (int j1 = 0; j1 < np; ++j1) {
      double partial = 0.0;
      const std::size_t base = (first[1] + j1) * strides_[1] + first[0];
      for (int j0 = 0; j0 < np; ++j0) partial += lag[0][j0] * values_[base + j0];
      value += lag[1][j1] * partial;
    }
    return value;
  }
  for (int j3 = 0; j3 < np; ++j3) {
    for (int j2 = 0; j2 < np; ++j2) {
      for (int j1 = 0; j1 < np; ++j1) {
        const std::size_t base = (first[1] + j1) * strides_[1] + (first[2] + j2) * strides_[2] +
                                 (first[3] + j3) * strides_[3] + first[0];
        double partial = 0.0;
        for (int j0 = 0; j0 < np; ++j0) partial += lag[0][j0] * values_[base + j0];
        value += lag[1][j1] * lag[2][j2] * lag[3][j3] * partial;
      }
    }
  }
  return value;
}

double evaluate_at(const DistributionField& field, std::span<const double> point) {
  return FieldEvaluator(field)(point);
}

}  // namespace vlasov
