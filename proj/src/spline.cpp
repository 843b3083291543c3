#include "vlasov/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace vlasov::spline {

double bspline_kernel(double x, double h) {
  const double r = std::abs(x / h);
  if (r <= 1.0) return (4.0 - 6.0 * r * r + 3.0 * r * r * r) / 6.0;
  if (r <= 2.0) {
    const double t = 2.0 - r;
    return t * t * t / 6.0;
  }
  return 0.0;
}

double SplineCoefficients::operator()(double x) const {
  const long n = static_cast<long>(omega.size());
  const double period = n * h;
  double p = std::fmod(x - x0, period);
  if (p < 0.0) p += period;
  const double t = p / h;
  long j = static_cast<long>(std::floor(t));
  if (j >= n) j -= n;
  const double frac = t - std::floor(t);
  double value = 0.0;
  for (long k = -1; k <= 2; ++k) {
    long idx = (j + k) % n;
    if (idx < 0) idx += n;
    value += omega[idx] * bspline_kernel((frac - static_cast<double>(k)) * h, h);
  }
  return value;
}

PeriodicSplineSolver::PeriodicSplineSolver(int n) : n_(n) {
  if (n < 4) throw std::invalid_argument("PeriodicSplineSolver: need at least 4 points");
  // Work with the integer matrix C = cyclic-tridiag(1,4,1), C omega = 6 u.
  // Rank-one split C = A' + u v^T with u = (gamma,0,..,0,1), v = (1,0,..,0,1/gamma).
  const double gamma = -4.0;
  std::vector<double> diag(n, 4.0);
  diag[0] = 4.0 - gamma;
  diag[n - 1] = 4.0 - 1.0 / gamma;
  v_last_ = 1.0 / gamma;

  upper_.resize(n);
  inv_pivot_.resize(n);
  inv_pivot_[0] = 1.0 / diag[0];
  upper_[0] = inv_pivot_[0];
  for (int i = 1; i < n; ++i) {
    inv_pivot_[i] = 1.0 / (diag[i] - upper_[i - 1]);
    upper_[i] = inv_pivot_[i];
  }

  std::vector<double> rhs(n, 0.0);
  rhs[0] = gamma;
  rhs[n - 1] = 1.0;
  z_.resize(n);
  z_[0] = rhs[0] * inv_pivot_[0];
  for (int i = 1; i < n; ++i) z_[i] = (rhs[i] - z_[i - 1]) * inv_pivot_[i];
  for (int i = n - 2; i >= 0; --i) z_[i] -= upper_[i] * z_[i + 1];
  correction_denominator_ = 1.0 + z_[0] + v_last_ * z_[n - 1];
}

void PeriodicSplineSolver::solve(std::span<const double> values, std::span<double> omega) const {
  const int n = n_;
  if (static_cast<int>(values.size()) != n || static_cast<int>(omega.size()) != n) {
    throw std::invalid_argument("PeriodicSplineSolver::solve: size mismatch");
  }
  const double* u = values.data();
  double* y = omega.data();
  const double* c = upper_.data();
  const double* ip = inv_pivot_.data();
  y[0] = 6.0 * u[0] * ip[0];
  for (int i = 1; i < n; ++i) y[i] = (6.0 * u[i] - y[i - 1]) * ip[i];
  for (int i = n - 2; i >= 0; --i) y[i] -= c[i] * y[i + 1];
  const double factor = (y[0] + v_last_ * y[n - 1]) / correction_denominator_;
  const double* z = z_.data();
  for (int i = 0; i < n; ++i) y[i] -= factor * z[i];
}

SplineCoefficients build_spline(std::span<const double> values, double h, double x0) {
  if (values.size() < 4) throw std::invalid_argument("build_spline: need at least 4 values");
  const PeriodicSplineSolver solver(static_cast<int>(values.size()));
  SplineCoefficients coeffs;
  coeffs.omega.resize(values.size());
  coeffs.h = h;
  coeffs.x0 = x0;
  solver.solve(values, coeffs.omega);
  return coeffs;
}

void advect_line(std::span<const double> in, std::span<double> out, double shift, double h,
                 const PeriodicSplineSolver& solver, std::span<double> scratch) {
  const long n = static_cast<long>(in.size());
  double* omega = scratch.data();
  double* ext = scratch.data() + n;
  solver.solve(in, std::span<double>(omega, n));

  // x_i - shift = x_{i+j} + t h with t in [0,1), identical for every i
  const double r = -shift / h;
  const double rf = std::floor(r);
  double t = r - rf;
  long j = static_cast<long>(std::fmod(rf, static_cast<double>(n)));
  if (t >= 1.0) {
    t = 0.0;
    j += 1;
  }
  j %= n;
  if (j < 0) j += n;

  const double w0 = bspline_kernel(t + 1.0, 1.0);
  const double w1 = bspline_kernel(t, 1.0);
  const double w2 = bspline_kernel(t - 1.0, 1.0);
  const double w3 = bspline_kernel(t - 2.0, 1.0);

  // ext[k] = omega[(k + j - 1) mod n], k = 0..n+2
  long src = j - 1 < 0 ? n - 1 : j - 1;
  for (long k = 0; k < n + 3; ++k) {
    ext[k] = omega[src];
    if (++src == n) src = 0;
  }
  double* o = out.data();
  for (long i = 0; i < n; ++i) {
    o[i] = w0 * ext[i] + w1 * ext[i + 1] + w2 * ext[i + 2] + w3 * ext[i + 3];
  }
}

std::vector<double> advect_line_spline(std::span<const double> line, double shift, double h) {
  const PeriodicSplineSolver solver(static_cast<int>(line.size()));
  std::vector<double> scratch(advect_scratch_size(line.size()));
  std::vector<double> out(line.size());
  advect_line(line, out, shift, h, solver, scratch);
  return out;
}

}  // namespace vlasov::spline
