#pragma once

#include <span>
#include <vector>

namespace vlasov::spline {

/// Cubic B-spline S(x) of support [-2h, 2h]; S(0) = 2/3, S(+-h) = 1/6.
double bspline_kernel(double x, double h);

/// Weights omega_k of the interpolating periodic spline sum_k omega_k S(x - x_k).
struct SplineCoefficients {
  std::vector<double> omega;
  double h = 1.0;
  double x0 = 0.0;

  double operator()(double x) const;
};

/// Solver for (1/6) cyclic-tridiag(1,4,1) omega = u of a fixed size.
///
/// Thomas factors of the rank-one-modified matrix and the Sherman-Morrison
/// correction vector are computed once, so each solve is two O(n) sweeps.
class PeriodicSplineSolver {
 public:
  explicit PeriodicSplineSolver(int n);

  int size() const { return n_; }

  // omega may not alias values
  void solve(std::span<const double> values, std::span<double> omega) const;

 private:
  int n_;
  std::vector<double> upper_;      // modified super-diagonal c'_i
  std::vector<double> inv_pivot_;  // 1 / (b_i - c'_{i-1})
  std::vector<double> z_;          // A'^{-1} u for the rank-one vector u
  double v_last_ = 0.0;            // beta / gamma
  double correction_denominator_ = 1.0;
};

SplineCoefficients build_spline(std::span<const double> values, double h, double x0);

/// Scratch doubles needed by advect_line for a line of n points.
inline std::size_t advect_scratch_size(std::size_t n) { return 2 * n + 3; }

/// out_i = s(x_i - shift) for the periodic interpolating spline s of `in`.
void advect_line(std::span<const double> in, std::span<double> out, double shift, double h,
                 const PeriodicSplineSolver& solver, std::span<double> scratch);

std::vector<double> advect_line_spline(std::span<const double> line, double shift, double h);

}  // namespace vlasov::spline
