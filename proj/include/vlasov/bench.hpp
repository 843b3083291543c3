#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vlasov/driver.hpp"

namespace vlasov {

/// Method plus dG degree, labelled "spline" or "dgN" with N = degree + 1.
struct MethodChoice {
  Method method = Method::spline;
  int dg_degree = 0;

  std::string label() const;
  static MethodChoice parse(const std::string& label);
};

struct BenchResult {
  MethodChoice method;
  int dof = 0;
  LayoutStrategy layout = LayoutStrategy::strided;
  int workers = 1;
  double time_per_step_s = 0.0;  // median
  std::size_t peak_bytes = 0;    // tracked allocations above the pre-run level
  std::vector<double> step_seconds;
};

/// Times `steps` Strang steps after two warm-up steps on the config's problem and grid.
BenchResult bench_step(const RunConfig& config, int steps);

std::string bench_csv_header();
std::string bench_csv_row(const BenchResult& result);

struct ConvergencePoint {
  MethodChoice method;
  int dof = 0;  // realised dof per direction
  double t = 0.0;
  double error_inf_rel = 0.0;
};

struct ConvergenceRequest {
  ProblemSpec problem = ProblemSpec::landau2d();
  std::vector<MethodChoice> methods;
  std::vector<int> dofs;
  std::vector<double> t_eval;
  int reference_dof = 0;
  double tau = 0.1;
  int workers = 1;
};

/// Max-norm error at the reference grid points relative to max|reference|,
/// with the reference computed by the spline method at reference_dof.
std::vector<ConvergencePoint> convergence_study(const ConvergenceRequest& request,
                                                const std::function<void(const std::string&)>& progress = {});

/// Dof `method` needs to match the error of `baseline` at time t, relative to
/// the baseline dof: log-log interpolation of the method's error curve at each
/// baseline error inside its range, geometric mean over those points. NaN if
/// no baseline error falls inside the range.
double matched_dof_ratio(const std::vector<ConvergencePoint>& points, const std::string& method,
                         const std::string& baseline, double t);

std::string convergence_csv_header();
std::string convergence_csv_row(const ConvergencePoint& point);

std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& record);

/// Decimal with 17 significant digits (round-trips a double).
std::string format_real(double value);

}  // namespace vlasov
