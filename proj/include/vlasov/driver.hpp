#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlasov/dg.hpp"
#include "vlasov/field_solve.hpp"
#include "vlasov/line_sweep.hpp"
#include "vlasov/problems.hpp"
#include "vlasov/spline.hpp"

namespace vlasov {

struct DiagnosticsRecord {
  double time = 0.0;
  double electric_energy = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double kinetic_energy = 0.0;
  double total_energy = 0.0;
};

/// Quadrature diagnostics of f with the grid's native weights. The reduction
/// runs over fixed blocks of lines in storage order, so the result does not
/// depend on the number of workers.
DiagnosticsRecord diagnostics(const DistributionField& field, const ElectricField& e, double time, int workers = 1);

/// Non-finite values after a sub-step.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(std::string substep, double time);
  const std::string& substep() const { return substep_; }
  double time() const { return time_; }

 private:
  std::string substep_;
  double time_;
};

/// Second-order splitting: half x-advections, field solve, full v-advections,
/// half x-advections. Each advection is a line_sweep along one axis.
class StrangStepper {
 public:
  explicit StrangStepper(const GridSpec& grid, int workers = 1, TransformBackend backend = TransformBackend::fftw);

  /// Advances f by tau; throws NumericalAbort naming the failing sub-step.
  void step(DistributionField& f, double tau, double time = 0.0);

  /// Density and Poisson solve for the current f.
  ElectricField electric_field(const DistributionField& f) const;

  /// f(x, v) <- f(x - v_d dt, v) along space axis d.
  bool advect_space(DistributionField& f, int d, double dt);
  /// f(x, v) <- f(x, v - E_d(x) dt) along velocity axis d.
  bool advect_velocity(DistributionField& f, int d, const ElectricField& e, double dt);

  const GridSpec& grid() const { return grid_; }
  int workers() const { return workers_; }

 private:
  // sweep along `axis` where the shift of a line is shifts[key(where)]
  bool sweep(DistributionField& f, int axis, std::span<const double> shifts,
             const std::function<std::size_t(const Index&)>& key, dg::PairTable& pairs);

  GridSpec grid_;
  int workers_;
  PoissonSolver poisson_;
  std::vector<spline::PeriodicSplineSolver> solvers_;  // per axis, spline only
  std::unique_ptr<dg::ProjectionBuilder> builder_;     // dG only
  dg::PairTable space_pairs_;     // one per velocity node
  dg::PairTable velocity_pairs_;  // one per spatial node
  SweepWorkspace workspace_;
};

struct RunConfig {
  ProblemSpec problem = ProblemSpec::landau2d();
  GridSpec grid{ProblemSpec::landau2d().domain, Method::spline};
  double tau = 0.1;
  double t_end = 0.0;
  LayoutDescriptor layout;
  int diag_every = 1;
  std::vector<double> snapshot_times;
  int workers = 1;
  TransformBackend backend = TransformBackend::fftw;
};

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  long steps = 0;
  bool neutrality_warned = false;
};

using SnapshotSink = std::function<void(double time, const DistributionField& field)>;
using WarningSink = std::function<void(const std::string& message)>;

/// Number of steps for [0, t_end] with step tau; throws if t_end is not a whole number of steps.
long step_count(double tau, double t_end);

RunResult run(const RunConfig& config, const SnapshotSink& snapshot = {}, const WarningSink& warn = {});

}  // namespace vlasov
