#include "vlasov/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vlasov {

namespace {

constexpr std::size_t diagnostics_block = 64;  // lines per partial sum

struct Sums {
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double kinetic = 0.0;
};

}  // namespace

NumericalAbort::NumericalAbort(std::string substep, double time)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "non-finite values after " << substep << " (step starting at t = " << time << ")";
        return msg.str();
      }()),
      substep_(std::move(substep)),
      time_(time) {}

DiagnosticsRecord diagnostics(const DistributionField& field, const ElectricField& e, double time, int workers) {
  const GridSpec& grid = field.grid();
  const int dims = grid.dimension();
  const int axis = field.layout().dim_order[0];
  std::vector<std::vector<double>> weight(dims);
  std::vector<std::vector<double>> v_sq(dims);
  for (int a = 0; a < dims; ++a) {
    weight[a].resize(grid.dof(a));
    v_sq[a].assign(grid.dof(a), 0.0);
    for (int i = 0; i < grid.dof(a); ++i) {
      weight[a][i] = grid.weight(a, i);
      if (grid.axis(a).kind == AxisKind::velocity) v_sq[a][i] = grid.node(a, i) * grid.node(a, i);
    }
  }

  const LineEnumerator lines(grid, field.layout(), axis);
  const std::size_t count = lines.count();
  const int n = lines.length();
  const std::size_t stride = lines.stride();
  const std::size_t blocks = (count + diagnostics_block - 1) / diagnostics_block;
  std::vector<Sums> partial(blocks);
  const double* data = field.data().data();
  const std::vector<double>& w_axis = weight[axis];
  const std::vector<double>& vsq_axis = v_sq[axis];

#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
  for (std::size_t b = 0; b < blocks; ++b) {
    Sums sums;
    const std::size_t end = std::min(count, (b + 1) * diagnostics_block);
    for (std::size_t l = b * diagnostics_block; l < end; ++l) {
      Index where{};
      const std::size_t base = lines.locate(l, where);
      double w_line = 1.0;
      double vsq_line = 0.0;
      for (int a = 0; a < dims; ++a) {
        if (a == axis) continue;
        w_line *= weight[a][where[a]];
        vsq_line += v_sq[a][where[a]];
      }
      Sums line;
      for (int i = 0; i < n; ++i) {
        const double f = data[base + i * stride];
        const double w = w_axis[i];
        line.mass += w * f;
        line.l1 += w * std::abs(f);
        line.l2 += w * f * f;
        line.kinetic += w * (vsq_line + vsq_axis[i]) * f;
      }
      sums.mass += w_line * line.mass;
      sums.l1 += w_line * line.l1;
      sums.l2 += w_line * line.l2;
      sums.kinetic += w_line * line.kinetic;
    }
    partial[b] = sums;
  }

  Sums total;
  for (const Sums& s : partial) {
    total.mass += s.mass;
    total.l1 += s.l1;
    total.l2 += s.l2;
    total.kinetic += s.kinetic;
  }
  DiagnosticsRecord record;
  record.time = time;
  record.electric_energy = electric_energy(grid, e);
  record.mass = total.mass;
  record.l1 = total.l1;
  record.l2 = std::sqrt(total.l2);
  record.kinetic_energy = 0.5 * total.kinetic;
  record.total_energy = record.kinetic_energy + record.electric_energy;
  return record;
}

StrangStepper::StrangStepper(const GridSpec& grid, int workers, TransformBackend backend)
    : grid_(grid), workers_(std::max(1, workers)), poisson_(grid, backend) {
  if (grid.method() == Method::spline) {
    for (int a = 0; a < grid.dimension(); ++a) solvers_.emplace_back(grid.dof(a));
  } else {
    builder_ = std::make_unique<dg::ProjectionBuilder>(grid.dg_degree());
  }
}

ElectricField StrangStepper::electric_field(const DistributionField& f) const {
  return poisson_.solve(compute_density(f, workers_));
}

bool StrangStepper::sweep(DistributionField& f, int axis, std::span<const double> shifts,
                          const std::function<std::size_t(const Index&)>& key, dg::PairTable& pairs) {
  const double h = grid_.axis(axis).spacing();
  const SweepOptions options{workers_, &workspace_};
  LineKernel kernel;
  if (grid_.method() == Method::spline) {
    const spline::PeriodicSplineSolver& solver = solvers_[axis];
    kernel.scratch_size = spline::advect_scratch_size(grid_.dof(axis));
    kernel.apply = [&](std::span<const double> in, std::span<double> out, const Index& where,
                       std::span<double> scratch) {
      spline::advect_line(in, out, shifts[key(where)], h, solver, scratch);
    };
    return line_sweep(f, axis, kernel, options);
  }
  // one projection pair per distinct shift, built before the sweep
  if (pairs.size() != shifts.size()) pairs = dg::PairTable(grid_.nodes_per_cell(), shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) pairs.set(i, (*builder_)(shifts[i], h));
  kernel.apply = [&](std::span<const double> in, std::span<double> out, const Index& where, std::span<double>) {
    pairs.apply(key(where), in, out);
  };
  return line_sweep(f, axis, kernel, options);
}

bool StrangStepper::advect_space(DistributionField& f, int d, double dt) {
  const int va = grid_.velocity_axis(d);
  tracked_vector<double> shifts(grid_.dof(va));
  for (int j = 0; j < grid_.dof(va); ++j) shifts[j] = grid_.node(va, j) * dt;
  return sweep(f, d, shifts, [va](const Index& where) { return static_cast<std::size_t>(where[va]); },
               space_pairs_);
}

bool StrangStepper::advect_velocity(DistributionField& f, int d, const ElectricField& e, double dt) {
  const tracked_vector<double>& component = d == 0 ? e.e1 : e.e2;
  tracked_vector<double> shifts(component.size());
  for (std::size_t i = 0; i < component.size(); ++i) shifts[i] = component[i] * dt;
  const std::size_t n1 = static_cast<std::size_t>(e.n[0]);
  const bool two_d = grid_.space_dims() == 2;
  return sweep(f, grid_.velocity_axis(d), shifts, [n1, two_d](const Index& where) {
    return static_cast<std::size_t>(where[0]) + (two_d ? n1 * where[1] : 0);
  }, velocity_pairs_);
}

void StrangStepper::step(DistributionField& f, double tau, double time) {
  static const char* const x_names[] = {"x1-advection", "x2-advection"};
  static const char* const v_names[] = {"v1-advection", "v2-advection"};
  const int sd = grid_.space_dims();
  for (int d = 0; d < sd; ++d) {
    if (!advect_space(f, d, 0.5 * tau)) throw NumericalAbort(std::string(x_names[d]) + " (first half step)", time);
  }
  const ElectricField e = electric_field(f);
  for (int d = 0; d < sd; ++d) {
    if (!advect_velocity(f, d, e, tau)) throw NumericalAbort(v_names[d], time);
  }
  for (int d = 0; d < sd; ++d) {
    if (!advect_space(f, d, 0.5 * tau)) throw NumericalAbort(std::string(x_names[d]) + " (second half step)", time);
  }
}

long step_count(double tau, double t_end) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  const long steps = std::lround(t_end / tau);
  if (std::abs(steps * tau - t_end) > 1e-9 * std::max(1.0, t_end)) {
    throw std::invalid_argument("t_end is not a whole number of steps of size tau");
  }
  return steps;
}

RunResult run(const RunConfig& config, const SnapshotSink& snapshot, const WarningSink& warn) {
  if (config.diag_every < 1) throw std::invalid_argument("diag_every must be positive");
  RunResult result;
  result.steps = step_count(config.tau, config.t_end);
  std::vector<long> snapshot_steps;
  for (double t : config.snapshot_times) {
    if (t < 0.0 || t > config.t_end + 1e-9 * std::max(1.0, config.t_end)) {
      throw std::invalid_argument("snapshot time outside [0, t_end]");
    }
    snapshot_steps.push_back(std::lround(t / config.tau));
  }

  DistributionField f = initialize(config.problem, config.grid, config.layout, config.workers);
  StrangStepper stepper(config.grid, config.workers, config.backend);

  auto observe = [&](long step) {
    const double time = step * config.tau;
    if (step % config.diag_every == 0) {
      const ElectricField e = stepper.electric_field(f);
      if (!result.neutrality_warned && std::abs(e.neutrality_defect) > neutrality_warning_threshold) {
        result.neutrality_warned = true;
        if (warn) {
          std::ostringstream msg;
          msg << "density is not neutral: mean(rho) - 1 = " << e.neutrality_defect << " at t = " << time
              << "; the k = 0 mode is dropped";
          warn(msg.str());
        }
      }
      result.records.push_back(diagnostics(f, e, time, config.workers));
    }
    if (snapshot && std::find(snapshot_steps.begin(), snapshot_steps.end(), step) != snapshot_steps.end()) {
      snapshot(time, f);
    }
  };

  observe(0);
  for (long s = 1; s <= result.steps; ++s) {
    stepper.step(f, config.tau, (s - 1) * config.tau);
    observe(s);
  }
  return result;
}

}  // namespace vlasov
