#include "vlasov/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "vlasov/evaluate.hpp"
#include "vlasov/memory.hpp"

namespace vlasov {

std::string MethodChoice::label() const {
  return method == Method::spline ? "spline" : "dg" + std::to_string(dg_degree + 1);
}

MethodChoice MethodChoice::parse(const std::string& label) {
  if (label == "spline") return {Method::spline, 0};
  if (label.size() > 2 && label.compare(0, 2, "dg") == 0) {
    const std::string digits = label.substr(2);
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int order = std::stoi(digits);
      if (order >= 1 && order <= dg::max_nodes) return {Method::dg, order - 1};
    }
  }
  throw std::invalid_argument("unknown method '" + label + "' (expected spline or dgN, N = 1..9)");
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string diagnostics_csv_header() {
  return "time,electric_energy,mass,l1_norm,l2_norm,kinetic_energy,total_energy";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  return format_real(r.time) + "," + format_real(r.electric_energy) + "," + format_real(r.mass) + "," +
         format_real(r.l1) + "," + format_real(r.l2) + "," + format_real(r.kinetic_energy) + "," +
         format_real(r.total_energy);
}

BenchResult bench_step(const RunConfig& config, int steps) {
  if (steps < 3) throw std::invalid_argument("bench_step: need at least 3 timed steps");
  BenchResult result;
  result.method = {config.grid.method(), config.grid.dg_degree()};
  result.dof = config.grid.dof(0);
  result.layout = config.layout.strategy;
  result.workers = config.workers;

  const std::size_t baseline = memory::current_bytes();
  memory::reset_peak();
  {
    DistributionField f = initialize(config.problem, config.grid, config.layout, config.workers);
    StrangStepper stepper(config.grid, config.workers, config.backend);
    using clock = std::chrono::steady_clock;
    for (int i = 0; i < 2 + steps; ++i) {
      const auto start = clock::now();
      stepper.step(f, config.tau, i * config.tau);
      const std::chrono::duration<double> elapsed = clock::now() - start;
      if (i >= 2) result.step_seconds.push_back(elapsed.count());
    }
  }
  result.peak_bytes = memory::peak_bytes() - baseline;

  std::vector<double> sorted = result.step_seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  result.time_per_step_s = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return result;
}

std::string bench_csv_header() { return "method,dof,layout,workers,time_per_step_s,peak_bytes"; }

std::string bench_csv_row(const BenchResult& r) {
  return r.method.label() + "," + std::to_string(r.dof) + "," + to_string(r.layout) + "," +
         std::to_string(r.workers) + "," + format_real(r.time_per_step_s) + "," + std::to_string(r.peak_bytes);
}

namespace {

// time-step index of each evaluation time; all must be whole steps
std::vector<long> evaluation_steps(const std::vector<double>& t_eval, double tau) {
  std::vector<long> steps;
  for (double t : t_eval) steps.push_back(step_count(tau, t));
  return steps;
}

}  // namespace

std::vector<ConvergencePoint> convergence_study(const ConvergenceRequest& request,
                                                const std::function<void(const std::string&)>& progress) {
  if (request.methods.empty() || request.dofs.empty() || request.t_eval.empty()) {
    throw std::invalid_argument("convergence_study: methods, dofs and t_eval must be non-empty");
  }
  const int max_dof = *std::max_element(request.dofs.begin(), request.dofs.end());
  if (request.reference_dof < 4 * max_dof) {
    throw std::invalid_argument("convergence_study: reference_dof must be at least 4 * max(dofs)");
  }
  const std::vector<long> eval_steps = evaluation_steps(request.t_eval, request.tau);
  const double t_max = *std::max_element(request.t_eval.begin(), request.t_eval.end());
  const int dims = request.problem.dimension();

  auto make_config = [&](const GridSpec& grid) {
    RunConfig config;
    config.problem = request.problem;
    config.grid = grid;
    config.tau = request.tau;
    config.t_end = t_max;
    config.diag_every = std::numeric_limits<int>::max();
    config.layout = LayoutDescriptor::canonical(
        grid, grid.method() == Method::spline ? LayoutStrategy::transpose : LayoutStrategy::strided);
    config.snapshot_times = request.t_eval;
    config.workers = request.workers;
    return config;
  };

  // reference values in canonical order, per evaluation step
  const GridSpec ref_grid = make_grid(request.problem, Method::spline, 0, request.reference_dof);
  if (progress) progress("reference: spline, dof " + std::to_string(request.reference_dof));
  std::map<long, std::vector<double>> reference;
  run(make_config(ref_grid), [&](double time, const DistributionField& f) {
    reference[std::lround(time / request.tau)] = f.canonical_values();
  });

  // reference points in canonical order
  std::vector<std::vector<double>> coords(dims);
  for (int a = 0; a < dims; ++a) {
    for (int i = 0; i < ref_grid.dof(a); ++i) coords[a].push_back(ref_grid.node(a, i));
  }
  const std::size_t total = ref_grid.size();

  std::vector<ConvergencePoint> points;
  for (const MethodChoice& choice : request.methods) {
    for (int dof : request.dofs) {
      const GridSpec grid = make_grid(request.problem, choice.method, choice.dg_degree, dof);
      if (progress) progress(choice.label() + ", dof " + std::to_string(grid.dof(0)));
      std::map<long, double> errors;
      run(make_config(grid), [&](double time, const DistributionField& f) {
        const long step = std::lround(time / request.tau);
        const std::vector<double>& ref = reference.at(step);
        const FieldEvaluator evaluate(f);
        double err = 0.0;
        double norm = 0.0;
#pragma omp parallel for schedule(static) reduction(max : err, norm) num_threads(std::max(1, request.workers))
        for (std::size_t k = 0; k < total; ++k) {
          std::array<double, max_dims> z{};
          std::size_t rest = k;
          for (int a = 0; a < dims; ++a) {
            const std::size_t n = coords[a].size();
            z[a] = coords[a][rest % n];
            rest /= n;
          }
          const double value = evaluate(std::span<const double>(z.data(), dims));
          err = std::max(err, std::abs(value - ref[k]));
          norm = std::max(norm, std::abs(ref[k]));
        }
        errors[step] = norm > 0.0 ? err / norm : err;
      });
      for (std::size_t i = 0; i < request.t_eval.size(); ++i) {
        points.push_back({choice, grid.dof(0), request.t_eval[i], errors.at(eval_steps[i])});
      }
    }
  }
  return points;
}

double matched_dof_ratio(const std::vector<ConvergencePoint>& points, const std::string& method,
                         const std::string& baseline, double t) {
  auto curve = [&](const std::string& label) {
    std::vector<std::pair<double, double>> c;  // (log dof, log error)
    for (const ConvergencePoint& p : points) {
      if (p.method.label() == label && std::abs(p.t - t) < 1e-9 && p.error_inf_rel > 0.0) {
        c.emplace_back(std::log(p.dof), std::log(p.error_inf_rel));
      }
    }
    std::sort(c.begin(), c.end());
    return c;
  };
  const auto target = curve(method);
  const auto base = curve(baseline);
  double log_sum = 0.0;
  int count = 0;
  for (const auto& [log_dof, log_err] : base) {
    for (std::size_t i = 0; i + 1 < target.size(); ++i) {
      const double e0 = target[i].second;
      const double e1 = target[i + 1].second;
      if (log_err > std::max(e0, e1) || log_err < std::min(e0, e1) || e0 == e1) continue;
      const double s = (log_err - e0) / (e1 - e0);
      const double log_match = target[i].first + s * (target[i + 1].first - target[i].first);
      log_sum += log_match - log_dof;
      ++count;
      break;
    }
  }
  return count ? std::exp(log_sum / count) : std::numeric_limits<double>::quiet_NaN();
}

std::string convergence_csv_header() { return "method,dof,t,error_inf_rel"; }

std::string convergence_csv_row(const ConvergencePoint& p) {
  return p.method.label() + "," + std::to_string(p.dof) + "," + format_real(p.t) + "," + format_real(p.error_inf_rel);
}

}  // namespace vlasov
