// vlasov: run / bench / convergence driver. Exit codes: 0 ok, 2 config or
// usage error, 3 numerical abort, 1 anything else.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vlasov/bench.hpp"
#include "vlasov/config.hpp"
#include "vlasov/snapshot.hpp"

namespace {

using namespace vlasov;

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

std::string meta_path(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".meta");
  return p.string();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_meta(const std::string& csv, const std::string& command, const Settings& settings,
                const std::string& notes) {
  std::ofstream meta = open_output(meta_path(csv));
  meta << "# vlasov " << VLASOV_VERSION << "\n";
  meta << "command = " << command << "\n";
  meta << describe(settings);
  meta << notes;
}

std::string snapshot_name(const std::string& prefix, double time) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "_t%g.vlf", time);
  return prefix + buffer;
}

int cmd_run(const Settings& settings) {
  const std::string csv = settings.out_csv.empty() ? "diagnostics.csv" : settings.out_csv;
  const RunConfig config = make_run_config(settings);
  std::ofstream out = open_output(csv);
  out << diagnostics_csv_header() << "\n";

  std::vector<std::string> snapshots;
  auto sink = [&](double time, const DistributionField& f) {
    const std::string name = snapshot_name(settings.snapshot_prefix, time);
    write_snapshot(name, f);
    snapshots.push_back(name);
  };
  auto warn = [](const std::string& message) { std::cerr << "warning: " << message << "\n"; };

  std::ostringstream notes;
  notes << "realised_dof = ";
  for (int a = 0; a < config.grid.dimension(); ++a) notes << (a ? "," : "") << config.grid.dof(a);
  notes << "\n";

  int status = 0;
  RunResult result;
  try {
    result = run(config, sink, warn);
  } catch (const NumericalAbort& e) {
    std::cerr << "error: " << e.what() << "\n";
    notes << "aborted = " << e.substep() << " at t = " << format_real(e.time()) << "\n";
    status = exit_numerical;
  }
  for (const DiagnosticsRecord& r : result.records) out << diagnostics_csv_row(r) << '\n';
  notes << "neutrality_warning = " << (result.neutrality_warned ? "yes" : "no") << "\n";
  for (const std::string& s : snapshots) notes << "snapshot = " << s << "\n";
  write_meta(csv, "run", settings, notes.str());
  return status;
}

int cmd_bench(const Settings& settings) {
  const std::string csv = settings.out_csv.empty() ? "bench.csv" : settings.out_csv;
  std::ofstream out = open_output(csv);
  out << bench_csv_header() << "\n";
  std::ostringstream notes;
  notes << "peak_bytes = high-water mark of tracked buffers above the pre-run level, field included\n";
  notes << "time_per_step_s = median of " << settings.steps << " steps after 2 warm-up steps\n";
  for (const MethodChoice& method : settings.methods) {
    for (int dof : settings.dofs) {
      RunConfig config = make_run_config(settings, method, dof);
      std::cerr << "bench " << method.label() << " dof " << config.grid.dof(0) << "\n";
      const BenchResult r = bench_step(config, settings.steps);
      out << bench_csv_row(r) << "\n" << std::flush;
    }
  }
  write_meta(csv, "bench", settings, notes.str());
  return 0;
}

int cmd_convergence(const Settings& settings) {
  const std::string csv = settings.out_csv.empty() ? "convergence.csv" : settings.out_csv;
  if (settings.t_eval.empty()) throw ConfigError("convergence requires t_eval");
  ConvergenceRequest request;
  request.problem = make_problem(settings.problem);
  request.methods = settings.methods;
  request.dofs = settings.dofs;
  request.t_eval = settings.t_eval;
  request.tau = settings.tau;
  request.workers = settings.workers;
  const int max_dof = *std::max_element(settings.dofs.begin(), settings.dofs.end());
  request.reference_dof = settings.reference_dof ? settings.reference_dof : 4 * max_dof;
  if (request.reference_dof < 4 * max_dof) throw ConfigError("reference_dof must be at least 4 * max(dofs)");

  const std::vector<ConvergencePoint> points =
      convergence_study(request, [](const std::string& msg) { std::cerr << "convergence " << msg << "\n"; });
  std::ofstream out = open_output(csv);
  out << convergence_csv_header() << "\n";
  for (const ConvergencePoint& p : points) out << convergence_csv_row(p) << "\n";

  std::ostringstream notes;
  notes << "reference = spline at " << request.reference_dof << " dof per direction (highest affordable resolution)\n";
  for (const MethodChoice& m : settings.methods) {
    if (m.method != Method::dg) continue;
    for (double t : settings.t_eval) {
      notes << "alpha[" << m.label() << ",t=" << format_real(t)
            << "] = " << format_real(matched_dof_ratio(points, m.label(), "spline", t))
            << "  # dof_dg / dof_spline at matched error\n";
    }
  }
  write_meta(csv, "convergence", settings, notes.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vlasov-Poisson solver: spline and semi-Lagrangian dG advection"};
  app.set_version_flag("--version", std::string("vlasov ") + VLASOV_VERSION);
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "key = value config file")->required();
    sub->add_option("--set", overrides, "override one key (key=value)");
    return sub;
  };
  CLI::App* run_cmd = add("run", "time-integrate a problem and write diagnostics CSV");
  CLI::App* bench_cmd = add("bench", "time and memory per step");
  CLI::App* conv_cmd = add("convergence", "error versus dof against a spline reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    KeyValues kv = parse_key_values_file(config_path);
    for (const std::string& o : overrides) override_key_value(kv, o);
    const Settings settings = resolve_settings(kv);
    if (run_cmd->parsed()) return cmd_run(settings);
    if (bench_cmd->parsed()) return cmd_bench(settings);
    if (conv_cmd->parsed()) return cmd_convergence(settings);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericalAbort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
