// Acceptance criteria. Usage: acceptance <criterion>|all
// Each criterion prints one PASS/FAIL line; the exit status is nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "vlasov/bench.hpp"
#include "vlasov/dg.hpp"
#include "vlasov/driver.hpp"
#include "vlasov/field_solve.hpp"
#include "vlasov/spline.hpp"

using namespace vlasov;

namespace {

constexpr double pi = std::numbers::pi;

bool report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

void write_records(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  out << diagnostics_csv_header() << "\n";
  for (const DiagnosticsRecord& r : records) out << diagnostics_csv_row(r) << "\n";
}

bool kernel_oracle() {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> degree_dist(0, 3);
  std::uniform_int_distribution<int> q_dist(-12, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  double dg_error = 0.0;
  for (int instance = 0; instance < 20; ++instance) {
    const int degree = degree_dist(rng);
    const int np = degree + 1;
    const double h = 0.1 + unit(rng);
    const double shift = (q_dist(rng) + unit(rng)) * h;
    std::vector<double> line(8 * np);
    for (double& x : line) x = value(rng);
    const std::vector<double> out = dg::advect_line_dg(line, shift, h, degree);
    const std::vector<double> ref = oracle::dg_advect(line, shift, h, oracle::gauss_nodes_closed_form(np));
    for (std::size_t i = 0; i < line.size(); ++i) dg_error = std::max(dg_error, std::abs(out[i] - ref[i]));
  }
  double spline_error = 0.0;
  for (int n : {8, 16, 64}) {
    std::vector<double> u(n);
    for (double& x : u) x = value(rng);
    const spline::SplineCoefficients s = spline::build_spline(u, 0.25, 0.0);
    const std::vector<double> ref = oracle::cyclic_spline_weights(u);
    for (int i = 0; i < n; ++i) spline_error = std::max(spline_error, std::abs(s.omega[i] - ref[i]));
  }
  return report("kernel_oracle", dg_error <= 1e-10 && spline_error <= 1e-12,
                fmt("dG max deviation %.3e over 20 instances (<= 1e-10), spline max deviation %.3e (<= 1e-12)",
                    dg_error, spline_error));
}

// max nodal error of one advection of sin(2 pi x) on [0,1) by 0.37 cells
double sine_error(int cells, int degree) {
  const double h = 1.0 / cells;
  const double shift = 0.37 * h;
  std::vector<double> x;
  if (degree < 0) {
    for (int i = 0; i < cells; ++i) x.push_back(i * h);
  } else {
    const dg::GaussRule rule = dg::gauss_nodes(degree + 1);
    for (int c = 0; c < cells; ++c)
      for (double xi : rule.nodes) x.push_back((c + xi) * h);
  }
  std::vector<double> line(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) line[i] = std::sin(2 * pi * x[i]);
  const std::vector<double> out =
      degree < 0 ? spline::advect_line_spline(line, shift, h) : dg::advect_line_dg(line, shift, h, degree);
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(out[i] - std::sin(2 * pi * (x[i] - shift))));
  return err;
}

bool order() {
  struct Sweep {
    std::string label;
    int degree;
    int order;
    std::vector<int> cells;
  };
  const std::vector<Sweep> sweeps = {
      {"spline", -1, 4, {16, 32, 64, 128}},
      {"dg2", 1, 2, {8, 16, 32, 64}},
      {"dg3", 2, 3, {8, 16, 32, 64}},
      {"dg4", 3, 4, {8, 16, 32, 64}},
      {"dg6", 5, 6, {4, 8, 16, 32}},
  };
  bool ok = true;
  std::string detail;
  for (const Sweep& s : sweeps) {
    const double target = std::pow(2.0, s.order);
    detail += s.label + " ratios";
    double previous = sine_error(s.cells[0], s.degree);
    for (std::size_t i = 1; i < s.cells.size(); ++i) {
      const double err = sine_error(s.cells[i], s.degree);
      const double ratio = previous / err;
      ok = ok && ratio >= 0.65 * target && ratio <= 1.35 * target;
      detail += fmt(" %.2f", ratio);
      previous = err;
    }
    detail += fmt(" (target %g +-35%%)%s", target, &s == &sweeps.back() ? "" : "; ");
  }
  return report("order", ok, detail);
}

GridSpec square(Method method, double length, int count, int degree) {
  return GridSpec({{0.0, length, count, AxisKind::space},
                   {0.0, length, count, AxisKind::space},
                   {-6.0, 6.0, count, AxisKind::velocity},
                   {-6.0, 6.0, count, AxisKind::velocity}},
                  method, degree);
}

bool poisson() {
  using Fn = std::function<double(double, double)>;
  struct Case {
    std::string name;
    double length;
    Fn rho, e1, e2;
  };
  const double eps = 1e-3, k = 0.2;
  const std::vector<Case> cases = {
      {"single mode", 4 * pi, [](double x, double) { return 1 + 0.5 * std::cos(0.5 * x); },
       [](double x, double) { return std::sin(0.5 * x); }, [](double, double) { return 0.0; }},
      {"uniform", 4 * pi, [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
       [](double, double) { return 0.0; }},
      {"two-mode", 10 * pi, [=](double x, double y) { return 1 + eps * std::cos(k * x) * std::cos(k * y); },
       [=](double x, double y) { return eps / (2 * k) * std::sin(k * x) * std::cos(k * y); },
       [=](double x, double y) { return eps / (2 * k) * std::cos(k * x) * std::sin(k * y); }},
  };
  double worst = 0.0;
  for (const Case& c : cases) {
    for (int degree : {-1, 1, 3, 5}) {
      const GridSpec g = degree < 0 ? square(Method::spline, c.length, 32, 0) : square(Method::dg, c.length, 8, degree);
      DensityField d;
      d.n = {g.dof(0), g.dof(1)};
      for (int j = 0; j < d.n[1]; ++j)
        for (int i = 0; i < d.n[0]; ++i) d.rho.push_back(c.rho(g.node(0, i), g.node(1, j)));
      for (TransformBackend backend : {TransformBackend::fftw, TransformBackend::direct}) {
        const ElectricField e = PoissonSolver(g, backend).solve(d);
        for (int j = 0; j < d.n[1]; ++j)
          for (int i = 0; i < d.n[0]; ++i) {
            const double x = g.node(0, i), y = g.node(1, j);
            const std::size_t at = i + static_cast<std::size_t>(d.n[0]) * j;
            worst = std::max({worst, std::abs(e.e1[at] - c.e1(x, y)), std::abs(e.e2[at] - c.e2(x, y))});
          }
      }
    }
  }
  return report("poisson", worst <= 1e-11,
                fmt("max |E - E_exact| = %.3e over 3 cases x {spline, dG2, dG4, dG6} x 2 transforms (<= 1e-11)", worst));
}

RunConfig landau4d_config(const MethodChoice& m, int dof, double t_end) {
  RunConfig c;
  c.problem = ProblemSpec::landau4d();
  c.grid = make_grid(c.problem, m.method, m.dg_degree, dof);
  c.tau = 0.1;
  c.t_end = t_end;
  c.layout = LayoutDescriptor::canonical(c.grid, m.method == Method::dg ? LayoutStrategy::strided
                                                                          : LayoutStrategy::transpose);
  return c;
}

bool conservation() {
  bool ok = true;
  std::string detail;
  for (const MethodChoice m : {MethodChoice{Method::spline, 0}, MethodChoice{Method::dg, 3}}) {
    const RunResult r = run(landau4d_config(m, 32, 10.0));
    write_records("acceptance_conservation_" + m.label() + ".csv", r.records);
    const DiagnosticsRecord& first = r.records.front();
    double mass_drift = 0.0, energy_drift = 0.0, l2_rise = -1.0;
    for (std::size_t n = 0; n < r.records.size(); ++n) {
      const DiagnosticsRecord& rec = r.records[n];
      mass_drift = std::max(mass_drift, std::abs(rec.mass - first.mass) / first.mass);
      energy_drift = std::max(energy_drift, std::abs(rec.total_energy - first.total_energy) / first.total_energy);
      if (n > 0) l2_rise = std::max(l2_rise, (rec.l2 - r.records[n - 1].l2) / r.records[n - 1].l2);
    }
    const bool l2_ok = m.method != Method::dg || l2_rise <= 1e-12;
    ok = ok && r.steps == 100 && mass_drift <= 1e-10 && energy_drift <= 1e-2 && l2_ok;
    detail += fmt("%s: mass drift %.2e (<= 1e-10), energy drift %.2e (<= 1e-2), max step L2 change %+.2e%s%s",
                  m.label().c_str(), mass_drift, energy_drift, l2_rise,
                  m.method == Method::dg ? " (<= 1e-12)" : "", m.method == Method::dg ? "" : "; ");
  }
  return report("conservation", ok, detail);
}

bool dof_convergence() {
  ConvergenceRequest request;
  request.problem = ProblemSpec::landau2d();
  request.methods = {MethodChoice{Method::spline, 0}, MethodChoice{Method::dg, 3}, MethodChoice{Method::dg, 5}};
  request.dofs = {64, 128, 256, 512};
  request.t_eval = {10.0, 50.0};
  request.reference_dof = 2048;
  request.tau = 0.1;
  const std::vector<ConvergencePoint> points = convergence_study(request);
  {
    std::ofstream out("acceptance_fig1.csv");
    out << convergence_csv_header() << "\n";
    for (const ConvergencePoint& p : points) out << convergence_csv_row(p) << "\n";
  }
  bool monotone = true;
  double min_late = INFINITY;
  std::string detail;
  for (const MethodChoice& m : request.methods) {
    std::vector<ConvergencePoint> early;
    for (const ConvergencePoint& p : points) {
      if (p.method.label() != m.label()) continue;
      if (p.t == 10.0) early.push_back(p);
      if (p.t == 50.0) min_late = std::min(min_late, p.error_inf_rel);
    }
    std::sort(early.begin(), early.end(), [](const auto& a, const auto& b) { return a.dof < b.dof; });
    detail += m.label() + " t=10 errors";
    for (std::size_t i = 0; i < early.size(); ++i) {
      detail += fmt(" %.2e@%d", early[i].error_inf_rel, early[i].dof);
      if (i > 0 && !(early[i].error_inf_rel < early[i - 1].error_inf_rel)) monotone = false;
    }
    detail += "; ";
  }
  const double ratio = matched_dof_ratio(points, "dg6", "spline", 10.0);
  const bool ok = monotone && ratio >= 1.2 && ratio <= 2.0 && min_late > 0.1;
  detail += fmt("monotone %s, matched-dof ratio dg6/spline %.3f (in [1.2, 2.0]), min t=50 error %.3f (> 0.1)",
                monotone ? "yes" : "no", ratio, min_late);
  return report("dof_convergence", ok, detail);
}

struct GrowthMetrics {
  double w0 = 0.0, w_min = 0.0, w_max = 0.0;
  double t_min = 0.0, t_max = 0.0, onset = NAN;
};

// W oscillates through near-zero troughs, so phases are read off the trailing
// envelope: max of W over the preceding 10 time units (longer than the
// oscillation period)
GrowthMetrics growth(const std::vector<DiagnosticsRecord>& records) {
  constexpr double window = 10.0;
  const std::size_t count = records.size();
  std::vector<double> envelope(count);
  for (std::size_t n = 0, first = 0; n < count; ++n) {
    while (records[first].time < records[n].time - window - 1e-9) ++first;
    double w = 0.0;
    for (std::size_t m = first; m <= n; ++m) w = std::max(w, records[m].electric_energy);
    envelope[n] = w;
  }
  GrowthMetrics g;
  g.w0 = records.front().electric_energy;
  std::size_t peak = 0;
  for (std::size_t n = 0; n < count; ++n)
    if (records[n].electric_energy > records[peak].electric_energy) peak = n;
  std::size_t low = 0;
  for (std::size_t n = 0; n <= peak; ++n)
    if (envelope[n] < envelope[low]) low = n;
  g.w_max = records[peak].electric_energy;
  g.t_max = records[peak].time;
  g.w_min = envelope[low];
  g.t_min = records[low].time;
  for (std::size_t n = low; n <= peak; ++n) {
    if (records[n].electric_energy >= 10.0 * g.w_min) {
      g.onset = records[n].time;
      break;
    }
  }
  return g;
}

bool twostream() {
  GrowthMetrics metrics[2];
  const MethodChoice methods[2] = {MethodChoice{Method::dg, 3}, MethodChoice{Method::spline, 0}};
  for (int i = 0; i < 2; ++i) {
    RunConfig c;
    c.problem = ProblemSpec::twostream4d();
    c.grid = make_grid(c.problem, methods[i].method, methods[i].dg_degree, 32);
    c.tau = 0.1;
    c.t_end = 300.0;
    c.layout = LayoutDescriptor::canonical(c.grid, i == 0 ? LayoutStrategy::strided : LayoutStrategy::transpose);
    const RunResult r = run(c);
    write_records("acceptance_twostream_" + methods[i].label() + ".csv", r.records);
    metrics[i] = growth(r.records);
  }
  const GrowthMetrics& dg = metrics[0];
  const GrowthMetrics& sp = metrics[1];
  const double fall = dg.w0 / dg.w_min;
  const double rise = dg.w_max / dg.w_min;
  const bool later = std::isnan(sp.onset) || sp.onset > dg.onset;
  const bool ok = fall >= 100.0 && rise >= 1e3 && dg.onset >= 150.0 && dg.onset <= 200.0 && dg.t_max <= 240.0 &&
                  later && sp.w_max < dg.w_max;
  return report("twostream",
                ok,
                fmt("dg4 (envelope): fall %.3g (>= 100) to t=%.1f, rise %.3g (>= 1e3), onset t=%.1f (in [150, 200]), "
                    "saturation t=%.1f (<= 240), peak %.3e; spline: onset t=%.1f (later than dg4), peak %.3e "
                    "(lower than dg4)",
                    fall, dg.t_min, rise, dg.onset, dg.t_max, dg.w_max, sp.onset, sp.w_max));
}

bool cost_ratio() {
  const BenchResult spline_result = bench_step(landau4d_config(MethodChoice{Method::spline, 0}, 64, 0.0), 5);
  const BenchResult dg_result = bench_step(landau4d_config(MethodChoice{Method::dg, 3}, 64, 0.0), 5);
  {
    std::ofstream out("acceptance_table1.csv");
    out << bench_csv_header() << "\n" << bench_csv_row(spline_result) << "\n" << bench_csv_row(dg_result) << "\n";
  }
  const double time_ratio = spline_result.time_per_step_s / dg_result.time_per_step_s;
  const double memory_ratio = static_cast<double>(spline_result.peak_bytes) / static_cast<double>(dg_result.peak_bytes);
  return report("cost_ratio", time_ratio >= 1.2 && memory_ratio >= 2.0,
                fmt("time per step spline %.3f s / dg4 %.3f s = %.3f (>= 1.2); peak bytes %zu / %zu = %.4f (>= 2.0)",
                    spline_result.time_per_step_s, dg_result.time_per_step_s, time_ratio, spline_result.peak_bytes,
                    dg_result.peak_bytes, memory_ratio));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("vlasov_determinism_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> configs = {
      "problem = landau2d\ndof = 64\nt_end = 5\n",
      "problem = landau4d\ndof = 16\nt_end = 2\n",
      "problem = landau4d\nmethod = dg\ndg_order = 4\ndof = 16\nt_end = 2\n",
      "problem = twostream4d\nmethod = dg\ndg_order = 3\ndof = 15\nt_end = 2\nlayout = transpose\n",
  };
  bool ok = true;
  int compared = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    {
      std::ofstream out(dir / "case.cfg");
      out << configs[c];
    }
    std::vector<std::string> outputs;
    for (const char* variant : {"workers=1", "workers=1", "workers=4"}) {
      const std::string csv = "out" + std::to_string(outputs.size()) + ".csv";
      const std::string cmd = "cd '" + dir.string() + "' && '" VLASOV_CLI "' run case.cfg --set " + variant +
                              " --set out_csv=" + csv + " > cli.log 2>&1";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) ok = false;
      outputs.push_back(read_file(dir / csv));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    ok = ok && same;
    compared += 2;
  }
  std::filesystem::remove_all(dir);
  return report("determinism", ok,
                fmt("%d CSV comparisons over %zu configs (repeat and workers 1 vs 4): %s", compared, configs.size(),
                    ok ? "all byte-identical" : "mismatch or failed run"));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"kernel_oracle", kernel_oracle},
      {"order", order},
      {"poisson", poisson},
      {"conservation", conservation},
      {"dof_convergence", dof_convergence},
      {"twostream", twostream},
      {"cost_ratio", cost_ratio},
      {"determinism", determinism},
  };

  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  bool found = false;
  for (const auto& [name, check] : criteria) {
    if (which != "all" && which != name) continue;
    found = true;
    try {
      ok = check() && ok;
    } catch (const std::exception& e) {
      ok = report(name, false, std::string("exception: ") + e.what()) && ok;
    }
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
    return 2;
  }
  return ok ? 0 : 1;
}
