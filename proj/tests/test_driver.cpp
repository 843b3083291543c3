#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "vlasov/driver.hpp"
#include "vlasov/spline.hpp"

using namespace vlasov;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> run_to(const ProblemSpec& p, const GridSpec& g, double tau, double t_end) {
  DistributionField f = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
  StrangStepper stepper(g);
  const long steps = step_count(tau, t_end);
  for (long s = 0; s < steps; ++s) stepper.step(f, tau, s * tau);
  return f.canonical_values();
}

}  // namespace

TEST_SUITE("driver") {
  TEST_CASE("initial conditions") {
    const ProblemSpec l4 = ProblemSpec::landau4d();
    const std::vector<double> origin = {0.0, 0.0, 0.0, 0.0};
    CHECK(std::abs(l4.initial_value(origin) - 1.0 / pi) < 1e-15);
    const ProblemSpec ts = ProblemSpec::twostream4d();
    const double expected = 1.001 / (8 * pi) * 4 * std::exp(-5.76);
    CHECK(std::abs(ts.initial_value(origin) - expected) < 1e-15 * expected * 10);
    CHECK(ts.epsilon == 1e-3);
    CHECK(ts.k == 0.2);
    CHECK(ts.v0 == 2.4);
    CHECK(std::abs(ts.domain[0].upper - 10 * pi) < 1e-15);

    // landau2d mass on a fine grid
    const ProblemSpec l2 = ProblemSpec::landau2d();
    const GridSpec g = make_grid(l2, Method::spline, 0, 256);
    const ElectricField none;
    DistributionField f = initialize(l2, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    StrangStepper stepper(g);
    const DiagnosticsRecord r = diagnostics(f, stepper.electric_field(f), 0.0);
    CHECK(std::abs(r.mass - 4 * pi) < 1e-7);

    CHECK_THROWS(initialize(l4, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided)));
    CHECK_THROWS(make_problem("landau3d"));
  }

  TEST_CASE("make_grid rounds dG cell counts") {
    const GridSpec g = make_grid(ProblemSpec::landau2d(), Method::dg, 5, 64);
    CHECK(g.axis(0).count == 11);
    CHECK(g.dof(0) == 66);
    const GridSpec s = make_grid(ProblemSpec::landau4d(), Method::spline, 0, 12);
    CHECK(s.dof(3) == 12);
  }

  TEST_CASE("diagnostics of simple fields") {
    const GridSpec g = make_grid(ProblemSpec::landau4d(), Method::dg, 1, 8);
    DistributionField f(g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    f.fill(0.5);
    ElectricField e;
    e.n = {g.dof(0), g.dof(1)};
    e.e1.assign(64, 0.0);
    e.e2.assign(64, 0.0);
    const DiagnosticsRecord r = diagnostics(f, e, 0.0, 3);
    const double volume = 16 * pi * pi * 144;
    CHECK(std::abs(r.mass - 0.5 * volume) < 1e-12 * volume);
    CHECK(std::abs(r.l2 - 0.5 * std::sqrt(volume)) < 1e-12 * std::sqrt(volume));
    CHECK(r.l1 == r.mass);

    // landau4d initial state: kinetic = mass, electric = 8 pi^2 eps^2 / k^2
    for (Method method : {Method::spline, Method::dg}) {
      const ProblemSpec p = ProblemSpec::landau4d();
      const std::vector<int> dof = {16, 16, 64, 64};
      const GridSpec lg = make_grid(p, method, 3, dof);
      for (LayoutStrategy strategy : {LayoutStrategy::strided, LayoutStrategy::transpose}) {
        DistributionField lf = initialize(p, lg, LayoutDescriptor::canonical(lg, strategy));
        const DiagnosticsRecord d = diagnostics(lf, StrangStepper(lg).electric_field(lf), 0.0);
        CHECK(std::abs(d.mass - 16 * pi * pi) < 1e-6);
        CHECK(d.l1 == d.mass);
        CHECK(std::abs(d.kinetic_energy - d.mass) < 1e-6 * d.mass);  // |v| > 6 tail is ~7e-8
        CHECK(std::abs(d.electric_energy - 8 * pi * pi) < 1e-6);
        CHECK(d.total_energy == d.kinetic_energy + d.electric_energy);
      }
    }
  }

  TEST_CASE("x-independent data without field is unchanged") {
    ProblemSpec p = ProblemSpec::landau4d();
    p.epsilon = 0.0;
    for (Method method : {Method::spline, Method::dg}) {
      const GridSpec g = make_grid(p, method, 2, 12);
      DistributionField f = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::transpose));
      const std::vector<double> before = f.canonical_values();
      StrangStepper stepper(g, 2);
      stepper.step(f, 0.1);
      CHECK(max_diff(before, f.canonical_values()) < 1e-13);
    }
  }

  TEST_CASE("one step conserves mass; dG does not increase L2") {
    const ProblemSpec p = ProblemSpec::landau4d();
    for (Method method : {Method::spline, Method::dg}) {
      const GridSpec g = make_grid(p, method, 3, 16);
      DistributionField f = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
      StrangStepper stepper(g);
      const DiagnosticsRecord a = diagnostics(f, stepper.electric_field(f), 0.0);
      stepper.step(f, 0.1);
      const DiagnosticsRecord b = diagnostics(f, stepper.electric_field(f), 0.1);
      CHECK(std::abs(b.mass - a.mass) <= 1e-12 * a.mass);
      if (method == Method::dg) CHECK(b.l2 <= a.l2 * (1 + 1e-12));
    }
  }

  TEST_CASE("splitting is second order in tau") {
    const ProblemSpec p = ProblemSpec::landau2d();
    const GridSpec g = make_grid(p, Method::spline, 0, 64);
    const std::vector<double> a = run_to(p, g, 0.2, 1.0);
    const std::vector<double> b = run_to(p, g, 0.1, 1.0);
    const std::vector<double> c = run_to(p, g, 0.05, 1.0);
    const double ratio = max_diff(a, b) / max_diff(b, c);
    CHECK(ratio >= 3.3);
    CHECK(ratio <= 4.7);
  }

  TEST_CASE("forward then backward step returns close to the start") {
    const ProblemSpec p = ProblemSpec::landau2d();
    const GridSpec g = make_grid(p, Method::spline, 0, 64);
    const double tau = 0.1;
    DistributionField f = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    const std::vector<double> start = f.canonical_values();

    // error of one exact-characteristic half step in x
    DistributionField one = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    StrangStepper stepper(g);
    stepper.advect_space(one, 0, 0.5 * tau);
    // and of one v step with the field of the initial data
    DistributionField vstep = initialize(p, g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    const ElectricField e0 = stepper.electric_field(vstep);
    stepper.advect_velocity(vstep, 0, e0, tau);
    double single = 0.0;
    for (int i = 0; i < g.dof(0); ++i)
      for (int j = 0; j < g.dof(1); ++j) {
        const std::vector<double> zx = {g.node(0, i) - g.node(1, j) * 0.5 * tau, g.node(1, j)};
        single = std::max(single, std::abs(one.at({i, j, 0, 0}) - p.initial_value(zx)));
        const std::vector<double> zv = {g.node(0, i), g.node(1, j) - e0.e1[i] * tau};
        single = std::max(single, std::abs(vstep.at({i, j, 0, 0}) - p.initial_value(zv)));
      }

    stepper.advect_space(f, 0, 0.5 * tau);
    const ElectricField e = stepper.electric_field(f);
    stepper.advect_velocity(f, 0, e, tau);
    stepper.advect_space(f, 0, 0.5 * tau);
    stepper.advect_space(f, 0, -0.5 * tau);
    stepper.advect_velocity(f, 0, e, -tau);
    stepper.advect_space(f, 0, -0.5 * tau);
    CHECK(max_diff(start, f.canonical_values()) <= 10 * single);
  }

  TEST_CASE("non-finite data aborts with the sub-step named") {
    const GridSpec g = make_grid(ProblemSpec::landau2d(), Method::dg, 1, 16);
    DistributionField f = initialize(ProblemSpec::landau2d(), g, LayoutDescriptor::canonical(g, LayoutStrategy::strided));
    f.at({3, 4, 0, 0}) = std::numeric_limits<double>::infinity();
    StrangStepper stepper(g);
    try {
      stepper.step(f, 0.1, 2.5);
      FAIL("expected an abort");
    } catch (const NumericalAbort& e) {
      CHECK(e.substep() == "x1-advection (first half step)");
      CHECK(e.time() == 2.5);
    }
  }

  TEST_CASE("run cadence, snapshots and determinism") {
    RunConfig config;
    config.problem = ProblemSpec::landau2d();
    config.grid = make_grid(config.problem, Method::dg, 3, 32);
    config.layout = LayoutDescriptor::canonical(config.grid, LayoutStrategy::strided);
    config.t_end = 0.0;
    CHECK(run(config).records.size() == 1);

    config.t_end = 1.0;
    config.snapshot_times = {0.0, 0.5};
    std::vector<double> snap_times;
    const RunResult a = run(config, [&](double t, const DistributionField&) { snap_times.push_back(t); });
    CHECK(a.records.size() == 11);
    CHECK(a.steps == 10);
    CHECK(snap_times == std::vector<double>{0.0, 0.5});
    for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].time == i * 0.1);

    config.diag_every = 3;
    CHECK(run(config).records.size() == 4);

    config.diag_every = 1;
    config.workers = 4;
    const RunResult b = run(config);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].electric_energy == b.records[i].electric_energy);
      CHECK(a.records[i].l2 == b.records[i].l2);
      CHECK(a.records[i].total_energy == b.records[i].total_energy);
    }

    config.t_end = 1.05;
    CHECK_THROWS(run(config));
    config.t_end = 1.0;
    config.snapshot_times = {2.0};
    CHECK_THROWS(run(config));
  }

  TEST_CASE("non-neutral initial data warns once") {
    RunConfig config;
    config.problem = ProblemSpec::landau2d();
    config.problem.domain[1] = {-2.0, 2.0, 4, AxisKind::velocity};  // truncated Maxwellian
    config.grid = make_grid(config.problem, Method::spline, 0, 16);
    config.layout = LayoutDescriptor::canonical(config.grid, LayoutStrategy::strided);
    config.t_end = 0.3;
    int warnings = 0;
    const RunResult r = run(config, {}, [&](const std::string&) { ++warnings; });
    CHECK(warnings == 1);
    CHECK(r.neutrality_warned);
  }
}
