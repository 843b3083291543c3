#include "vlasov/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlasov {

std::string to_string(ProblemName name) {
  switch (name) {
    case ProblemName::landau2d: return "landau2d";
    case ProblemName::landau4d: return "landau4d";
    case ProblemName::twostream4d: return "twostream4d";
  }
  return "unknown";
}

double ProblemSpec::initial_value(std::span<const double> z) const {
  constexpr double pi = std::numbers::pi;
  switch (name) {
    case ProblemName::landau2d: {
      const double x = z[0];
      const double v = z[1];
      return (1.0 + epsilon * std::cos(k * x)) * std::exp(-0.5 * v * v) / std::sqrt(2.0 * pi);
    }
    case ProblemName::landau4d: {
      const double v_sq = z[2] * z[2] + z[3] * z[3];
      return (1.0 + epsilon * (std::cos(k * z[0]) + std::cos(k * z[1]))) * std::exp(-0.5 * v_sq) / (2.0 * pi);
    }
    case ProblemName::twostream4d: {
      auto beams = [this](double v) {
        return std::exp(-0.5 * (v - v0) * (v - v0)) + std::exp(-0.5 * (v + v0) * (v + v0));
      };
      const double equilibrium = beams(z[2]) * beams(z[3]) / (8.0 * pi);
      return (1.0 + epsilon * std::cos(k * z[0]) * std::cos(k * z[1])) * equilibrium;
    }
  }
  return 0.0;
}

ProblemSpec ProblemSpec::landau2d() {
  constexpr double pi = std::numbers::pi;
  ProblemSpec p;
  p.name = ProblemName::landau2d;
  p.epsilon = 0.5;
  p.k = 0.5;
  p.domain = {{0.0, 4.0 * pi, 4, AxisKind::space}, {-6.0, 6.0, 4, AxisKind::velocity}};
  return p;
}

ProblemSpec ProblemSpec::landau4d() {
  constexpr double pi = std::numbers::pi;
  ProblemSpec p;
  p.name = ProblemName::landau4d;
  p.epsilon = 0.5;
  p.k = 0.5;
  p.domain = {{0.0, 4.0 * pi, 4, AxisKind::space},
              {0.0, 4.0 * pi, 4, AxisKind::space},
              {-6.0, 6.0, 4, AxisKind::velocity},
              {-6.0, 6.0, 4, AxisKind::velocity}};
  return p;
}

ProblemSpec ProblemSpec::twostream4d() {
  constexpr double pi = std::numbers::pi;
  ProblemSpec p;
  p.name = ProblemName::twostream4d;
  p.epsilon = 1e-3;
  p.k = 0.2;
  p.v0 = 2.4;
  p.domain = {{0.0, 10.0 * pi, 4, AxisKind::space},
              {0.0, 10.0 * pi, 4, AxisKind::space},
              {-6.0, 6.0, 4, AxisKind::velocity},
              {-6.0, 6.0, 4, AxisKind::velocity}};
  return p;
}

ProblemSpec make_problem(std::string_view name) {
  if (name == "landau2d") return ProblemSpec::landau2d();
  if (name == "landau4d") return ProblemSpec::landau4d();
  if (name == "twostream4d") return ProblemSpec::twostream4d();
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

GridSpec make_grid(const ProblemSpec& problem, Method method, int dg_degree, std::span<const int> dof) {
  if (static_cast<int>(dof.size()) != problem.dimension()) {
    throw std::invalid_argument("make_grid: need one dof entry per axis");
  }
  const int np = method == Method::dg ? dg_degree + 1 : 1;
  std::vector<Axis> axes = problem.domain;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (dof[a] < 1) throw std::invalid_argument("make_grid: dof must be positive");
    axes[a].count = std::max(1, static_cast<int>(std::lround(static_cast<double>(dof[a]) / np)));
  }
  return GridSpec(std::move(axes), method, dg_degree);
}

GridSpec make_grid(const ProblemSpec& problem, Method method, int dg_degree, int dof) {
  const std::vector<int> per_axis(problem.dimension(), dof);
  return make_grid(problem, method, dg_degree, per_axis);
}

DistributionField initialize(const ProblemSpec& problem, const GridSpec& grid, const LayoutDescriptor& layout,
                             int workers) {
  if (grid.dimension() != problem.dimension()) {
    throw std::invalid_argument("initialize: grid has " + std::to_string(grid.dimension()) + " axes but " +
                                to_string(problem.name) + " needs " + std::to_string(problem.dimension()));
  }
  DistributionField field(grid, layout);
  const int d = grid.dimension();
  std::vector<std::vector<double>> coords(d);
  for (int a = 0; a < d; ++a) {
    coords[a].resize(grid.dof(a));
    for (int i = 0; i < grid.dof(a); ++i) coords[a][i] = grid.node(a, i);
  }
  const LineEnumerator lines(grid, field.layout(), layout.dim_order[0]);
  const int axis = layout.dim_order[0];
  const std::size_t count = lines.count();
  const int n = lines.length();
  const std::size_t stride = lines.stride();
  double* data = field.data().data();
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
  for (std::size_t l = 0; l < count; ++l) {
    Index where{};
    const std::size_t base = lines.locate(l, where);
    std::array<double, max_dims> z{};
    for (int a = 0; a < d; ++a) z[a] = coords[a][where[a]];
    for (int i = 0; i < n; ++i) {
      z[axis] = coords[axis][i];
      data[base + i * stride] = problem.initial_value(std::span<const double>(z.data(), d));
    }
  }
  return field;
}

}  // namespace vlasov
