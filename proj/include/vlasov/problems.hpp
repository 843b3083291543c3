#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vlasov/grid.hpp"

namespace vlasov {

enum class ProblemName { landau2d, landau4d, twostream4d };

std::string to_string(ProblemName name);

/// Initial-value problem: perturbed Maxwellian (Landau damping) or two counter-streaming beams.
struct ProblemSpec {
  ProblemName name = ProblemName::landau4d;
  double epsilon = 0.5;
  double k = 0.5;
  double v0 = 0.0;
  std::vector<Axis> domain;  // counts are placeholders; make_grid sets them

  int dimension() const { return static_cast<int>(domain.size()); }

  /// f(0, z) at a phase-space point z = (x..., v...).
  double initial_value(std::span<const double> z) const;

  static ProblemSpec landau2d();
  static ProblemSpec landau4d();
  static ProblemSpec twostream4d();
};

ProblemSpec make_problem(std::string_view name);

/// Grid on the problem domain with `dof` degrees of freedom per axis. For dG
/// the cell count is dof/(degree+1) rounded to nearest, so the realised dof
/// can differ from the request when it is not a multiple of degree+1.
GridSpec make_grid(const ProblemSpec& problem, Method method, int dg_degree, std::span<const int> dof);
GridSpec make_grid(const ProblemSpec& problem, Method method, int dg_degree, int dof);

/// Nodal values of the initial condition.
DistributionField initialize(const ProblemSpec& problem, const GridSpec& grid, const LayoutDescriptor& layout,
                             int workers = 1);

}  // namespace vlasov
