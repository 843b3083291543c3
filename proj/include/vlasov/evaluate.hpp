#pragma once

#include <span>
#include <vector>

#include "vlasov/grid.hpp"

namespace vlasov {

/// Point evaluation of the discrete solution represented by a field.
///
/// Spline grids evaluate the tensor-product periodic cubic spline through the
/// nodal values; dG grids evaluate the cell-local tensor Lagrange polynomial.
/// Points are wrapped periodically on every axis. Construction does the
/// per-axis spline solves once, so reuse one evaluator for many points.
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const DistributionField& field);

  double operator()(std::span<const double> point) const;

  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::vector<double> values_;  // canonical nodal values
  std::vector<double> coeffs_;  // canonical tensor spline weights (spline only)
  std::vector<std::size_t> strides_;
};

double evaluate_at(const DistributionField& field, std::span<const double> point);

}  // namespace vlasov
