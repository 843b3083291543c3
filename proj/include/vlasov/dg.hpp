#pragma once

#include <array>
#include <span>
#include <vector>

#include "vlasov/memory.hpp"

namespace vlasov::dg {

inline constexpr int max_degree = 8;
inline constexpr int max_nodes = max_degree + 1;

/// Gauss-Legendre rule mapped to [0,1]. Weights sum to one.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_nodes(int order);

/// Legendre polynomials orthonormal in L2(0,1): phi_k(x) = sqrt(2k+1) P_k(2x-1).
void orthonormal_legendre(double x, std::span<double> values);

/// Values of the Lagrange basis on `nodes` at x. Exact unit vector when x hits a node.
void lagrange_basis(std::span<const double> nodes, double x, std::span<double> values);

/// Translate-and-project operator for one constant shift.
///
/// shift/h = q + alpha with q = floor(shift/h) and alpha in [0,1). Output cell i
/// reads cells i-q-1 (through A) and i-q (through B). Matrices are stored
/// row-major with row stride `nodes`.
struct ProjectionPair {
  int nodes = 1;
  long q = 0;
  double alpha = 0.0;
  std::array<double, max_nodes * max_nodes> a{};
  std::array<double, max_nodes * max_nodes> b{};

  double A(int row, int col) const { return a[row * nodes + col]; }
  double B(int row, int col) const { return b[row * nodes + col]; }
};

/// Builds projection pairs for one degree; per-degree tables are computed once.
///
/// With phi_k the orthonormal Legendre basis and l_m the Lagrange basis on
/// the Gauss nodes xi:
///   A_jm = sum_k phi_k(xi_j) int_0^alpha phi_k(x) l_m(x + 1 - alpha) dx
///   B_jm = sum_k phi_k(xi_j) int_alpha^1 phi_k(x) l_m(x - alpha) dx
/// Both integrals are evaluated exactly by the Gauss rule on each subinterval.
class ProjectionBuilder {
 public:
  explicit ProjectionBuilder(int degree);

  ProjectionPair operator()(double shift, double h) const;

  int degree() const { return nodes_ - 1; }
  const GaussRule& rule() const { return rule_; }

 private:
  void lagrange(double x, double* values) const;
  void legendre(double x, double* values) const;

  int nodes_;
  GaussRule rule_;
  std::array<double, max_nodes> barycentric_{};
  std::array<double, max_nodes> norm_{};
  std::array<double, max_nodes * max_nodes> phi_nodes_{};
};

ProjectionPair projection_pair(double shift, double h, int degree);

/// Applies the two-cell update to a periodic line of cells * (degree+1) nodal values.
void advect_line(std::span<const double> in, std::span<double> out, const ProjectionPair& pair);

/// Compact store of many projection pairs (one per shift), e.g. one per velocity
/// node for x-advection or one per spatial node for v-advection.
class PairTable {
 public:
  PairTable() = default;
  PairTable(int nodes, std::size_t entries);

  std::size_t size() const { return q_.size(); }
  void set(std::size_t entry, const ProjectionPair& pair);
  /// Same result as advect_line with the stored pair.
  void apply(std::size_t entry, std::span<const double> in, std::span<double> out) const;

 private:
  int nodes_ = 1;
  tracked_vector<long> q_;
  tracked_vector<double> alpha_;
  tracked_vector<double> matrices_;  // per entry: A then B, row-major
};

std::vector<double> advect_line_dg(std::span<const double> line, double shift, double h, int degree);

}  // namespace vlasov::dg
