#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vlasov/memory.hpp"

namespace vlasov {

inline constexpr int max_dims = 4;

/// Per-axis multi-index. Unused trailing entries stay zero for 2D grids.
using Index = std::array<int, max_dims>;

enum class AxisKind : std::uint8_t { space = 0, velocity = 1 };

/// One periodic phase-space direction; `count` is points (spline) or cells (dG).
struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  int count = 4;
  AxisKind kind = AxisKind::space;

  double length() const { return upper - lower; }
  double spacing() const { return (upper - lower) / count; }
};

enum class Method : std::uint8_t { spline = 0, dg = 1 };

std::string to_string(Method method);

/// Phase-space grid: x-axes first, then v-axes (1x1v or 2x2v).
class GridSpec {
 public:
  GridSpec(std::vector<Axis> axes, Method method, int dg_degree = 0);

  int dimension() const { return static_cast<int>(axes_.size()); }
  int space_dims() const { return dimension() / 2; }
  const Axis& axis(int a) const { return axes_[a]; }
  const std::vector<Axis>& axes() const { return axes_; }
  Method method() const { return method_; }
  int dg_degree() const { return dg_degree_; }

  /// 1 for spline, degree+1 for dG.
  int nodes_per_cell() const { return nodes_per_cell_; }
  int dof(int a) const { return axes_[a].count * nodes_per_cell_; }
  std::size_t size() const;

  /// Coordinate of dof `i` along axis `a` (grid point or Gauss node).
  double node(int a, int i) const;
  /// Quadrature weight of dof `i` along axis `a`: h, or h*w_j for dG.
  double weight(int a, int i) const;

  /// Reference nodes/weights in [0,1] per cell ({0}/{1} for spline).
  const std::vector<double>& reference_nodes() const { return ref_nodes_; }
  const std::vector<double>& reference_weights() const { return ref_weights_; }

  /// Axis index of the velocity conjugate to space axis d (and vice versa).
  int velocity_axis(int d) const { return d + space_dims(); }

  bool operator==(const GridSpec& other) const;

 private:
  std::vector<Axis> axes_;
  Method method_;
  int dg_degree_;
  int nodes_per_cell_;
  std::vector<double> ref_nodes_;
  std::vector<double> ref_weights_;
};

enum class LayoutStrategy : std::uint8_t { transpose = 0, strided = 1 };

std::string to_string(LayoutStrategy strategy);

/// Physical storage order. dim_order[0] is the fastest-varying axis.
struct LayoutDescriptor {
  LayoutStrategy strategy = LayoutStrategy::strided;
  std::vector<int> dim_order;
  std::vector<std::size_t> strides;  // indexed by axis
  int cache_block = 8;

  /// x1 fastest, v-axes slowest.
  static LayoutDescriptor canonical(const GridSpec& grid, LayoutStrategy strategy, int cache_block = 8);
  static LayoutDescriptor ordered(const GridSpec& grid, std::vector<int> dim_order, LayoutStrategy strategy,
                                  int cache_block = 8);

  bool is_canonical() const;
};

/// Nodal values of f with an explicit storage layout.
class DistributionField {
 public:
  DistributionField(GridSpec grid, LayoutDescriptor layout);

  const GridSpec& grid() const { return grid_; }
  const LayoutDescriptor& layout() const { return layout_; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  RealBuffer& storage() { return data_; }

  std::size_t offset(const Index& index) const;
  double& at(const Index& index) { return data_[offset(index)]; }
  double at(const Index& index) const { return data_[offset(index)]; }

  void fill(double value);

  /// Physically reorders the data to a new dim_order; values are moved, not recomputed.
  void relayout(const std::vector<int>& dim_order);

  /// Replaces storage with a buffer already laid out in `layout` (same grid and size).
  void adopt(RealBuffer&& data, LayoutDescriptor layout);

  /// Declares that the current storage already holds data in `layout`.
  void reinterpret(LayoutDescriptor layout);

  /// Copy of the values in canonical order (x1 fastest, v-last slowest).
  std::vector<double> canonical_values() const;

 private:
  GridSpec grid_;
  LayoutDescriptor layout_;
  RealBuffer data_;
};

/// Enumerates the lines along one axis in storage order of the remaining axes.
class LineEnumerator {
 public:
  LineEnumerator(const GridSpec& grid, const LayoutDescriptor& layout, int axis);

  std::size_t count() const { return count_; }
  int length() const { return length_; }
  std::size_t stride() const { return stride_; }

  /// Base offset of line `ordinal` and the full multi-index (entry of `axis` is 0).
  std::size_t locate(std::size_t ordinal, Index& where) const;

 private:
  int axis_;
  int length_;
  std::size_t stride_;
  std::size_t count_;
  std::vector<int> other_axes_;  // in storage order, fastest first
  std::vector<int> other_counts_;
  std::vector<std::size_t> other_strides_;
};

/// Out-of-place permutation of `src` (laid out as `from`) into `dst` (laid out as `to`).
void permute_layout(const GridSpec& grid, std::span<const double> src, const LayoutDescriptor& from,
                    std::span<double> dst, const LayoutDescriptor& to, int workers = 1);

}  // namespace vlasov
