#include "vlasov/grid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "vlasov/dg.hpp"

namespace vlasov {

std::string to_string(Method method) { return method == Method::spline ? "spline" : "dg"; }

std::string to_string(LayoutStrategy strategy) {
  return strategy == LayoutStrategy::transpose ? "transpose" : "strided";
}

GridSpec::GridSpec(std::vector<Axis> axes, Method method, int dg_degree)
    : axes_(std::move(axes)), method_(method), dg_degree_(method == Method::dg ? dg_degree : 0) {
  const int d = static_cast<int>(axes_.size());
  if (d != 2 && d != 4) throw std::invalid_argument("GridSpec: expected 2 or 4 axes");
  for (int a = 0; a < d; ++a) {
    const Axis& ax = axes_[a];
    if (!(ax.upper > ax.lower)) throw std::invalid_argument("GridSpec: axis upper must exceed lower");
    if (ax.count < 4) throw std::invalid_argument("GridSpec: axis count must be at least 4");
    const AxisKind expected = a < d / 2 ? AxisKind::space : AxisKind::velocity;
    if (ax.kind != expected) throw std::invalid_argument("GridSpec: axes must be ordered x-axes then v-axes");
  }
  if (method_ == Method::dg) {
    if (dg_degree_ < 0 || dg_degree_ > dg::max_degree) {
      throw std::invalid_argument("GridSpec: dg degree must be in [0, 8]");
    }
    const dg::GaussRule rule = dg::gauss_nodes(dg_degree_ + 1);
    ref_nodes_ = rule.nodes;
    ref_weights_ = rule.weights;
  } else {
    ref_nodes_ = {0.0};
    ref_weights_ = {1.0};
  }
  nodes_per_cell_ = static_cast<int>(ref_nodes_.size());
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dimension(); ++a) n *= static_cast<std::size_t>(dof(a));
  return n;
}

double GridSpec::node(int a, int i) const {
  const Axis& ax = axes_[a];
  const int cell = i / nodes_per_cell_;
  const int j = i % nodes_per_cell_;
  return ax.lower + (cell + ref_nodes_[j]) * ax.spacing();
}

double GridSpec::weight(int a, int i) const { return axes_[a].spacing() * ref_weights_[i % nodes_per_cell_]; }

bool GridSpec::operator==(const GridSpec& other) const {
  if (method_ != other.method_ || dg_degree_ != other.dg_degree_ || axes_.size() != other.axes_.size()) return false;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& l = axes_[a];
    const Axis& r = other.axes_[a];
    if (l.lower != r.lower || l.upper != r.upper || l.count != r.count || l.kind != r.kind) return false;
  }
  return true;
}

LayoutDescriptor LayoutDescriptor::canonical(const GridSpec& grid, LayoutStrategy strategy, int cache_block) {
  std::vector<int> order(grid.dimension());
  std::iota(order.begin(), order.end(), 0);
  return ordered(grid, std::move(order), strategy, cache_block);
}

LayoutDescriptor LayoutDescriptor::ordered(const GridSpec& grid, std::vector<int> dim_order, LayoutStrategy strategy,
                                           int cache_block) {
  const int d = grid.dimension();
  std::vector<int> sorted = dim_order;
  std::sort(sorted.begin(), sorted.end());
  for (int a = 0; a < d; ++a) {
    if (static_cast<int>(sorted.size()) != d || sorted[a] != a) {
      throw std::invalid_argument("LayoutDescriptor: dim_order is not a permutation of the axes");
    }
  }
  if (cache_block < 1) throw std::invalid_argument("LayoutDescriptor: cache_block must be positive");
  LayoutDescriptor layout;
  layout.strategy = strategy;
  layout.cache_block = cache_block;
  layout.strides.assign(d, 0);
  std::size_t stride = 1;
  for (int a : dim_order) {
    layout.strides[a] = stride;
    stride *= static_cast<std::size_t>(grid.dof(a));
  }
  layout.dim_order = std::move(dim_order);
  return layout;
}

bool LayoutDescriptor::is_canonical() const {
  for (std::size_t i = 0; i < dim_order.size(); ++i) {
    if (dim_order[i] != static_cast<int>(i)) return false;
  }
  return true;
}

DistributionField::DistributionField(GridSpec grid, LayoutDescriptor layout)
    : grid_(std::move(grid)), layout_(std::move(layout)), data_(grid_.size(), 0.0) {
  if (static_cast<int>(layout_.dim_order.size()) != grid_.dimension()) {
    throw std::invalid_argument("DistributionField: layout does not match grid dimension");
  }
}

std::size_t DistributionField::offset(const Index& index) const {
  std::size_t off = 0;
  for (int a = 0; a < grid_.dimension(); ++a) off += static_cast<std::size_t>(index[a]) * layout_.strides[a];
  return off;
}

void DistributionField::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void DistributionField::relayout(const std::vector<int>& dim_order) {
  LayoutDescriptor target = LayoutDescriptor::ordered(grid_, dim_order, layout_.strategy, layout_.cache_block);
  if (target.dim_order == layout_.dim_order) return;
  RealBuffer moved(data_.size());
  permute_layout(grid_, data_, layout_, moved, target);
  data_ = std::move(moved);
  layout_ = std::move(target);
}

void DistributionField::adopt(RealBuffer&& data, LayoutDescriptor layout) {
  if (data.size() != grid_.size()) throw std::invalid_argument("DistributionField::adopt: size mismatch");
  data_ = std::move(data);
  layout_ = std::move(layout);
}

void DistributionField::reinterpret(LayoutDescriptor layout) {
  if (static_cast<int>(layout.dim_order.size()) != grid_.dimension()) {
    throw std::invalid_argument("DistributionField::reinterpret: layout does not match grid dimension");
  }
  layout_ = std::move(layout);
}

std::vector<double> DistributionField::canonical_values() const {
  const LayoutDescriptor target =
      LayoutDescriptor::canonical(grid_, layout_.strategy, layout_.cache_block);
  std::vector<double> out(data_.size());
  if (layout_.dim_order == target.dim_order) {
    std::copy(data_.begin(), data_.end(), out.begin());
  } else {
    permute_layout(grid_, data_, layout_, out, target);
  }
  return out;
}

LineEnumerator::LineEnumerator(const GridSpec& grid, const LayoutDescriptor& layout, int axis)
    : axis_(axis), length_(grid.dof(axis)), stride_(layout.strides.at(axis)) {
  if (axis < 0 || axis >= grid.dimension()) throw std::invalid_argument("LineEnumerator: axis out of range");
  count_ = 1;
  for (int a : layout.dim_order) {
    if (a == axis) continue;
    other_axes_.push_back(a);
    other_counts_.push_back(grid.dof(a));
    other_strides_.push_back(layout.strides[a]);
    count_ *= static_cast<std::size_t>(grid.dof(a));
  }
}

std::size_t LineEnumerator::locate(std::size_t ordinal, Index& where) const {
  where.fill(0);
  std::size_t base = 0;
  for (std::size_t k = 0; k < other_axes_.size(); ++k) {
    const std::size_t n = static_cast<std::size_t>(other_counts_[k]);
    const std::size_t i = ordinal % n;
    ordinal /= n;
    where[other_axes_[k]] = static_cast<int>(i);
    base += i * other_strides_[k];
  }
  return base;
}

void permute_layout(const GridSpec& grid, std::span<const double> src, const LayoutDescriptor& from,
                    std::span<double> dst, const LayoutDescriptor& to, int workers) {
  if (src.size() != grid.size() || dst.size() != grid.size()) {
    throw std::invalid_argument("permute_layout: buffer size mismatch");
  }
  // Destination lines along its fastest axis are contiguous; read them from
  // the source in blocks so neighbouring lines share source cache lines.
  const int axis = to.dim_order[0];
  const LineEnumerator dst_lines(grid, to, axis);
  const std::size_t n = static_cast<std::size_t>(dst_lines.length());
  const std::size_t src_stride = from.strides[axis];
  const std::size_t block = static_cast<std::size_t>(std::max(1, to.cache_block));
  const std::size_t lines = dst_lines.count();
  const std::size_t blocks = (lines + block - 1) / block;
  const double* s = src.data();
  double* d = dst.data();

#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::size_t b = 0; b < blocks; ++b) {
    std::array<std::size_t, 64> src_base{};
    std::array<std::size_t, 64> dst_base{};
    const std::size_t first = b * block;
    const std::size_t count = std::min(block, lines - first);
    for (std::size_t done = 0; done < count; done += 64) {
      const std::size_t chunk = std::min<std::size_t>(64, count - done);
      Index where{};
      for (std::size_t l = 0; l < chunk; ++l) {
        dst_base[l] = dst_lines.locate(first + done + l, where);
        std::size_t off = 0;
        for (int a = 0; a < grid.dimension(); ++a) off += static_cast<std::size_t>(where[a]) * from.strides[a];
        src_base[l] = off;
      }
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < chunk; ++l) d[dst_base[l] + k] = s[src_base[l] + k * src_stride];
      }
    }
  }
}

}  // namespace vlasov
