#include "vlasov/line_sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vlasov {

namespace {

bool finite_line(std::span<const double> line) {
  double acc = 0.0;
  for (double x : line) acc += x * 0.0;
  return acc == 0.0;
}

bool sweep_strided(DistributionField& field, int axis, const LineKernel& kernel, int workers) {
  const LayoutDescriptor& layout = field.layout();
  const LineEnumerator lines(field.grid(), layout, axis);
  const std::size_t n = static_cast<std::size_t>(lines.length());
  const std::size_t stride = lines.stride();
  const std::size_t block = static_cast<std::size_t>(layout.cache_block);
  const std::size_t count = lines.count();
  const std::size_t blocks = (count + block - 1) / block;
  double* data = field.data().data();
  std::atomic<bool> finite{true};

#pragma omp parallel num_threads(workers)
  {
    RealBuffer in(block * n);
    RealBuffer out(block * n);
    RealBuffer scratch(kernel.scratch_size);
    std::vector<std::size_t> base(block);
    std::vector<Index> where(block);
    bool local_finite = true;

#pragma omp for schedule(static)
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t first = b * block;
      const std::size_t m = std::min(block, count - first);
      for (std::size_t l = 0; l < m; ++l) base[l] = lines.locate(first + l, where[l]);

      if (stride == 1) {
        for (std::size_t l = 0; l < m; ++l) std::copy_n(data + base[l], n, in.data() + l * n);
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t off = k * stride;
          for (std::size_t l = 0; l < m; ++l) in[l * n + k] = data[base[l] + off];
        }
      }

      for (std::size_t l = 0; l < m; ++l) {
        std::span<double> o(out.data() + l * n, n);
        kernel.apply(std::span<const double>(in.data() + l * n, n), o, where[l], scratch);
        local_finite = local_finite && finite_line(o);
      }

      if (stride == 1) {
        for (std::size_t l = 0; l < m; ++l) std::copy_n(out.data() + l * n, n, data + base[l]);
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t off = k * stride;
          for (std::size_t l = 0; l < m; ++l) data[base[l] + off] = out[l * n + k];
        }
      }
    }
    if (!local_finite) finite.store(false, std::memory_order_relaxed);
  }
  return finite.load();
}

bool sweep_transposed(DistributionField& field, int axis, const LineKernel& kernel, const SweepOptions& options) {
  const GridSpec& grid = field.grid();
  const LayoutDescriptor current = field.layout();
  const int workers = options.workers;
  std::atomic<bool> finite{true};

  if (current.dim_order.front() == axis) {
    // lines already contiguous: compute into a line buffer, copy back
    const LineEnumerator lines(grid, current, axis);
    const std::size_t n = static_cast<std::size_t>(lines.length());
    const std::size_t count = lines.count();
    double* data = field.data().data();
#pragma omp parallel num_threads(workers)
    {
      RealBuffer out(n);
      RealBuffer scratch(kernel.scratch_size);
      bool local_finite = true;
      Index where{};
#pragma omp for schedule(static)
      for (std::size_t l = 0; l < count; ++l) {
        const std::size_t base = lines.locate(l, where);
        kernel.apply(std::span<const double>(data + base, n), out, where, scratch);
        local_finite = local_finite && finite_line(out);
        std::copy_n(out.data(), n, data + base);
      }
      if (!local_finite) finite.store(false, std::memory_order_relaxed);
    }
    return finite.load();
  }

  std::vector<int> order{axis};
  for (int a : current.dim_order) {
    if (a != axis) order.push_back(a);
  }
  LayoutDescriptor target = LayoutDescriptor::ordered(grid, order, current.strategy, current.cache_block);

  RealBuffer local;
  RealBuffer& staging = options.workspace ? options.workspace->transpose_buffer : local;
  if (staging.size() != grid.size()) {
    staging.clear();
    staging.shrink_to_fit();
    staging.resize(grid.size());
  }
  permute_layout(grid, field.data(), current, staging, target, workers);

  // the field's own storage receives the output in the new layout
  const LineEnumerator lines(grid, target, axis);
  const std::size_t n = static_cast<std::size_t>(lines.length());
  const std::size_t count = lines.count();
  const double* src = staging.data();
  double* dst = field.data().data();
#pragma omp parallel num_threads(workers)
  {
    RealBuffer scratch(kernel.scratch_size);
    bool local_finite = true;
    Index where{};
#pragma omp for schedule(static)
    for (std::size_t l = 0; l < count; ++l) {
      const std::size_t base = lines.locate(l, where);
      std::span<double> o(dst + base, n);
      kernel.apply(std::span<const double>(src + base, n), o, where, scratch);
      local_finite = local_finite && finite_line(o);
    }
    if (!local_finite) finite.store(false, std::memory_order_relaxed);
  }
  field.reinterpret(std::move(target));
  return finite.load();
}

}  // namespace

bool line_sweep(DistributionField& field, int axis, const LineKernel& kernel, const SweepOptions& options) {
  if (axis < 0 || axis >= field.grid().dimension()) {
    throw std::invalid_argument("line_sweep: axis " + std::to_string(axis) + " out of range");
  }
  if (!kernel.apply) throw std::invalid_argument("line_sweep: empty kernel");
  const int workers = std::max(1, options.workers);
  if (field.layout().strategy == LayoutStrategy::strided) return sweep_strided(field, axis, kernel, workers);
  SweepOptions resolved = options;
  resolved.workers = workers;
  return sweep_transposed(field, axis, kernel, resolved);
}

bool line_sweep(DistributionField& field, int axis, const ValueLineKernel& kernel, const SweepOptions& options) {
  std::atomic<bool> mismatch{false};
  std::atomic<std::size_t> bad_length{0};
  LineKernel wrapped;
  wrapped.apply = [&](std::span<const double> in, std::span<double> out, const Index& where, std::span<double>) {
    const std::vector<double> result = kernel(in, where);
    if (result.size() != out.size()) {
      mismatch.store(true);
      bad_length.store(result.size());
      std::copy(in.begin(), in.end(), out.begin());
      return;
    }
    std::copy(result.begin(), result.end(), out.begin());
  };
  const bool finite = line_sweep(field, axis, wrapped, options);
  if (mismatch.load()) {
    throw std::length_error("line_sweep: kernel returned a line of length " + std::to_string(bad_length.load()) +
                            ", expected " + std::to_string(field.grid().dof(axis)));
  }
  return finite;
}

}  // namespace vlasov
