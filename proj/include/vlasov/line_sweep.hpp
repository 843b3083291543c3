#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vlasov/grid.hpp"

namespace vlasov {

/// 1D map applied to every line along one axis.
///
/// `where` holds the transverse multi-index of the line (entry of the swept axis
/// is 0). `scratch` is a per-worker buffer of `scratch_size` doubles. The
/// callback must be safe to call concurrently on distinct lines.
struct LineKernel {
  std::function<void(std::span<const double> in, std::span<double> out, const Index& where,
                     std::span<double> scratch)>
      apply;
  std::size_t scratch_size = 0;
};

/// Buffers kept alive across sweeps (the transpose target of the transpose strategy).
struct SweepWorkspace {
  RealBuffer transpose_buffer;
};

struct SweepOptions {
  int workers = 1;
  SweepWorkspace* workspace = nullptr;
};

/// Replaces every line along `axis` by the kernel output.
///
/// strided: lines are gathered in blocks of layout.cache_block and scattered
/// back; the layout is unchanged. transpose: the data is permuted so `axis`
/// is contiguous (layout descriptor updated) and lines are processed in place
/// of the permuted copy. Returns false if any output value is not finite.
bool line_sweep(DistributionField& field, int axis, const LineKernel& kernel, const SweepOptions& options = {});

/// Convenience form for kernels returning a fresh line. A returned line of the
/// wrong length throws std::length_error.
using ValueLineKernel = std::function<std::vector<double>(std::span<const double> in, const Index& where)>;

bool line_sweep(DistributionField& field, int axis, const ValueLineKernel& kernel, const SweepOptions& options = {});

}  // namespace vlasov
