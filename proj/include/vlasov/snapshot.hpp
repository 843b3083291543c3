#pragma once

#include <iosfwd>
#include <string>

#include "vlasov/grid.hpp"

namespace vlasov {

/// "VLF1" binary snapshot: magic, u32 axis count, per axis (f64 lower, f64 upper,
/// u32 count, u8 kind), u8 method, u8 dg_degree, then f64 values in canonical
/// order. All little-endian.
void write_snapshot(std::ostream& out, const DistributionField& field);
void write_snapshot(const std::string& path, const DistributionField& field);

/// Returns the field in the canonical strided layout. Malformed input throws std::runtime_error.
DistributionField read_snapshot(std::istream& in);
DistributionField read_snapshot(const std::string& path);

}  // namespace vlasov
