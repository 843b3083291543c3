#include "vlasov/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vlasov {

namespace {

constexpr char magic[4] = {'V', 'L', 'F', '1'};

template <typename T>
void put(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  const U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw std::runtime_error("VLF1: truncated input");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_snapshot(std::ostream& out, const DistributionField& field) {
  const GridSpec& grid = field.grid();
  out.write(magic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dimension()));
  for (const Axis& axis : grid.axes()) {
    put<double>(out, axis.lower);
    put<double>(out, axis.upper);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(axis.count));
    put<std::uint8_t>(out, static_cast<std::uint8_t>(axis.kind));
  }
  put<std::uint8_t>(out, static_cast<std::uint8_t>(grid.method()));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(grid.dg_degree()));
  for (double v : field.canonical_values()) put<double>(out, v);
  if (!out) throw std::runtime_error("VLF1: write failed");
}

void write_snapshot(const std::string& path, const DistributionField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_snapshot(out, field);
}

DistributionField read_snapshot(std::istream& in) {
  char head[4];
  if (!in.read(head, 4) || std::memcmp(head, magic, 4) != 0) throw std::runtime_error("VLF1: bad magic");
  const std::uint32_t dims = get<std::uint32_t>(in);
  if (dims != 2 && dims != 4) throw std::runtime_error("VLF1: unsupported axis count");
  std::vector<Axis> axes(dims);
  for (Axis& axis : axes) {
    axis.lower = get<double>(in);
    axis.upper = get<double>(in);
    axis.count = static_cast<int>(get<std::uint32_t>(in));
    const std::uint8_t kind = get<std::uint8_t>(in);
    if (kind > 1) throw std::runtime_error("VLF1: bad axis kind");
    axis.kind = static_cast<AxisKind>(kind);
  }
  const std::uint8_t method = get<std::uint8_t>(in);
  if (method > 1) throw std::runtime_error("VLF1: bad method");
  const int degree = get<std::uint8_t>(in);
  GridSpec grid(std::move(axes), static_cast<Method>(method), degree);
  DistributionField field(grid, LayoutDescriptor::canonical(grid, LayoutStrategy::strided));
  for (double& v : field.data()) v = get<double>(in);
  return field;
}

DistributionField read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_snapshot(in);
}

}  // namespace vlasov
