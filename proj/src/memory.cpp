#include "vlasov/memory.hpp"

#include <atomic>

namespace vlasov::memory {

namespace {
std::atomic<std::size_t> live_bytes{0};
std::atomic<std::size_t> high_water{0};
}  // namespace

void note_allocation(std::size_t bytes) noexcept {
  const std::size_t now = live_bytes.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  std::size_t seen = high_water.load(std::memory_order_relaxed);
  while (now > seen && !high_water.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
  }
}

void note_deallocation(std::size_t bytes) noexcept {
  live_bytes.fetch_sub(bytes, std::memory_order_relaxed);
}

std::size_t current_bytes() noexcept { return live_bytes.load(std::memory_order_relaxed); }

std::size_t peak_bytes() noexcept { return high_water.load(std::memory_order_relaxed); }

void reset_peak() noexcept { high_water.store(current_bytes(), std::memory_order_relaxed); }

}  // namespace vlasov::memory
