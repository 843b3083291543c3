#pragma once

#include <cstddef>
#include <new>
#include <vector>

namespace vlasov::memory {

// Process-wide accounting of every buffer allocated through TrackingAllocator.
void note_allocation(std::size_t bytes) noexcept;
void note_deallocation(std::size_t bytes) noexcept;

std::size_t current_bytes() noexcept;
std::size_t peak_bytes() noexcept;

// Resets the high-water mark to the current live byte count.
void reset_peak() noexcept;

inline constexpr std::size_t buffer_alignment = 64;

template <class T>
struct TrackingAllocator {
  using value_type = T;

  TrackingAllocator() noexcept = default;
  template <class U>
  TrackingAllocator(const TrackingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    const std::size_t bytes = n * sizeof(T);
    void* p = ::operator new(bytes, std::align_val_t{buffer_alignment});
    note_allocation(bytes);
    return static_cast<T*>(p);
  }

  void deallocate(T* p, std::size_t n) noexcept {
    ::operator delete(p, std::align_val_t{buffer_alignment});
    note_deallocation(n * sizeof(T));
  }

  template <class U>
  bool operator==(const TrackingAllocator<U>&) const noexcept {
    return true;
  }
};

}  // namespace vlasov::memory

namespace vlasov {

template <class T>
using tracked_vector = std::vector<T, memory::TrackingAllocator<T>>;

using RealBuffer = tracked_vector<double>;

}  // namespace vlasov
