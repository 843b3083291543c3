#pragma once

#include <complex>
#include <memory>
#include <span>

namespace vlasov {

enum class TransformBackend { fftw, direct };

/// Unnormalized complex DFT on an n1 x n2 periodic grid, index i1 fastest.
///
///   forward: out(m) = sum_j in(j) exp(-2 pi i (j1 m1 / n1 + j2 m2 / n2))
///   inverse: out(j) = sum_m in(m) exp(+2 pi i (...))
/// n2 = 1 gives the 1D transform. The direct backend is the O(n^2) sum.
class FourierTransform {
 public:
  FourierTransform(int n1, int n2, TransformBackend backend = TransformBackend::fftw);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  TransformBackend backend() const { return backend_; }

  // in and out may alias
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

 private:
  struct Plans;
  void direct(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) const;

  int n1_;
  int n2_;
  TransformBackend backend_;
  std::unique_ptr<Plans> plans_;
};

/// Signed frequency of DFT index m on n points: m for m < n/2, m - n above.
inline int signed_frequency(int m, int n) { return 2 * m < n ? m : m - n; }

}  // namespace vlasov
