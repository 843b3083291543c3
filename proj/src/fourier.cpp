#include "vlasov/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vlasov/memory.hpp"

namespace vlasov {

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

FourierTransform::FourierTransform(int n1, int n2, TransformBackend backend)
    : n1_(n1), n2_(n2), backend_(backend) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("FourierTransform: sizes must be positive");
  if (backend_ != TransformBackend::fftw) return;
  plans_ = std::make_unique<Plans>();
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  fftw_complex* a = fftw_alloc_complex(total);
  fftw_complex* b = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (n2 == 1) {
    plans_->forward = fftw_plan_dft_1d(n1, a, b, FFTW_FORWARD, flags);
    plans_->inverse = fftw_plan_dft_1d(n1, a, b, FFTW_BACKWARD, flags);
  } else {
    // row-major with the last index fastest: (n2, n1)
    plans_->forward = fftw_plan_dft_2d(n2, n1, a, b, FFTW_FORWARD, flags);
    plans_->inverse = fftw_plan_dft_2d(n2, n1, a, b, FFTW_BACKWARD, flags);
  }
  fftw_free(a);
  fftw_free(b);
  if (!plans_->forward || !plans_->inverse) throw std::runtime_error("FourierTransform: FFTW planning failed");
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::forward(std::span<const std::complex<double>> in,
                               std::span<std::complex<double>> out) const {
  const std::size_t total = static_cast<std::size_t>(n1_) * n2_;
  if (in.size() != total || out.size() != total) throw std::invalid_argument("FourierTransform: size mismatch");
  if (backend_ == TransformBackend::direct) {
    direct(in, out, -1);
    return;
  }
  tracked_vector<std::complex<double>> work(in.begin(), in.end());
  fftw_execute_dft(plans_->forward, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void FourierTransform::inverse(std::span<const std::complex<double>> in,
                               std::span<std::complex<double>> out) const {
  const std::size_t total = static_cast<std::size_t>(n1_) * n2_;
  if (in.size() != total || out.size() != total) throw std::invalid_argument("FourierTransform: size mismatch");
  if (backend_ == TransformBackend::direct) {
    direct(in, out, +1);
    return;
  }
  tracked_vector<std::complex<double>> work(in.begin(), in.end());
  fftw_execute_dft(plans_->inverse, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void FourierTransform::direct(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
                              int sign) const {
  const int n1 = n1_;
  const int n2 = n2_;
  auto twiddles = [sign](int n) {
    std::vector<std::complex<double>> w(n);
    for (int k = 0; k < n; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi * k / n;
      w[k] = {std::cos(angle), std::sin(angle)};
    }
    return w;
  };
  const std::vector<std::complex<double>> w1 = twiddles(n1);
  const std::vector<std::complex<double>> w2 = twiddles(n2);

  // along i1, then along i2
  tracked_vector<std::complex<double>> stage(in.size());
  for (int j2 = 0; j2 < n2; ++j2) {
    for (int m1 = 0; m1 < n1; ++m1) {
      std::complex<double> acc = 0.0;
      for (int j1 = 0; j1 < n1; ++j1) {
        acc += in[j1 + static_cast<std::size_t>(n1) * j2] * w1[(static_cast<long>(j1) * m1) % n1];
      }
      stage[m1 + static_cast<std::size_t>(n1) * j2] = acc;
    }
  }
  for (int m1 = 0; m1 < n1; ++m1) {
    for (int m2 = 0; m2 < n2; ++m2) {
      std::complex<double> acc = 0.0;
      for (int j2 = 0; j2 < n2; ++j2) {
        acc += stage[m1 + static_cast<std::size_t>(n1) * j2] * w2[(static_cast<long>(j2) * m2) % n2];
      }
      out[m1 + static_cast<std::size_t>(n1) * m2] = acc;
    }
  }
}

}  // namespace vlasov
