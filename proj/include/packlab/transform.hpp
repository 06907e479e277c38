#pragma once

// Transform kernels behind the correlation tables.
//
//   cyclic products: c[g] = sum_x A(x) B(x - g) via a multidimensional real FFT
//                    (FFTW), rounded to integers;
//   dyadic cubes:    c[g] = sum_x A(x) B(x ^ g) via an integer Walsh-Hadamard
//                    transform, exact by construction.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"

namespace packlab {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class FftwPlan {
 public:
  explicit FftwPlan(fftw_plan p) : plan_(p) {
    if (!plan_) throw VerificationError("FFTW failed to create a plan");
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  ~FftwPlan() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

}  // namespace detail

/// Largest distance of any transform output from its rounded value is reported
/// through `max_rounding_error` when non-null.
inline std::vector<std::int64_t> fft_correlation(const DenseSet& a, const DenseSet& b,
                                                 double* max_rounding_error = nullptr) {
  a.check_same(b);
  const Group& group = a.group();
  const std::size_t n = group.order();
  const int rank = static_cast<int>(group.dim());
  std::vector<int> dims(group.dim());
  for (std::size_t i = 0; i < group.dim(); ++i) dims[i] = static_cast<int>(group.modulus(i));
  const std::size_t last = static_cast<std::size_t>(dims.back());
  const std::size_t complex_n = n / last * (last / 2 + 1);

  auto real = detail::fftw_buffer<double>(n);
  auto fa = detail::fftw_buffer<fftw_complex>(complex_n);
  auto fb = detail::fftw_buffer<fftw_complex>(complex_n);

  std::unique_ptr<detail::FftwPlan> fwd_a, fwd_b, inv;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fwd_a = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_r2c(rank, dims.data(), real.get(), fa.get(), FFTW_ESTIMATE));
    fwd_b = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_r2c(rank, dims.data(), real.get(), fb.get(), FFTW_ESTIMATE));
    inv = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_c2r(rank, dims.data(), fa.get(), real.get(), FFTW_ESTIMATE));
  }

  auto load = [&](const DenseSet& s) {
    for (std::size_t i = 0; i < n; ++i) real[i] = 0.0;
    s.for_each([&](std::size_t i) { real[i] = 1.0; });
  };
  load(a);
  fwd_a->execute();
  load(b);
  fwd_b->execute();
  for (std::size_t k = 0; k < complex_n; ++k) {
    const std::complex<double> x(fa[k][0], fa[k][1]);
    const std::complex<double> y(fb[k][0], fb[k][1]);
    const auto z = x * std::conj(y);
    fa[k][0] = z.real();
    fa[k][1] = z.imag();
  }
  inv->execute();

  std::vector<std::int64_t> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = real[i] * scale;
    const double r = std::nearbyint(v);
    worst = std::max(worst, std::abs(v - r));
    out[i] = static_cast<std::int64_t>(r);
  }
  if (max_rounding_error) *max_rounding_error = worst;
  if (worst >= 0.25) {
    throw VerificationError("FFT correlation lost integer precision (max rounding error " +
                            std::to_string(worst) + ")");
  }
  return out;
}

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
inline void walsh_hadamard(std::vector<std::int64_t>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const auto x = v[j];
        const auto y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

inline std::vector<std::int64_t> xor_correlation(const DenseSet& a, const DenseSet& b) {
  a.check_same(b);
  const std::size_t n = a.universe();
  std::vector<std::int64_t> va(n, 0), vb(n, 0);
  a.for_each([&](std::size_t i) { va[i] = 1; });
  b.for_each([&](std::size_t i) { vb[i] = 1; });
  walsh_hadamard(va);
  walsh_hadamard(vb);
  for (std::size_t i = 0; i < n; ++i) va[i] *= vb[i];
  walsh_hadamard(va);
  const auto shift = static_cast<std::int64_t>(n);
  for (auto& x : va) x /= shift;
  return va;
}

}  // namespace packlab
