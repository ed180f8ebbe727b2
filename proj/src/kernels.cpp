#include "sae/kernels.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>

namespace sae::kernels {

namespace {

Backend detect() {
#if defined(SAE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> &backend_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

inline bool use_avx2() {
#if defined(SAE_HAVE_AVX2)
  return backend_slot().load(std::memory_order_relaxed) == Backend::avx2;
#else
  return false;
#endif
}

} // namespace

std::string_view to_string(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() { return detect() == Backend::avx2; }

Backend active_backend() {
  return backend_slot().load(std::memory_order_relaxed);
}

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::invalid_argument("AVX2 kernels are not available on this host");
  backend_slot().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
#if defined(SAE_HAVE_AVX2)
  if (use_avx2())
    return avx2::dot(a.data(), b.data(), a.size());
#endif
  return scalar::dot(a.data(), b.data(), a.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  assert(w.size() == a.size() && a.size() == b.size());
#if defined(SAE_HAVE_AVX2)
  if (use_avx2())
    return avx2::weighted_dot(w.data(), a.data(), b.data(), w.size());
#endif
  return scalar::weighted_dot(w.data(), a.data(), b.data(), w.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
#if defined(SAE_HAVE_AVX2)
  if (use_avx2())
    return avx2::axpy(alpha, x.data(), y.data(), x.size());
#endif
  scalar::axpy(alpha, x.data(), y.data(), x.size());
}

void axpy2(double alpha, std::span<const double> x, double beta,
           std::span<const double> z, std::span<double> y) {
  assert(x.size() == y.size() && z.size() == y.size());
#if defined(SAE_HAVE_AVX2)
  if (use_avx2())
    return avx2::axpy2(alpha, x.data(), beta, z.data(), y.data(), y.size());
#endif
  scalar::axpy2(alpha, x.data(), beta, z.data(), y.data(), y.size());
}

void scale(double alpha, std::span<double> x) {
#if defined(SAE_HAVE_AVX2)
  if (use_avx2())
    return avx2::scale(alpha, x.data(), x.size());
#endif
  scalar::scale(alpha, x.data(), x.size());
}

} // namespace sae::kernels
