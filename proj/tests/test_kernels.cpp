#include "sae/kernels.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace sae;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto &x : v)
    x = u(rng);
  return v;
}

double naive_dot(const std::vector<double> &a, const std::vector<double> &b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (long double)a[i] * b[i];
  return double(s);
}

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

} // namespace

TEST_CASE("scalar kernels agree with naive loops") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 257u}) {
    const auto a = random_vector(n, rng), b = random_vector(n, rng),
               w = random_vector(n, rng);
    CHECK_THAT(kernels::scalar::dot(a.data(), b.data(), n),
               WithinAbs(naive_dot(a, b), 1e-13));
    long double ws = 0;
    for (std::size_t i = 0; i < n; ++i)
      ws += (long double)w[i] * a[i] * b[i];
    CHECK_THAT(kernels::scalar::weighted_dot(w.data(), a.data(), b.data(), n),
               WithinAbs(double(ws), 1e-13));

    auto y = b;
    kernels::scalar::axpy2(0.5, a.data(), -2.0, w.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK_THAT(y[i], WithinAbs(b[i] + 0.5 * a[i] + -2.0 * w[i], 1e-15));
  }
}

#if defined(SAE_HAVE_AVX2)
TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!kernels::avx2_available())
    SKIP("CPU lacks AVX2/FMA");
  std::mt19937_64 rng(7);
  for (std::size_t n = 0; n <= 70; ++n) {
    const auto a = random_vector(n, rng), b = random_vector(n, rng),
               w = random_vector(n, rng);
    // summation order differs, so compare against the accumulated magnitude
    double mag = 0;
    for (std::size_t i = 0; i < n; ++i)
      mag += std::abs(w[i] * a[i] * b[i]) + std::abs(a[i] * b[i]);
    const double tol = 4e-16 * (mag + 1.0);

    CHECK_THAT(kernels::avx2::dot(a.data(), b.data(), n),
               WithinAbs(kernels::scalar::dot(a.data(), b.data(), n), tol));
    CHECK_THAT(
        kernels::avx2::weighted_dot(w.data(), a.data(), b.data(), n),
        WithinAbs(kernels::scalar::weighted_dot(w.data(), a.data(), b.data(), n),
                  tol));

    auto y1 = b, y2 = b;
    kernels::scalar::axpy(1.25, a.data(), y1.data(), n);
    kernels::avx2::axpy(1.25, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK_THAT(y2[i], WithinAbs(y1[i], 4e-16));

    y1 = b, y2 = b;
    kernels::scalar::axpy2(-0.75, a.data(), 0.3, w.data(), y1.data(), n);
    kernels::avx2::axpy2(-0.75, a.data(), 0.3, w.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK_THAT(y2[i], WithinAbs(y1[i], 8e-16));

    y1 = a, y2 = a;
    kernels::scalar::scale(3.5, y1.data(), n);
    kernels::avx2::scale(3.5, y2.data(), n);
    CHECK(y1 == y2);
  }
}
#endif

TEST_CASE("backend selection") {
  BackendGuard guard;
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(kernels::to_string(kernels::Backend::scalar) == "scalar");

  std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
  CHECK(kernels::dot(a, b) == 35.0);

  if (kernels::avx2_available()) {
    kernels::set_backend(kernels::Backend::avx2);
    CHECK(kernels::active_backend() == kernels::Backend::avx2);
    CHECK(kernels::dot(a, b) == 35.0);
  } else {
    CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::avx2),
                    std::invalid_argument);
  }
}
