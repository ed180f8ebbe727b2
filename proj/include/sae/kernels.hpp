#pragma once

// Data-parallel inner loops used by the basis assembly and the dense
// eigensolver. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2/FMA variant. The variant is chosen once at startup from
// the CPU features and can be forced for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace sae::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);

//! True if the AVX2 variants were compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

//! Backend used by the dispatching entry points below.
Backend active_backend();

//! Forces a backend. Throws std::invalid_argument if it is unavailable.
void set_backend(Backend b);

//! Sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

//! Sum_i w[i] * a[i] * b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

//! y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

//! y[i] += alpha * x[i] + beta * z[i]  (symmetric rank-2 row update)
void axpy2(double alpha, std::span<const double> x, double beta,
           std::span<const double> z, std::span<double> y);

//! x[i] *= alpha
void scale(double alpha, std::span<double> x);

namespace scalar {
double dot(const double *a, const double *b, std::size_t n);
double weighted_dot(const double *w, const double *a, const double *b,
                    std::size_t n);
void axpy(double alpha, const double *x, double *y, std::size_t n);
void axpy2(double alpha, const double *x, double beta, const double *z,
           double *y, std::size_t n);
void scale(double alpha, double *x, std::size_t n);
} // namespace scalar

#if defined(SAE_HAVE_AVX2)
namespace avx2 {
double dot(const double *a, const double *b, std::size_t n);
double weighted_dot(const double *w, const double *a, const double *b,
                    std::size_t n);
void axpy(double alpha, const double *x, double *y, std::size_t n);
void axpy2(double alpha, const double *x, double beta, const double *z,
           double *y, std::size_t n);
void scale(double alpha, double *x, std::size_t n);
} // namespace avx2
#endif

} // namespace sae::kernels
