#include "sae/kernels.hpp"

namespace sae::kernels::scalar {

double dot(const double *a, const double *b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += a[i] * b[i];
  return s;
}

double weighted_dot(const double *w, const double *a, const double *b,
                    std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += w[i] * a[i] * b[i];
  return s;
}

void axpy(double alpha, const double *x, double *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha * x[i];
}

void axpy2(double alpha, const double *x, double beta, const double *z,
           double *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha * x[i] + beta * z[i];
}

void scale(double alpha, double *x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    x[i] *= alpha;
}

} // namespace sae::kernels::scalar
