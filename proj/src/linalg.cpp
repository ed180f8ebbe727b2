#include "sae/linalg.hpp"

#include "sae/errors.hpp"
#include "sae/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sae {

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> multiply(const Matrix &A, std::span<const double> x) {
  std::vector<double> y(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    y[i] = kernels::dot(A.row(i), x);
  return y;
}

void cholesky_in_place(Matrix &A) {
  const std::size_t n = A.rows();
  for (std::size_t j = 0; j < n; ++j) {
    const auto rj = A.row(j);
    const double d = A(j, j) - kernels::dot(rj.first(j), rj.first(j));
    if (!(d > 0.0))
      throw BasisError("overlap matrix is not positive definite (pivot " +
                       std::to_string(j) + ")");
    const double ljj = std::sqrt(d);
    A(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const auto ri = A.row(i);
      A(i, j) = (A(i, j) - kernels::dot(ri.first(j), rj.first(j))) / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      A(i, j) = 0.0;
}

namespace {

// Overwrites B with L^{-1} B, row by row.
void forward_substitute_rows(const Matrix &L, Matrix &B) {
  const std::size_t n = L.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto bi = B.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = L(i, k);
      if (lik != 0.0)
        kernels::axpy(-lik, B.row(k), bi);
    }
    kernels::scale(1.0 / L(i, i), bi);
  }
}

} // namespace

Matrix reduce_to_standard(const Matrix &H, const Matrix &L) {
  // Y = L^{-1} H;  C = L^{-1} Y^T  (H symmetric)
  Matrix Y = H;
  forward_substitute_rows(L, Y);
  Matrix C = Y.transposed();
  forward_substitute_rows(L, C);
  // symmetrize away rounding asymmetry
  const std::size_t n = C.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (C(i, j) + C(j, i));
      C(i, j) = m;
      C(j, i) = m;
    }
  return C;
}

Tridiagonal tridiagonalize(Matrix A) {
  const std::size_t n = A.rows();
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
  t.reflectors = Matrix(n, n);
  t.betas.assign(n, 0.0);
  std::vector<double> v(n), p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const auto x = A.row(k).subspan(k + 1, m);
    const double norm = std::sqrt(kernels::dot(x, x));
    t.diag[k] = A(k, k);
    if (norm == 0.0) {
      t.offdiag[k] = 0.0;
      continue;
    }
    const double alpha = x[0] >= 0.0 ? -norm : norm;
    std::span<double> vs(v.data(), m);
    std::copy(x.begin(), x.end(), vs.begin());
    vs[0] -= alpha;
    const double beta = 1.0 / (alpha * (alpha - x[0]));

    std::span<double> ps(p.data(), m);
    for (std::size_t i = 0; i < m; ++i)
      ps[i] = beta * kernels::dot(A.row(k + 1 + i).subspan(k + 1, m), vs);
    const double K = 0.5 * beta * kernels::dot(ps, vs);
    std::span<double> ws(w.data(), m);
    for (std::size_t i = 0; i < m; ++i)
      ws[i] = ps[i] - K * vs[i];
    for (std::size_t i = 0; i < m; ++i)
      kernels::axpy2(-vs[i], ws, -ws[i], vs,
                     A.row(k + 1 + i).subspan(k + 1, m));

    t.offdiag[k] = alpha;
    t.betas[k] = beta;
    std::copy(vs.begin(), vs.end(), t.reflectors.row(k).begin() + k + 1);
  }
  if (n >= 2) {
    t.diag[n - 2] = A(n - 2, n - 2);
    t.offdiag[n - 2] = A(n - 1, n - 2);
  }
  if (n >= 1)
    t.diag[n - 1] = A(n - 1, n - 1);
  return t;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            int max_sweeps) {
  const std::size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd)
          break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw ConvergenceError("tridiagonal QL: no convergence for "
                                 "eigenvalue " +
                                 std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated)
          continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double>
tridiagonal_eigenvector(std::span<const double> diag,
                        std::span<const double> offdiag, double lambda,
                        std::span<const std::vector<double>> orthogonal_to) {
  const std::size_t n = diag.size();
  if (n == 1)
    return {1.0};

  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rs = std::abs(diag[i]);
    if (i > 0)
      rs += std::abs(offdiag[i - 1]);
    if (i + 1 < n)
      rs += std::abs(offdiag[i]);
    tnorm = std::max(tnorm, rs);
  }
  const double tiny =
      std::max(tnorm, 1.0) * std::numeric_limits<double>::epsilon();

  // LU of T - lambda I with partial pivoting (tridiagonal, one fill band)
  std::vector<double> dl(offdiag.begin(), offdiag.end());
  std::vector<double> du(offdiag.begin(), offdiag.end());
  std::vector<double> du2(n, 0.0);
  std::vector<double> dd(n);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    dd[i] = diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      if (dd[i] == 0.0)
        dd[i] = tiny;
      const double fact = dl[i] / dd[i];
      dl[i] = fact;
      dd[i + 1] -= fact * du[i];
    } else {
      const double fact = dd[i] / dl[i];
      dd[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = dd[i + 1];
      dd[i + 1] = temp - fact * dd[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  for (auto &x : dd)
    if (std::abs(x) < tiny)
      x = std::copysign(tiny, x == 0.0 ? 1.0 : x);

  auto solve = [&](std::vector<double> &y) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        y[i + 1] -= dl[i] * y[i];
      } else {
        const double temp = y[i];
        y[i] = y[i + 1];
        y[i + 1] = temp - dl[i] * y[i];
      }
    }
    y[n - 1] /= dd[n - 1];
    y[n - 2] = (y[n - 2] - du[n - 2] * y[n - 1]) / dd[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
      y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / dd[i];
  };
  auto normalize = [](std::vector<double> &y) {
    const double nrm = std::sqrt(kernels::dot(y, y));
    kernels::scale(1.0 / nrm, y);
  };
  auto orthogonalize = [&](std::vector<double> &y) {
    for (const auto &q : orthogonal_to)
      kernels::axpy(-kernels::dot(q, y), q, y);
  };

  // deterministic, non-degenerate start vector
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = 1.0 + 0.5 * std::sin(0.7 * double(i) + 0.3);
  orthogonalize(y);
  normalize(y);
  for (int it = 0; it < 4; ++it) {
    solve(y);
    orthogonalize(y);
    normalize(y);
  }
  return y;
}

void apply_reflectors(const Tridiagonal &t, std::span<double> y) {
  const std::size_t n = y.size();
  for (std::size_t k = n >= 2 ? n - 2 : 0; k-- > 0;) {
    const double beta = t.betas[k];
    if (beta == 0.0)
      continue;
    const auto v = t.reflectors.row(k).subspan(k + 1);
    auto ys = y.subspan(k + 1);
    kernels::axpy(-beta * kernels::dot(v, ys), v, ys);
  }
}

void solve_upper_transposed(const Matrix &L, std::span<double> y) {
  const std::size_t n = L.rows();
  for (std::size_t i = n; i-- > 0;) {
    y[i] /= L(i, i);
    // column i of L^T above the diagonal is row i of L left of it
    kernels::axpy(-y[i], L.row(i).first(i), y.first(i));
  }
}

GeneralizedEigen lowest_generalized_eigenpairs(const Matrix &H,
                                               const Matrix &S,
                                               std::size_t count) {
  const std::size_t n = H.rows();
  count = std::min(count, n);
  Matrix L = S;
  cholesky_in_place(L);
  const Tridiagonal t = tridiagonalize(reduce_to_standard(H, L));
  const std::vector<double> all =
      tridiagonal_eigenvalues(t.diag, t.offdiag);

  GeneralizedEigen out;
  out.values.assign(all.begin(), all.begin() + std::ptrdiff_t(count));
  out.vectors = Matrix(count, n);
  std::vector<std::vector<double>> standard;
  standard.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> y =
        tridiagonal_eigenvector(t.diag, t.offdiag, out.values[s], standard);
    standard.push_back(y);
    apply_reflectors(t, y);
    solve_upper_transposed(L, y);
    std::copy(y.begin(), y.end(), out.vectors.row(s).begin());
  }
  return out;
}

} // namespace sae
