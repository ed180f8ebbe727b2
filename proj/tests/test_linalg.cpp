#include "sae/errors.hpp"
#include "sae/kernels.hpp"
#include "sae/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace sae;
using Catch::Matchers::WithinAbs;

namespace {

Matrix random_symmetric(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      A(i, j) = A(j, i) = g(rng);
  return A;
}

Matrix random_spd(std::size_t n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Matrix B(n, n);
  for (auto &x : B.data())
    x = g(rng);
  Matrix S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += B(i, k) * B(j, k);
      S(i, j) = s + (i == j ? double(n) : 0.0);
    }
  return S;
}

Eigen::MatrixXd to_eigen(const Matrix &A) {
  Eigen::MatrixXd M(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      M(Eigen::Index(i), Eigen::Index(j)) = A(i, j);
  return M;
}

struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

} // namespace

TEST_CASE("Cholesky factor reproduces the matrix") {
  std::mt19937_64 rng(3);
  const Matrix S = random_spd(40, rng);
  Matrix L = S;
  cholesky_in_place(L);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) {
      if (j > i)
        CHECK(L(i, j) == 0.0);
      double s = 0.0;
      for (std::size_t k = 0; k < 40; ++k)
        s += L(i, k) * L(j, k);
      CHECK_THAT(s, WithinAbs(S(i, j), 1e-10));
    }

  Matrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = bad(1, 0) = 2.0;
  bad(1, 1) = 1.0;
  CHECK_THROWS_AS(cholesky_in_place(bad), BasisError);
}

TEST_CASE("tridiagonal eigenvalues match Eigen") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 30u, 97u}) {
    const Matrix A = random_symmetric(n, rng);
    const auto t = tridiagonalize(A);
    const auto ev = tridiagonal_eigenvalues(t.diag, t.offdiag);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(to_eigen(A));
    REQUIRE(ev.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK_THAT(ev[i], WithinAbs(ref.eigenvalues()(Eigen::Index(i)), 1e-11));
  }
}

TEST_CASE("tridiagonal eigenvector by inverse iteration") {
  // clustered spectrum: two nearly equal eigenvalues
  std::vector<double> d{2.0, 2.0, 5.0, 1.0}, e{1e-9, 0.5, 0.3};
  const auto ev = tridiagonal_eigenvalues(d, e);
  std::vector<std::vector<double>> found;
  for (double lam : ev) {
    auto v = tridiagonal_eigenvector(d, e, lam, found);
    // residual of T v - lam v
    for (std::size_t i = 0; i < d.size(); ++i) {
      double tv = d[i] * v[i];
      if (i > 0)
        tv += e[i - 1] * v[i - 1];
      if (i + 1 < d.size())
        tv += e[i] * v[i + 1];
      CHECK_THAT(tv, WithinAbs(lam * v[i], 1e-12));
    }
    for (const auto &u : found) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i)
        dot += u[i] * v[i];
      CHECK_THAT(dot, WithinAbs(0.0, 1e-12));
    }
    found.push_back(std::move(v));
  }
}

TEST_CASE("generalized eigenpairs match Eigen") {
  std::mt19937_64 rng(5);
  const std::size_t n = 60, count = 8;
  const Matrix H = random_symmetric(n, rng);
  const Matrix S = random_spd(n, rng);
  const auto res = lowest_generalized_eigenpairs(H, S, count);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ref(to_eigen(H),
                                                                to_eigen(S));
  for (std::size_t s = 0; s < count; ++s) {
    CHECK_THAT(res.values[s],
               WithinAbs(ref.eigenvalues()(Eigen::Index(s)), 1e-10));
    if (s > 0)
      CHECK(res.values[s] > res.values[s - 1]);
    const auto c = res.vectors.row(s);
    const auto Hc = multiply(H, c);
    const auto Sc = multiply(S, c);
    double r2 = 0.0, c2 = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = Hc[i] - res.values[s] * Sc[i];
      r2 += r * r;
      c2 += c[i] * c[i];
      norm += c[i] * Sc[i];
    }
    CHECK(std::sqrt(r2 / c2) < 1e-9);
    CHECK_THAT(norm, WithinAbs(1.0, 1e-12));
    for (std::size_t u = 0; u < s; ++u) {
      const auto Sc_u = multiply(S, res.vectors.row(u));
      double ov = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        ov += c[i] * Sc_u[i];
      CHECK_THAT(ov, WithinAbs(0.0, 1e-10));
    }
  }
}

TEST_CASE("scalar and AVX2 backends give the same eigenpairs") {
  if (!kernels::avx2_available())
    SKIP("AVX2 not available");
  BackendGuard guard;
  std::mt19937_64 rng(9);
  const Matrix H = random_symmetric(120, rng);
  const Matrix S = random_spd(120, rng);
  kernels::set_backend(kernels::Backend::scalar);
  const auto a = lowest_generalized_eigenpairs(H, S, 6);
  kernels::set_backend(kernels::Backend::avx2);
  const auto b = lowest_generalized_eigenpairs(H, S, 6);
  for (std::size_t s = 0; s < 6; ++s) {
    CHECK_THAT(b.values[s], WithinAbs(a.values[s], 1e-11));
    double dot = 0.0;
    for (std::size_t i = 0; i < 120; ++i)
      dot += a.vectors(s, i) * b.vectors(s, i);
    const double sign = dot < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < 120; ++i)
      CHECK_THAT(b.vectors(s, i), WithinAbs(sign * a.vectors(s, i), 1e-8));
  }
}

TEST_CASE("count is clamped to the dimension") {
  std::mt19937_64 rng(2);
  const Matrix H = random_symmetric(5, rng), S = random_spd(5, rng);
  CHECK(lowest_generalized_eigenpairs(H, S, 9).values.size() == 5);
}
