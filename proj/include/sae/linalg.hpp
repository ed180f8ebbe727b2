#pragma once

// Dense symmetric linear algebra for the generalized eigenproblem
// H c = e S c. The O(n^3) loops run through the kernels in kernels.hpp.

#include <cstddef>
#include <span>
#include <vector>

namespace sae {

//! Dense row-major matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix transposed() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

//! y = A x
std::vector<double> multiply(const Matrix &A, std::span<const double> x);

//! Overwrites the lower triangle of A with its Cholesky factor L (A = L L^T)
//! and zeroes the strict upper triangle. Throws BasisError if A is not
//! numerically positive definite.
void cholesky_in_place(Matrix &A);

//! C = L^{-1} H L^{-T} for lower-triangular L.
Matrix reduce_to_standard(const Matrix &H, const Matrix &L);

//! Symmetric tridiagonal matrix plus the Householder reflectors that
//! produced it.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag; //!< offdiag[i] couples i and i+1
  Matrix reflectors;           //!< row k holds v_k in columns k+1..n-1
  std::vector<double> betas;
};

//! Householder reduction Q^T A Q = T of a symmetric matrix.
Tridiagonal tridiagonalize(Matrix A);

//! All eigenvalues of a symmetric tridiagonal matrix, ascending (implicit
//! QL with Wilkinson shifts). Throws ConvergenceError past max_sweeps
//! iterations on any eigenvalue.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag,
                                            int max_sweeps = 60);

//! Unit eigenvector of the tridiagonal matrix for an accurately known
//! eigenvalue, by inverse iteration. `orthogonal_to` lists vectors the
//! result is kept orthogonal to (for clustered eigenvalues).
std::vector<double>
tridiagonal_eigenvector(std::span<const double> diag,
                        std::span<const double> offdiag, double lambda,
                        std::span<const std::vector<double>> orthogonal_to);

//! Applies Q (the product of the stored reflectors) to y in place.
void apply_reflectors(const Tridiagonal &t, std::span<double> y);

//! Solves L^T x = y in place for lower-triangular L.
void solve_upper_transposed(const Matrix &L, std::span<double> y);

struct GeneralizedEigen {
  std::vector<double> values; //!< ascending
  Matrix vectors;             //!< one S-normalized vector per row
};

//! The `count` lowest eigenpairs of H c = e S c (H symmetric, S SPD) by
//! Cholesky reduction, Householder tridiagonalization, implicit QL and
//! inverse iteration with back-transformation.
GeneralizedEigen lowest_generalized_eigenpairs(const Matrix &H,
                                               const Matrix &S,
                                               std::size_t count);

} // namespace sae
