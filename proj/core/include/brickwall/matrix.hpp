#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brickwall {

/// Dense row-major matrix of doubles. Sizes stay small (a few hundred per
/// side), so no blocking or sparsity. Immutable use after construction is
/// the norm; instances are safe to share across threads once filled.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

/// a * a^T, filled symmetrically so the result is exactly symmetric.
Matrix multiply_self_transposed(const Matrix& a);

Matrix transpose(const Matrix& a);

std::vector<double> multiply(const Matrix& a, std::span<const double> v);

double frobenius_norm(const Matrix& a);
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Relative symmetry check: max |a_ij - a_ji| <= tol * max|a|.
bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);

/// Lower-triangular L with L*L^T = a. Retries once with +1e-10 on the
/// diagonal if the plain factorization breaks down; throws
/// NotPositiveDefinite if that also fails or if a is not symmetric.
Matrix cholesky_factor(const Matrix& a);

/// Solves a*x = b for SPD a (b may have many columns).
Matrix solve_spd(const Matrix& a, const Matrix& b);
std::vector<double> solve_spd(const Matrix& a, std::span<const double> b);

}  // namespace brickwall
