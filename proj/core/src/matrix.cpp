#include "brickwall/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "brickwall/errors.hpp"

namespace brickwall {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw SizeMismatch("matrix dimensions must be >= 1");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw SizeMismatch("multiply: inner dimensions differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Matrix multiply_self_transposed(const Matrix& a) {
  Matrix c(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * a(j, k);
      c(i, j) = s;
      c(j, i) = s;
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) {
    throw SizeMismatch("multiply: vector length differs from column count");
  }
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw SizeMismatch("frobenius_distance: shapes differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return true;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    }
  }
  return true;
}

namespace {

// Plain lower Cholesky; returns false on a non-positive pivot.
bool try_cholesky(const Matrix& a, double jitter, Matrix& out) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a(i, j);
      if (i == j) s += jitter;
      for (std::size_t k = 0; k < j; ++k) s -= out(i, k) * out(j, k);
      if (i == j) {
        if (s <= 0.0 || !std::isfinite(s)) return false;
        out(i, i) = std::sqrt(s);
      } else {
        out(i, j) = s / out(j, j);
      }
    }
  }
  return true;
}

constexpr double kCholeskyJitter = 1e-10;

}  // namespace

Matrix cholesky_factor(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw NotPositiveDefinite("cholesky_factor: matrix is not square");
  }
  if (!is_symmetric(a)) {
    throw NotPositiveDefinite("cholesky_factor: matrix is not symmetric");
  }
  Matrix l(a.rows(), a.cols());
  if (try_cholesky(a, 0.0, l)) return l;
  Matrix l2(a.rows(), a.cols());
  if (try_cholesky(a, kCholeskyJitter, l2)) return l2;
  throw NotPositiveDefinite("cholesky_factor: factorization failed after jitter");
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw SizeMismatch("solve_spd: row counts differ");
  }
  const Matrix l = cholesky_factor(a);
  const std::size_t n = a.rows();
  Matrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    // forward: L y = b
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    // backward: L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, c);
      x(ii, c) = s / l(ii, ii);
    }
  }
  return x;
}

std::vector<double> solve_spd(const Matrix& a, std::span<const double> b) {
  Matrix bm(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
  const Matrix x = solve_spd(a, bm);
  std::vector<double> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
  return out;
}

}  // namespace brickwall
