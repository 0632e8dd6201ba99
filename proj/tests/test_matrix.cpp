#include <cmath>

#include <doctest.h>

#include "brickwall/denoiser.hpp"
#include "brickwall/errors.hpp"
#include "brickwall/matrix.hpp"
#include "brickwall/rng.hpp"

using namespace brickwall;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
  const Matrix l = cholesky_factor(Matrix::identity(3));
  const Matrix id = Matrix::identity(3);
  CHECK(frobenius_distance(l, id) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cholesky matches the hand factorization of a 2x2") {
  const Matrix a = from_rows({{4, 2}, {2, 3}});
  const Matrix l = cholesky_factor(a);
  CHECK(l(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("cholesky rejects an indefinite matrix") {
  // eigenvalues 3 and -1
  const Matrix a = from_rows({{1, 2}, {2, 1}});
  CHECK_THROWS_AS(cholesky_factor(a), NotPositiveDefinite);
}

TEST_CASE("cholesky rejects an asymmetric matrix") {
  const Matrix a = from_rows({{1, 0.5}, {0.2, 1}});
  CHECK_THROWS_AS(cholesky_factor(a), NotPositiveDefinite);
}

TEST_CASE("jitter rescues an exactly singular PSD matrix") {
  const Matrix a = from_rows({{1, 1}, {1, 1}});
  const Matrix l = cholesky_factor(a);
  const Matrix back = multiply_self_transposed(l);
  CHECK(frobenius_distance(back, a) < 1e-8);
}

TEST_CASE("cholesky round-trips AR(1) covariances") {
  for (const std::size_t n : {2ul, 16ul, 64ul, 128ul}) {
    for (const double rho : {0.0, 0.5, 0.9, 0.99}) {
      const Matrix sigma = gp_covariance(n, rho);
      const Matrix l = cholesky_factor(sigma);
      const Matrix back = multiply_self_transposed(l);
      CHECK(frobenius_distance(back, sigma) / frobenius_norm(sigma) < 1e-9);
    }
  }
}

TEST_CASE("solve_spd with the identity returns b") {
  SeededRng rng(3);
  Matrix b(5, 2);
  for (double& x : b.data()) x = rng.next_normal();
  const Matrix x = solve_spd(Matrix::identity(5), b);
  CHECK(frobenius_distance(x, b) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("solve_spd diagonal example") {
  const Matrix a = from_rows({{2, 0}, {0, 4}});
  const std::vector<double> x = solve_spd(a, std::vector<double>{1.0, 1.0});
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("solve_spd inverts the 2x2 AR(1) covariance") {
  const Matrix a = gp_covariance(2, 0.5);
  const std::vector<double> x = solve_spd(a, std::vector<double>{1.0, 0.0});
  CHECK(x[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("solve_spd residual stays small on AR(1) systems") {
  SeededRng rng(11);
  for (const double rho : {0.0, 0.5, 0.9, 0.99}) {
    const std::size_t n = 64;
    const Matrix a = gp_covariance(n, rho);
    Matrix b(n, 1);
    for (double& v : b.data()) v = rng.next_normal();
    const Matrix x = solve_spd(a, b);
    const Matrix ax = multiply(a, x);
    CHECK(frobenius_distance(ax, b) / frobenius_norm(b) <= 1e-9);
  }
}

TEST_CASE("solve_spd agrees with explicit inverse times b") {
  SeededRng rng(12);
  const std::size_t n = 48;
  const Matrix a = gp_covariance(n, 0.9);
  Matrix b(n, 1);
  for (double& v : b.data()) v = rng.next_normal();

  const Matrix x1 = solve_spd(a, b);
  const Matrix inv = solve_spd(a, Matrix::identity(n));
  const Matrix x2 = multiply(inv, b);
  CHECK(frobenius_distance(x1, x2) / frobenius_norm(x1) < 1e-9);
}

TEST_CASE("solve_spd propagates NotPositiveDefinite") {
  const Matrix a = from_rows({{1, 2}, {2, 1}});
  CHECK_THROWS_AS(solve_spd(a, Matrix::identity(2)), NotPositiveDefinite);
}
