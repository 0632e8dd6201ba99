#include <cmath>

#include <doctest.h>

#include "brickwall/denoiser.hpp"
#include "brickwall/errors.hpp"
#include "brickwall/matrix.hpp"
#include "brickwall/rng.hpp"

using namespace brickwall;

namespace {

const Condition kCond{};

NoiseSchedule flat_schedule(double alpha_bar_1) {
  // T=1 with beta = 1 - alpha_bar_1
  return build_linear_schedule(1, 1.0 - alpha_bar_1, 1.0 - alpha_bar_1);
}

}  // namespace

TEST_CASE("gp_covariance with rho = 0 is the identity") {
  const Matrix sigma = gp_covariance(3, 0.0);
  CHECK(frobenius_distance(sigma, Matrix::identity(3)) == 0.0);
}

TEST_CASE("gp_covariance holds powers of rho") {
  const Matrix sigma = gp_covariance(3, 0.5);
  CHECK(sigma(0, 0) == 1.0);
  CHECK(sigma(0, 1) == 0.5);
  CHECK(sigma(0, 2) == 0.25);
  CHECK(sigma(1, 0) == 0.5);
  CHECK(sigma(2, 0) == 0.25);
  CHECK(sigma(1, 2) == 0.5);
}

TEST_CASE("gp_covariance is SPD for every tested size and rho") {
  for (const std::size_t n : {1ul, 2ul, 16ul, 90ul}) {
    for (const double rho : {0.0, 0.5, 0.9, 0.99}) {
      CHECK_NOTHROW(cholesky_factor(gp_covariance(n, rho)));
    }
  }
}

TEST_CASE("gp_covariance validates parameters") {
  CHECK_THROWS_AS(gp_covariance(0, 0.5), InvalidGpParams);
  CHECK_THROWS_AS(gp_covariance(3, 1.0), InvalidGpParams);
  CHECK_THROWS_AS(gp_covariance(3, -0.1), InvalidGpParams);
}

TEST_CASE("independent frames reduce the prediction to a rescaling") {
  // Sigma = I gives eps_hat = sqrt(1-a) z
  const double a = 0.37;
  const NoiseSchedule schedule = flat_schedule(a);
  const GpOracleParams params{0.0, 8, 1};
  SeededRng rng(5);
  FrameSequence z(6, 2, sample_standard_normal(rng, 12));
  const FrameSequence eps = analytic_predict_noise(z, 1, schedule, params);
  for (std::size_t i = 0; i < z.frames(); ++i) {
    for (std::size_t c = 0; c < z.channels(); ++c) {
      CHECK(eps.at(i, c) ==
            doctest::Approx(std::sqrt(1.0 - a) * z.at(i, c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero input predicts zero noise") {
  const NoiseSchedule schedule = flat_schedule(0.5);
  const GpOracleParams params{0.7, 8, 1};
  const FrameSequence eps =
      analytic_predict_noise(FrameSequence(5, 3), 1, schedule, params);
  for (const double v : eps.values()) CHECK(v == 0.0);
}

TEST_CASE("2x2 posterior regression value") {
  // rho=0.5, a=0.5, z=[1,0]: solving the 2x2 system by hand gives
  // eps_hat = [8 sqrt(2)/15, -2 sqrt(2)/15].
  const NoiseSchedule schedule = flat_schedule(0.5);
  const GpOracleParams params{0.5, 2, 1};
  FrameSequence z(2, 1, {1.0, 0.0});
  const FrameSequence eps = analytic_predict_noise(z, 1, schedule, params);
  CHECK(eps.at(0, 0) == doctest::Approx(8.0 * std::sqrt(2.0) / 15.0).epsilon(1e-12));
  CHECK(eps.at(1, 0) == doctest::Approx(-2.0 * std::sqrt(2.0) / 15.0).epsilon(1e-12));
}

TEST_CASE("the cached oracle matches the uncached formula") {
  const NoiseSchedule schedule = build_linear_schedule(100);
  const GpOracleParams params{0.9, 16, 4};
  const GpOracleDenoiser oracle(params, schedule);
  SeededRng rng(17);
  FrameSequence z(11, 4, sample_standard_normal(rng, 44));
  const FrameSequence a = oracle.predict(z, 60, kCond);
  const FrameSequence b = analytic_predict_noise(z, 60, schedule, params);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-13));
  }
}

TEST_CASE("prediction is linear") {
  const NoiseSchedule schedule = build_linear_schedule(100);
  const GpOracleParams params{0.8, 12, 1};
  const GpOracleDenoiser oracle(params, schedule);
  SeededRng rng(23);
  const double ca = 0.83, cb = -2.41;
  for (const std::size_t t : {1ul, 40ul, 100ul}) {
    FrameSequence z1(12, 1, sample_standard_normal(rng, 12));
    FrameSequence z2(12, 1, sample_standard_normal(rng, 12));
    FrameSequence mix(12, 1);
    for (std::size_t i = 0; i < 12; ++i) {
      mix.at(i, 0) = ca * z1.at(i, 0) + cb * z2.at(i, 0);
    }
    const FrameSequence p1 = oracle.predict(z1, t, kCond);
    const FrameSequence p2 = oracle.predict(z2, t, kCond);
    const FrameSequence pm = oracle.predict(mix, t, kCond);
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(pm.at(i, 0) ==
            doctest::Approx(ca * p1.at(i, 0) + cb * p2.at(i, 0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("channels predict independently") {
  const NoiseSchedule schedule = build_linear_schedule(100);
  const GpOracleParams params{0.6, 10, 3};
  const GpOracleDenoiser oracle(params, schedule);
  SeededRng rng(29);
  FrameSequence z(7, 3, sample_standard_normal(rng, 21));
  const FrameSequence stacked = oracle.predict(z, 33, kCond);
  for (std::size_t c = 0; c < 3; ++c) {
    FrameSequence single(7, 1);
    for (std::size_t i = 0; i < 7; ++i) single.at(i, 0) = z.at(i, c);
    const FrameSequence p = oracle.predict(single, 33, kCond);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(stacked.at(i, c) == doctest::Approx(p.at(i, 0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("window restriction equals the short marginal") {
  // Predicting on n < window frames must equal the formula built from the
  // n x n covariance: AR(1) marginals are nested.
  const NoiseSchedule schedule = build_linear_schedule(200);
  const GpOracleParams wide{0.9, 16, 1};
  const GpOracleParams narrow{0.9, 5, 1};
  const GpOracleDenoiser oracle(wide, schedule);
  SeededRng rng(37);
  FrameSequence z(5, 1, sample_standard_normal(rng, 5));
  const FrameSequence a = oracle.predict(z, 120, kCond);
  const FrameSequence b = analytic_predict_noise(z, 120, schedule, narrow);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.at(i, 0) == doctest::Approx(b.at(i, 0)).epsilon(1e-13));
  }
}

TEST_CASE("oracle rejects invalid timesteps and long segments") {
  const NoiseSchedule schedule = build_linear_schedule(50);
  const GpOracleParams params{0.5, 4, 1};
  const GpOracleDenoiser oracle(params, schedule);
  FrameSequence z(4, 1, {1, 2, 3, 4});
  CHECK_THROWS_AS(oracle.predict(z, 0, kCond), InvalidTimestep);
  CHECK_THROWS_AS(oracle.predict(z, 51, kCond), InvalidTimestep);
  FrameSequence longer(5, 1, {1, 2, 3, 4, 5});
  CHECK_THROWS_AS(oracle.predict(longer, 10, kCond), SegmentTooLong);
}

TEST_CASE("oracle beats rho-misspecified predictors on synthetic pairs") {
  // MMSE optimality: mean ||eps - eps_hat||^2 with the true rho must be
  // below the same formula evaluated at rho +- 0.1, at every tested t.
  const double rho = 0.5;
  const std::size_t n = 8;
  const NoiseSchedule schedule = build_linear_schedule(1000);
  const Matrix sigma_chol = cholesky_factor(gp_covariance(n, rho));

  const GpOracleDenoiser predictor_true({rho, n, 1}, schedule);
  const GpOracleDenoiser predictor_low({rho - 0.1, n, 1}, schedule);
  const GpOracleDenoiser predictor_high({rho + 0.1, n, 1}, schedule);

  SeededRng rng(4242);
  const std::size_t pairs = 100000;
  for (const std::size_t t : {100ul, 500ul, 900ul}) {
    const double a = schedule.alpha_bar_at(t);
    double mse_true = 0.0, mse_low = 0.0, mse_high = 0.0;
    for (std::size_t s = 0; s < pairs; ++s) {
      const std::vector<double> white = sample_standard_normal(rng, n);
      const std::vector<double> z0 = multiply(sigma_chol, white);
      const std::vector<double> eps = sample_standard_normal(rng, n);
      FrameSequence zt(n, 1);
      for (std::size_t i = 0; i < n; ++i) {
        zt.at(i, 0) = std::sqrt(a) * z0[i] + std::sqrt(1.0 - a) * eps[i];
      }
      const FrameSequence e1 = predictor_true.predict(zt, t, kCond);
      const FrameSequence e2 = predictor_low.predict(zt, t, kCond);
      const FrameSequence e3 = predictor_high.predict(zt, t, kCond);
      for (std::size_t i = 0; i < n; ++i) {
        mse_true += (eps[i] - e1.at(i, 0)) * (eps[i] - e1.at(i, 0));
        mse_low += (eps[i] - e2.at(i, 0)) * (eps[i] - e2.at(i, 0));
        mse_high += (eps[i] - e3.at(i, 0)) * (eps[i] - e3.at(i, 0));
      }
    }
    CHECK(mse_true < mse_low);
    CHECK(mse_true < mse_high);
  }
}

TEST_CASE("zero denoiser predicts zeros of the input shape") {
  const auto zero = zero_denoiser(16);
  SeededRng rng(3);
  FrameSequence z(9, 2, sample_standard_normal(rng, 18));
  const FrameSequence out = zero->predict(z, 500, kCond);
  CHECK(out.frames() == 9);
  CHECK(out.channels() == 2);
  for (const double v : out.values()) CHECK(v == 0.0);
}
