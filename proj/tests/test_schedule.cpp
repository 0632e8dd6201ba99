#include <doctest.h>

#include "brickwall/errors.hpp"
#include "brickwall/rng.hpp"
#include "brickwall/schedule.hpp"

using namespace brickwall;

TEST_CASE("single-step schedule is the single product") {
  const NoiseSchedule s = build_linear_schedule(1, 0.5, 0.5);
  REQUIRE(s.alpha_bar.size() == 2);
  CHECK(s.alpha_bar[0] == 1.0);
  CHECK(s.alpha_bar[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("constant beta compounds multiplicatively") {
  const NoiseSchedule s = build_linear_schedule(2, 0.1, 0.1);
  REQUIRE(s.alpha_bar.size() == 3);
  CHECK(s.alpha_bar[0] == 1.0);
  CHECK(s.alpha_bar[1] == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(s.alpha_bar[2] == doctest::Approx(0.81).epsilon(1e-14));
}

TEST_CASE("alpha_bar starts at exactly 1") {
  CHECK(build_linear_schedule(1000).alpha_bar[0] == 1.0);
  CHECK(build_linear_schedule(3, 0.2, 0.5).alpha_bar[0] == 1.0);
}

TEST_CASE("alpha_bar is strictly decreasing and in (0, 1]") {
  SeededRng rng(2024);
  int built = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t t_total = 1 + (rng.next_u64() % 2000);
    const double lo = 1e-5 + 0.4 * rng.next_uniform();
    const double hi = lo + (0.98 - lo) * rng.next_uniform();
    try {
      const NoiseSchedule s = build_linear_schedule(t_total, lo, hi);
      ++built;
      REQUIRE(s.alpha_bar.size() == t_total + 1);
      for (std::size_t t = 1; t <= t_total; ++t) {
        CHECK(s.alpha_bar[t] > 0.0);
        CHECK(s.alpha_bar[t] < s.alpha_bar[t - 1]);
      }
    } catch (const InvalidScheduleParams&) {
      // extreme beta/T combinations underflow double precision and are
      // refused rather than returning a broken schedule
    }
  }
  CHECK(built > 0);
}

TEST_CASE("a schedule that would underflow is refused") {
  CHECK_THROWS_AS(build_linear_schedule(2000, 0.9, 0.98), InvalidScheduleParams);
  CHECK_NOTHROW(build_linear_schedule(1000, 1e-4, 2e-2));
}

TEST_CASE("schedule parameter validation") {
  CHECK_THROWS_AS(build_linear_schedule(0, 0.1, 0.2), InvalidScheduleParams);
  CHECK_THROWS_AS(build_linear_schedule(10, 0.0, 0.2), InvalidScheduleParams);
  CHECK_THROWS_AS(build_linear_schedule(10, 0.3, 0.2), InvalidScheduleParams);
  CHECK_THROWS_AS(build_linear_schedule(10, 0.3, 1.0), InvalidScheduleParams);
}

TEST_CASE("uniform ladder for T=1000, S=4") {
  const StepLadder l = ddim_ladder(1000, 4);
  CHECK(l.timesteps == std::vector<std::size_t>{1000, 750, 500, 250, 0});
}

TEST_CASE("full ladder is the identity sequence") {
  const StepLadder l = ddim_ladder(10, 10);
  REQUIRE(l.timesteps.size() == 11);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(l.timesteps[k] == 10 - k);
}

TEST_CASE("ladder rejects S > T and S = 0") {
  CHECK_THROWS_AS(ddim_ladder(10, 11), InvalidScheduleParams);
  CHECK_THROWS_AS(ddim_ladder(10, 0), InvalidScheduleParams);
}

TEST_CASE("ladder length and endpoints are exact; strictly descending") {
  SeededRng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t t_total = 1 + (rng.next_u64() % 10000);
    const std::size_t steps = 1 + (rng.next_u64() % t_total);
    const StepLadder l = ddim_ladder(t_total, steps);
    REQUIRE(l.timesteps.size() == steps + 1);
    CHECK(l.timesteps.front() == t_total);
    CHECK(l.timesteps.back() == 0);
    for (std::size_t k = 1; k < l.timesteps.size(); ++k) {
      CHECK(l.timesteps[k] < l.timesteps[k - 1]);
    }
  }
}
