#include "brickwall/schedule.hpp"

#include <cmath>

#include "brickwall/errors.hpp"

namespace brickwall {

NoiseSchedule build_linear_schedule(std::size_t total_timesteps, double beta_start,
                                    double beta_end) {
  if (total_timesteps < 1) {
    throw InvalidScheduleParams("build_linear_schedule: T must be >= 1");
  }
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw InvalidScheduleParams(
        "build_linear_schedule: need 0 < beta_start <= beta_end < 1");
  }
  NoiseSchedule s;
  s.total_timesteps = total_timesteps;
  s.alpha_bar.resize(total_timesteps + 1);
  s.alpha_bar[0] = 1.0;
  double prod = 1.0;
  for (std::size_t t = 1; t <= total_timesteps; ++t) {
    const double frac =
        total_timesteps == 1
            ? 0.0
            : static_cast<double>(t - 1) / static_cast<double>(total_timesteps - 1);
    const double beta = beta_start + (beta_end - beta_start) * frac;
    prod *= 1.0 - beta;
    // the invariant alpha_bar in (0, 1], strictly decreasing, must survive
    // double precision; refuse schedules that underflow it
    if (prod <= 0.0 || prod >= s.alpha_bar[t - 1]) {
      throw InvalidScheduleParams(
          "build_linear_schedule: alpha_bar underflows double precision at t=" +
          std::to_string(t));
    }
    s.alpha_bar[t] = prod;
  }
  return s;
}

StepLadder ddim_ladder(std::size_t total_timesteps, std::size_t step_count) {
  if (step_count < 1 || step_count > total_timesteps) {
    throw InvalidScheduleParams("ddim_ladder: need 1 <= S <= T");
  }
  StepLadder ladder;
  ladder.step_count = step_count;
  ladder.timesteps.resize(step_count + 1);
  for (std::size_t k = 0; k <= step_count; ++k) {
    const double exact = static_cast<double>(total_timesteps) *
                         static_cast<double>(step_count - k) /
                         static_cast<double>(step_count);
    ladder.timesteps[k] = static_cast<std::size_t>(std::floor(exact + 0.5));
  }
  return ladder;
}

}  // namespace brickwall
