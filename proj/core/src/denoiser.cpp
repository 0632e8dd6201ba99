#include "brickwall/denoiser.hpp"

#include <cmath>
#include <mutex>
#include <utility>

#include "brickwall/errors.hpp"

namespace brickwall {

void GpOracleParams::validate() const {
  if (!(rho >= 0.0) || !(rho < 1.0)) {
    throw InvalidGpParams("gp oracle: need 0 <= rho < 1");
  }
  if (window < 1) {
    throw InvalidGpParams("gp oracle: window must be >= 1");
  }
  if (channels < 1) {
    throw InvalidGpParams("gp oracle: channels must be >= 1");
  }
}

Matrix gp_covariance(std::size_t n, double rho) {
  if (n < 1 || !(rho >= 0.0) || !(rho < 1.0)) {
    throw InvalidGpParams("gp_covariance: need n >= 1 and 0 <= rho < 1");
  }
  Matrix sigma(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma(i, i) = 1.0;
    double p = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      p *= rho;
      sigma(i, j) = p;
      sigma(j, i) = p;
    }
  }
  return sigma;
}

namespace {

// W = sqrt(a) Sigma (a Sigma + (1-a) I)^-1, the per-channel posterior-mean
// operator at signal level a.
Matrix build_posterior_operator(std::size_t n, double alpha_bar_t, double rho) {
  const Matrix sigma = gp_covariance(n, rho);
  Matrix regularized(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      regularized(i, j) = alpha_bar_t * sigma(i, j);
    }
    regularized(i, i) += 1.0 - alpha_bar_t;
  }
  // Sigma and the regularized matrix commute, so G^-1 Sigma = Sigma G^-1.
  Matrix w = solve_spd(regularized, sigma);
  const double root_a = std::sqrt(alpha_bar_t);
  for (double& x : w.data()) x *= root_a;
  return w;
}

double checked_alpha_bar(std::size_t timestep, const NoiseSchedule& schedule) {
  if (timestep < 1 || timestep > schedule.total_timesteps) {
    throw InvalidTimestep("predict: timestep must be in [1, T]");
  }
  const double a = schedule.alpha_bar_at(timestep);
  if (a >= 1.0) {
    throw InvalidTimestep("predict: alpha_bar[t] = 1 leaves the noise scale undefined");
  }
  return a;
}

// eps_hat = (z - sqrt(a) W z) / sqrt(1 - a), applied per channel.
FrameSequence apply_noise_prediction(const FrameSequence& z, const Matrix& w, double a) {
  const std::size_t n = z.frames();
  const std::size_t d = z.channels();
  const double root_a = std::sqrt(a);
  const double inv_root_1ma = 1.0 / std::sqrt(1.0 - a);
  FrameSequence eps(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      double m = 0.0;
      for (std::size_t j = 0; j < n; ++j) m += w(i, j) * z.at(j, c);
      eps.at(i, c) = (z.at(i, c) - root_a * m) * inv_root_1ma;
    }
  }
  return eps;
}

}  // namespace

FrameSequence analytic_predict_noise(const FrameSequence& segment, std::size_t timestep,
                                     const NoiseSchedule& schedule,
                                     const GpOracleParams& params) {
  params.validate();
  if (segment.frames() > params.window) {
    throw SegmentTooLong("analytic_predict_noise: segment exceeds the model window");
  }
  const double a = checked_alpha_bar(timestep, schedule);
  const Matrix w = build_posterior_operator(segment.frames(), a, params.rho);
  return apply_noise_prediction(segment, w, a);
}

GpOracleDenoiser::GpOracleDenoiser(GpOracleParams params, NoiseSchedule schedule)
    : params_(params), schedule_(std::move(schedule)) {
  params_.validate();
}

const Matrix& GpOracleDenoiser::posterior_operator(std::size_t n,
                                                   std::size_t timestep) const {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(timestep);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = operator_cache_.find(key);
    if (it != operator_cache_.end()) return it->second;
  }
  std::unique_lock lock(cache_mutex_);
  auto it = operator_cache_.find(key);
  if (it == operator_cache_.end()) {
    const double a = schedule_.alpha_bar_at(timestep);
    it = operator_cache_.emplace(key, build_posterior_operator(n, a, params_.rho)).first;
  }
  return it->second;
}

FrameSequence GpOracleDenoiser::predict(const FrameSequence& segment,
                                        std::size_t timestep,
                                        const Condition& /*condition*/) const {
  if (segment.frames() > params_.window) {
    throw SegmentTooLong("GpOracleDenoiser: segment exceeds the model window");
  }
  const double a = checked_alpha_bar(timestep, schedule_);
  const Matrix& w = posterior_operator(segment.frames(), timestep);
  return apply_noise_prediction(segment, w, a);
}

ZeroDenoiser::ZeroDenoiser(std::size_t window) : window_(window) {
  if (window < 1) {
    throw InvalidGpParams("zero_denoiser: window must be >= 1");
  }
}

FrameSequence ZeroDenoiser::predict(const FrameSequence& segment,
                                    std::size_t /*timestep*/,
                                    const Condition& /*condition*/) const {
  if (segment.frames() > window_) {
    throw SegmentTooLong("ZeroDenoiser: segment exceeds the model window");
  }
  return FrameSequence(segment.frames(), segment.channels());
}

std::unique_ptr<Denoiser> zero_denoiser(std::size_t window) {
  return std::make_unique<ZeroDenoiser>(window);
}

}  // namespace brickwall
