#pragma once

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "brickwall/frame_sequence.hpp"
#include "brickwall/matrix.hpp"
#include "brickwall/schedule.hpp"

namespace brickwall {

/// Opaque conditioning token, compared by equality only. The analytic
/// denoisers ignore it; the interface carries it so a conditioned model
/// could be dropped in without touching call sites.
struct Condition {
  std::string token;
  bool operator==(const Condition&) const = default;
};

/// Noise-prediction interface: maps (segment, timestep, condition) to a
/// prediction of the same shape. Implementations must be immutable after
/// construction and callable concurrently.
class Denoiser {
 public:
  virtual ~Denoiser() = default;

  /// Longest segment the model accepts, in frames.
  virtual std::size_t window() const = 0;

  virtual FrameSequence predict(const FrameSequence& segment, std::size_t timestep,
                                const Condition& condition) const = 0;
};

/// Parameters of the stationary AR(1) latent distribution the oracle models:
/// adjacent-frame correlation rho, model window, channels per frame.
struct GpOracleParams {
  double rho = 0.9;
  std::size_t window = 16;
  std::size_t channels = 4;

  void validate() const;
};

/// AR(1) frame covariance: sigma_ij = rho^|i-j|. SPD for 0 <= rho < 1;
/// channels are independent.
Matrix gp_covariance(std::size_t n, double rho);

/// MMSE noise prediction for z_t = sqrt(a) z0 + sqrt(1-a) eps with
/// z0 ~ N(0, Sigma): posterior mean m = sqrt(a) Sigma (a Sigma + (1-a) I)^-1 z
/// per channel, then eps_hat = (z - sqrt(a) m) / sqrt(1-a).
FrameSequence analytic_predict_noise(const FrameSequence& segment, std::size_t timestep,
                                     const NoiseSchedule& schedule,
                                     const GpOracleParams& params);

/// The idealized short-sequence model: the analytic MMSE predictor above,
/// with the per-(length, timestep) posterior operator cached. Restricting to
/// n <= window frames is exact marginalization, so this behaves as a model
/// that has never seen beyond `window` frames.
class GpOracleDenoiser : public Denoiser {
 public:
  GpOracleDenoiser(GpOracleParams params, NoiseSchedule schedule);

  std::size_t window() const override { return params_.window; }
  const GpOracleParams& params() const { return params_; }

  FrameSequence predict(const FrameSequence& segment, std::size_t timestep,
                        const Condition& condition) const override;

 private:
  const Matrix& posterior_operator(std::size_t n, std::size_t timestep) const;

  GpOracleParams params_;
  NoiseSchedule schedule_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, Matrix> operator_cache_;
};

/// Test double predicting all-zeros.
class ZeroDenoiser : public Denoiser {
 public:
  explicit ZeroDenoiser(std::size_t window);

  std::size_t window() const override { return window_; }
  FrameSequence predict(const FrameSequence& segment, std::size_t timestep,
                        const Condition& condition) const override;

 private:
  std::size_t window_;
};

std::unique_ptr<Denoiser> zero_denoiser(std::size_t window);

}  // namespace brickwall
