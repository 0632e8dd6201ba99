#include "brickwall/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <memory>

#include <json.hpp>

#include "brickwall/brick.hpp"
#include "brickwall/errors.hpp"

namespace brickwall {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct Experiment {
  NoiseSchedule schedule;
  StepLadder ladder;
  std::unique_ptr<GpOracleDenoiser> denoiser;
};

Experiment build_experiment(const ExperimentConfig& config, StrategyKind kind) {
  NoiseSchedule schedule =
      build_linear_schedule(config.total_timesteps, config.beta_start, config.beta_end);
  StepLadder ladder = ddim_ladder(config.total_timesteps, config.sampler_steps);
  // The untiled reference sees the whole padded latent in one call.
  const std::size_t window = kind == StrategyKind::Untiled
                                 ? padded_length(config.target_frames, config.window)
                                 : config.window;
  GpOracleParams params{config.rho, window, config.channels};
  auto denoiser = std::make_unique<GpOracleDenoiser>(params, schedule);
  return {std::move(schedule), std::move(ladder), std::move(denoiser)};
}

ResultRow run_one(const ExperimentConfig& config, StrategyKind kind, bool exact) {
  const auto start = std::chrono::steady_clock::now();

  const Experiment ex = build_experiment(config, kind);
  const StrategyConfig strategy = config.strategy_config(kind);

  const Matrix cov =
      exact ? propagate_covariance(strategy, ex.schedule, ex.ladder, *ex.denoiser,
                                   config.target_frames, config.channels)
            : estimate_covariance_mc(strategy, ex.schedule, ex.ladder, *ex.denoiser,
                                     config.target_frames, config.channels,
                                     config.mc_samples, config.seed, config.workers);
  const Matrix target = gp_covariance(config.target_frames, config.rho);
  const MetricsReport report = metrics(cov, target, config.window);

  const auto end = std::chrono::steady_clock::now();

  ResultRow row;
  row.strategy = strategy_name(kind);
  row.window = config.window;
  row.stride = strategy.effective_stride();
  row.overlap = kind == StrategyKind::SlidingWindow ? strategy.overlap : 0;
  row.eta = config.eta;
  row.total_timesteps = config.total_timesteps;
  row.sampler_steps = config.sampler_steps;
  row.rho = config.rho;
  row.channels = config.channels;
  row.target_frames = config.target_frames;
  row.seed = config.seed;
  row.mc_samples = exact ? 0 : config.mc_samples;
  row.cov_error_total = report.cov_error_total;
  row.cov_error_boundary = report.cov_error_boundary;
  row.marginal_var_error = report.marginal_var_error;
  row.mean_boundary_jump = report.mean_boundary_jump();
  row.dynamic_degree = report.dynamic_degree;
  row.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return row;
}

}  // namespace

const std::string& csv_header() {
  static const std::string header =
      "strategy,f,stride,overlap,eta,T,S,rho,d,F,seed,mc_samples,cov_error_total,"
      "cov_error_boundary,marginal_var_error,mean_boundary_jump,dynamic_degree,wall_ms";
  return header;
}

std::string to_csv(std::span<const ResultRow> rows) {
  std::string out = csv_header();
  out += '\n';
  for (const ResultRow& r : rows) {
    out += csv_field(r.strategy);
    out += ',' + std::to_string(r.window);
    out += ',' + std::to_string(r.stride);
    out += ',' + std::to_string(r.overlap);
    out += ',' + format_double(r.eta);
    out += ',' + std::to_string(r.total_timesteps);
    out += ',' + std::to_string(r.sampler_steps);
    out += ',' + format_double(r.rho);
    out += ',' + std::to_string(r.channels);
    out += ',' + std::to_string(r.target_frames);
    out += ',' + std::to_string(r.seed);
    out += ',' + std::to_string(r.mc_samples);
    out += ',' + format_double(r.cov_error_total);
    out += ',' + format_double(r.cov_error_boundary);
    out += ',' + format_double(r.marginal_var_error);
    out += ',' + format_double(r.mean_boundary_jump);
    out += ',' + format_double(r.dynamic_degree);
    out += ',' + format_double(r.wall_ms);
    out += '\n';
  }
  return out;
}

std::string to_json_lines(std::span<const ResultRow> rows) {
  std::string out;
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json j;
    j["strategy"] = r.strategy;
    j["f"] = r.window;
    j["stride"] = r.stride;
    j["overlap"] = r.overlap;
    j["eta"] = r.eta;
    j["T"] = r.total_timesteps;
    j["S"] = r.sampler_steps;
    j["rho"] = r.rho;
    j["d"] = r.channels;
    j["F"] = r.target_frames;
    j["seed"] = r.seed;
    j["mc_samples"] = r.mc_samples;
    j["cov_error_total"] = r.cov_error_total;
    j["cov_error_boundary"] = r.cov_error_boundary;
    j["marginal_var_error"] = r.marginal_var_error;
    j["mean_boundary_jump"] = r.mean_boundary_jump;
    j["dynamic_degree"] = r.dynamic_degree;
    j["wall_ms"] = r.wall_ms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string run_plan(const ExperimentConfig& config) {
  const std::size_t length = padded_length(config.target_frames, config.window);
  const BrickConfig brick{config.window, config.strategy_config().effective_stride(),
                          length};
  std::string out = "step  offset  segments\n";
  for (std::size_t k = 0; k < config.sampler_steps; ++k) {
    const SegmentPlan plan = build_plan(brick, k);
    char head[64];
    std::snprintf(head, sizeof(head), "%-5zu %-7zu ", k, plan.offset);
    out += head;
    for (std::size_t i = 0; i < plan.segments.size(); ++i) {
      if (i > 0) out += ' ';
      out += '[' + std::to_string(plan.segments[i].start) + ',' +
             std::to_string(plan.segments[i].end) + ')';
    }
    out += '\n';
  }
  return out;
}

ResultRow run_covariance(const ExperimentConfig& config) {
  if (config.eta != 0.0) {
    throw CapabilityError(
        "covariance is exact propagation and requires eta = 0; "
        "use the sample command for stochastic runs");
  }
  return run_one(config, config.strategy, /*exact=*/true);
}

ResultRow run_sample(const ExperimentConfig& config) {
  return run_one(config, config.strategy, /*exact=*/false);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config,
                                 std::span<const std::size_t> strides) {
  std::vector<ResultRow> rows;
  rows.reserve(strides.size());
  for (const std::size_t s : strides) {
    ExperimentConfig c = config;
    c.strategy = StrategyKind::Brick;
    c.stride = s;
    c.validate();
    rows.push_back(run_one(c, StrategyKind::Brick, /*exact=*/c.eta == 0.0));
  }
  return rows;
}

std::vector<ResultRow> run_compare(const ExperimentConfig& config) {
  const StrategyKind order[] = {StrategyKind::Untiled, StrategyKind::Concat,
                                StrategyKind::SlidingWindow, StrategyKind::Brick};
  std::vector<ResultRow> rows;
  rows.reserve(4);
  for (const StrategyKind kind : order) {
    rows.push_back(run_one(config, kind, /*exact=*/config.eta == 0.0));
  }
  return rows;
}

}  // namespace brickwall
