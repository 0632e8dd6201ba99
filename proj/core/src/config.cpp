#include "brickwall/config.hpp"

#include <charconv>
#include <string>

#include "brickwall/errors.hpp"

namespace brickwall {

StrategyConfig ExperimentConfig::strategy_config() const {
  return strategy_config(strategy);
}

StrategyConfig ExperimentConfig::strategy_config(StrategyKind kind) const {
  StrategyConfig s;
  s.kind = kind;
  s.window = window;
  s.stride = kind == StrategyKind::Brick ? stride : 0;
  s.overlap = effective_overlap();
  s.eta = eta;
  return s;
}

void ExperimentConfig::validate() const {
  if (window < 1) {
    throw ValidationError("f must be >= 1");
  }
  if (stride >= window) {
    throw ValidationError("stride must satisfy 0 <= stride < f");
  }
  if (overlap && (*overlap < 1 || *overlap >= window)) {
    throw ValidationError("overlap must satisfy 1 <= overlap < f");
  }
  if (strategy == StrategyKind::SlidingWindow && window < 2) {
    throw ValidationError("sliding_window needs f >= 2 so an overlap can exist");
  }
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw ValidationError("eta must be in [0, 1]");
  }
  if (total_timesteps < 1) {
    throw ValidationError("T must be >= 1");
  }
  if (sampler_steps < 1 || sampler_steps > total_timesteps) {
    throw ValidationError("S must satisfy 1 <= S <= T");
  }
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw ValidationError("betas must satisfy 0 < beta_start <= beta_end < 1");
  }
  if (!(rho >= 0.0) || !(rho < 1.0)) {
    throw ValidationError("rho must be in [0, 1)");
  }
  if (channels < 1) {
    throw ValidationError("d must be >= 1");
  }
  if (target_frames < 1) {
    throw ValidationError("F must be >= 1");
  }
  if (mc_samples < 2) {
    throw ValidationError("mc_samples must be >= 2");
  }
  if (workers < 1) {
    throw ValidationError("workers must be >= 1");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view value, std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParseError(line, "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t parse_unsigned(std::string_view value, std::size_t line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParseError(line,
                     "expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

StrategyKind parse_strategy(std::string_view value, std::size_t line) {
  if (value == "untiled") return StrategyKind::Untiled;
  if (value == "concat") return StrategyKind::Concat;
  if (value == "brick") return StrategyKind::Brick;
  if (value == "sliding_window") return StrategyKind::SlidingWindow;
  throw ParseError(line, "unknown strategy '" + std::string(value) +
                             "' (expected untiled|concat|brick|sliding_window)");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{}
                                             : text.substr(newline + 1);

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + std::string(key) + "'");

    if (key == "strategy") {
      config.strategy = parse_strategy(value, line_no);
    } else if (key == "F") {
      config.target_frames = parse_unsigned(value, line_no);
    } else if (key == "f") {
      config.window = parse_unsigned(value, line_no);
    } else if (key == "stride") {
      config.stride = parse_unsigned(value, line_no);
    } else if (key == "overlap") {
      config.overlap = parse_unsigned(value, line_no);
    } else if (key == "eta") {
      config.eta = parse_double(value, line_no);
    } else if (key == "T") {
      config.total_timesteps = parse_unsigned(value, line_no);
    } else if (key == "S") {
      config.sampler_steps = parse_unsigned(value, line_no);
    } else if (key == "beta_start") {
      config.beta_start = parse_double(value, line_no);
    } else if (key == "beta_end") {
      config.beta_end = parse_double(value, line_no);
    } else if (key == "rho") {
      config.rho = parse_double(value, line_no);
    } else if (key == "d") {
      config.channels = parse_unsigned(value, line_no);
    } else if (key == "seed") {
      config.seed = parse_unsigned(value, line_no);
    } else if (key == "mc_samples") {
      config.mc_samples = parse_unsigned(value, line_no);
    } else if (key == "workers") {
      config.workers = parse_unsigned(value, line_no);
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  config.validate();
  return config;
}

}  // namespace brickwall
