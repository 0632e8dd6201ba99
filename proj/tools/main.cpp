// brickwall: simulator for tiled denoising of long latent sequences.
//
// Subcommands: plan | covariance | sample | sweep | compare. Configuration
// comes from an optional `key = value` file plus a few flag overrides; rows
// go to stdout or --out as CSV (or JSON lines with --json).
//
// Exit codes: 0 success, 2 config error, 3 capability error, 1 internal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brickwall/errors.hpp"
#include "brickwall/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapability = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  bool json = false;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to a key = value config file");
  cmd->add_option("--out", args.out_path, "Output path (default: stdout)");
  cmd->add_flag("--json", args.json, "Emit one JSON object per row instead of CSV");
  cmd->add_option("--workers", args.workers, "Worker threads (overrides config)");
  cmd->add_option("--seed", args.seed, "Base seed (overrides config)");
}

brickwall::ExperimentConfig load_config(const CommonArgs& args) {
  std::string text;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) {
      throw brickwall::ValidationError("cannot open config file '" + args.config_path +
                                       "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  brickwall::ExperimentConfig config = brickwall::parse_config(text);
  if (args.workers) config.workers = *args.workers;
  if (args.seed) config.seed = *args.seed;
  config.validate();
  return config;
}

void write_output(const CommonArgs& args, const std::string& content) {
  if (args.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    throw brickwall::Error("cannot open output file '" + args.out_path + "'");
  }
  out << content;
}

std::string render(const CommonArgs& args, std::span<const brickwall::ResultRow> rows) {
  return args.json ? brickwall::to_json_lines(rows) : brickwall::to_csv(rows);
}

std::vector<std::size_t> parse_stride_list(const std::string& text) {
  std::vector<std::size_t> strides;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size()) {
      throw brickwall::ValidationError("bad stride list entry '" + item + "'");
    }
    strides.push_back(static_cast<std::size_t>(v));
  }
  if (strides.empty()) {
    throw brickwall::ValidationError("stride list is empty");
  }
  return strides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiled denoising simulator for long latent sequences"};
  app.require_subcommand(1);

  CommonArgs plan_args, cov_args, sample_args, sweep_args, compare_args;
  std::string stride_list = "0,1,3,5,7,9";

  CLI::App* plan = app.add_subcommand(
      "plan", "Print the per-step segment layout (offset and ranges)");
  add_common(plan, plan_args);

  CLI::App* covariance = app.add_subcommand(
      "covariance", "Exact output covariance and metrics (eta = 0 only)");
  add_common(covariance, cov_args);

  CLI::App* sample = app.add_subcommand(
      "sample", "Monte Carlo covariance estimate and metrics");
  add_common(sample, sample_args);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "One row per stride over the brick strategy");
  add_common(sweep, sweep_args);
  sweep->add_option("--strides", stride_list, "Comma-separated stride list");

  CLI::App* compare = app.add_subcommand(
      "compare", "One row per strategy: untiled, concat, sliding_window, brick");
  add_common(compare, compare_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (plan->parsed()) {
      write_output(plan_args, brickwall::run_plan(load_config(plan_args)));
    } else if (covariance->parsed()) {
      const brickwall::ResultRow row = brickwall::run_covariance(load_config(cov_args));
      write_output(cov_args, render(cov_args, {&row, 1}));
    } else if (sample->parsed()) {
      const brickwall::ResultRow row = brickwall::run_sample(load_config(sample_args));
      write_output(sample_args, render(sample_args, {&row, 1}));
    } else if (sweep->parsed()) {
      const auto strides = parse_stride_list(stride_list);
      const auto rows = brickwall::run_sweep(load_config(sweep_args), strides);
      write_output(sweep_args, render(sweep_args, rows));
    } else if (compare->parsed()) {
      const auto rows = brickwall::run_compare(load_config(compare_args));
      write_output(compare_args, render(compare_args, rows));
    }
  } catch (const brickwall::CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const brickwall::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const brickwall::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
