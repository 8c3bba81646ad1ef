// Command-line front end: run, replicate, gradcheck.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "selftaught/config.hpp"
#include "selftaught/errors.hpp"
#include "selftaught/experiment.hpp"
#include "selftaught/gradcheck.hpp"
#include "selftaught/io.hpp"
#include "selftaught/stats.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadFlags = 2,
  kConfigError = 3,
  kIoError = 4,
};

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::size_t run_id = 0;
  std::string out;
  std::string trace_out;
  std::vector<std::size_t> trace_gens;
  std::string summary_out;
  unsigned threads = 1;
  bool echo_config = false;

  std::size_t trials = 100;
  double epsilon = 1e-5;
  double tolerance = 1e-4;
};

selftaught::ExperimentConfig load_config(const Options& opt) {
  std::string text;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw selftaught::IoError("cannot read config file " + opt.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  auto config = selftaught::parse_config(text);
  if (opt.seed) config.base_seed = *opt.seed;
  if (opt.echo_config) std::cerr << selftaught::config_to_text(config);
  return config;
}

void emit_stats(const std::string& path, std::span<const selftaught::GenerationStats> stats) {
  if (path.empty() || path == "-") {
    selftaught::write_stats_csv(stats, std::cout);
    return;
  }
  selftaught::write_file_atomic(path, [&](std::ostream& out) { selftaught::write_stats_csv(stats, out); });
}

int cmd_run(const Options& opt) {
  const auto config = load_config(opt);
  selftaught::TraceSelection selection;
  if (!opt.trace_out.empty()) {
    selection.all = opt.trace_gens.empty();
    selection.generations = opt.trace_gens;
  }
  const auto result = selftaught::run_experiment(config, opt.run_id, selection);
  if (!opt.trace_out.empty()) {
    selftaught::write_file_atomic(opt.trace_out,
                                  [&](std::ostream& out) { selftaught::write_trace_jsonl(result.traces, out); });
  }
  emit_stats(opt.out, result.stats);
  return kOk;
}

int cmd_replicate(const Options& opt) {
  const auto config = load_config(opt);
  const auto stats = selftaught::run_replicates(config, opt.threads);
  if (!opt.summary_out.empty()) {
    const auto summary = selftaught::summarize(stats);
    selftaught::write_file_atomic(opt.summary_out,
                                  [&](std::ostream& out) { selftaught::write_summary_csv(summary, out); });
  }
  emit_stats(opt.out, stats);
  return kOk;
}

int cmd_gradcheck(const Options& opt) {
  selftaught::GradCheckOptions g;
  g.trials = opt.trials;
  g.seed = opt.seed.value_or(0);
  g.epsilon = opt.epsilon;
  const auto report = selftaught::run_gradient_check(g);
  const bool ok = report.max_relative_error < opt.tolerance;
  std::cout << "trials=" << report.trials << " weights=" << report.weights_checked
            << " max_relative_error=" << report.max_relative_error
            << " max_absolute_error=" << report.max_absolute_error << " tolerance=" << opt.tolerance << ' '
            << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-taught neural network foraging simulator"};
  app.require_subcommand(1);
  Options opt;

  auto* run = app.add_subcommand("run", "Run one replicate and write per-generation stats");
  run->add_option("--config", opt.config_path, "Config file (key = value)")->check(CLI::ExistingFile);
  run->add_option("--seed", opt.seed, "Override base_seed");
  run->add_option("--run-id", opt.run_id, "Replicate index used for seed derivation");
  run->add_option("--out", opt.out, "Stats CSV path ('-' or absent: stdout)");
  run->add_option("--trace-out", opt.trace_out, "Trace JSONL path");
  run->add_option("--trace-gens", opt.trace_gens, "Generations to trace (default: all)")->delimiter(',');
  run->add_flag("--echo-config", opt.echo_config, "Print the effective config to stderr");

  auto* rep = app.add_subcommand("replicate", "Run n_runs replicates and aggregate");
  rep->add_option("--config", opt.config_path, "Config file (key = value)")->check(CLI::ExistingFile);
  rep->add_option("--seed", opt.seed, "Override base_seed");
  rep->add_option("--out", opt.out, "Stats CSV path ('-' or absent: stdout)");
  rep->add_option("--summary-out", opt.summary_out, "Summary CSV path");
  rep->add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  rep->add_flag("--echo-config", opt.echo_config, "Print the effective config to stderr");

  auto* grad = app.add_subcommand("gradcheck", "Finite-difference check of the self-teaching gradient");
  grad->add_option("--trials", opt.trials, "Random controllers to check")->check(CLI::PositiveNumber);
  grad->add_option("--seed", opt.seed, "Random seed");
  grad->add_option("--epsilon", opt.epsilon, "Central-difference step")->check(CLI::PositiveNumber);
  grad->add_option("--tolerance", opt.tolerance, "Maximum allowed relative error")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadFlags;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    if (rep->parsed()) return cmd_replicate(opt);
    return cmd_gradcheck(opt);
  } catch (const selftaught::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const selftaught::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
