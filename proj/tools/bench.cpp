// bench: run experiment configs, summarize CSVs, run the randomized self-checks.

#include <CLI11.hpp>

#include <iostream>

#include "fvmcts/experiment.hpp"
#include "fvmcts/selfcheck.hpp"

namespace {

constexpr int kConfigExit = 2;

int cmd_run(const std::string& config, const std::string& out, bool serial, int threads) {
  auto cfg = fvmcts::load_experiment(config);
  if (threads > 0) cfg.threads = threads;
  const auto records = serial ? fvmcts::run_experiment_serial(cfg) : fvmcts::run_experiment(cfg);
  if (out.empty() || out == "-") {
    fvmcts::write_csv(std::cout, records);
  } else {
    fvmcts::emit_csv(records, out);
  }
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
      std::cerr << "seed " << r.seed << " failed: " << r.failure << '\n';
    }
  }
  if (failed > 0) std::cerr << failed << "/" << records.size() << " episodes failed\n";
  return 0;
}

int cmd_summarize(const std::vector<std::string>& files) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  const auto cells = fvmcts::summarize(paths);
  fvmcts::print_summary(std::cout, cells);
  return 0;
}

int cmd_selfcheck(std::size_t trials, std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : fvmcts::run_selfcheck(trials, seed)) {
    std::printf("%-36s %s  %6.2fs  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.seconds,
                r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factored-value MCTS experiment runner"};
  app.require_subcommand(1);

  std::string config, out;
  bool serial = false;
  int threads = 0;
  auto* run = app.add_subcommand("run", "run every seed of a JSON experiment config");
  run->add_option("--config,-c", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out,-o", out, "CSV output path (default: stdout)");
  run->add_flag("--serial", serial, "run episodes one after another");
  run->add_option("--threads,-j", threads, "episode threads (overrides the config)");

  std::vector<std::string> files;
  auto* summarize = app.add_subcommand("summarize", "mean and stddev per cell over CSV files");
  summarize->add_option("csv", files, "CSV files from bench run")->required()->check(CLI::ExistingFile);

  std::size_t trials = 1000;
  std::uint64_t seed = 2024;
  auto* selfcheck = app.add_subcommand("selfcheck", "exactness and statistics checks vs brute force");
  selfcheck->add_option("--trials", trials, "random instances per check");
  selfcheck->add_option("--seed", seed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out, serial, threads);
    if (*summarize) return cmd_summarize(files);
    if (*selfcheck) return cmd_selfcheck(trials, seed);
  } catch (const fvmcts::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
