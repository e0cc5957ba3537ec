#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fvmcts/baselines.hpp"
#include "fvmcts/drones.hpp"
#include "fvmcts/planner.hpp"
#include "fvmcts/sysadmin.hpp"

namespace fvmcts {

enum class Algorithm { kFvMctsMaxPlus, kFvMctsVarEl, kNaiveMcts, kIql, kRandom };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);

struct DomainSpec {
  std::string name = "sysadmin";  // "sysadmin" or "drones"
  SysAdminParams sysadmin;
  DroneParams drones;

  std::unique_ptr<GenerativeModel> make_model() const;
  std::size_t n_agents() const;
};

struct ExperimentConfig {
  DomainSpec domain;
  Algorithm algorithm = Algorithm::kFvMctsMaxPlus;
  PlannerConfig planner;          // also supplies iterations/depth/c to naive MCTS
  std::size_t memory_cap = 1'000'000;
  IqlConfig iql;
  std::vector<std::uint64_t> seeds;
  std::size_t max_steps = 50;
  // Per-decision wall time; off writes 0 so the CSV is byte-reproducible.
  bool record_timing = true;
  // Episodes run in parallel over this many threads (0: OpenMP default).
  int threads = 0;

  /// Throws ConfigError, including for Var-El on a state-dependent graph.
  void validate() const;

  /// CSV label: algorithm name, with a "_XYZ" suffix for non-TTF Max-Plus flags.
  std::string algo_label() const;
};

/// Parses the plain-text JSON experiment format (see README).
ExperimentConfig load_experiment(const std::filesystem::path& path);
ExperimentConfig parse_experiment(const std::string& json_text);

struct EpisodeRecord {
  std::string algo;
  std::string domain;
  std::string topology;
  std::size_t n_agents = 0;
  std::uint64_t seed = 0;
  double discounted_return = 0.0;
  std::vector<double> decision_ms;
  std::size_t peak_stats_entries = 0;
  std::size_t steps = 0;
  bool terminal = false;
  bool failed = false;
  std::string failure;

  double mean_ms_per_action() const;
};

/// One seeded episode. Memory-guard and induced-width failures come back as
/// failed records instead of exceptions.
EpisodeRecord run_episode(const ExperimentConfig& cfg, const GenerativeModel& model,
                          std::uint64_t seed);

/// Serial reference: episodes one after another, in seed order.
std::vector<EpisodeRecord> run_experiment_serial(const ExperimentConfig& cfg);

/// Episodes spread over OpenMP threads; same records as the serial runner.
std::vector<EpisodeRecord> run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "algo,domain,topology,n_agents,seed,return,mean_ms_per_action,peak_stats_entries,steps,failed";

/// Header plus one row per record, sorted by seed; floats with 6 significant digits.
void write_csv(std::ostream& os, std::span<const EpisodeRecord> records);
void emit_csv(std::span<const EpisodeRecord> records, const std::filesystem::path& path);

struct CellSummary {
  std::string algo;
  std::string domain;
  std::string topology;
  std::size_t n_agents = 0;
  std::size_t episodes = 0;
  std::size_t failures = 0;
  double return_mean = 0.0;
  double return_std = 0.0;
  double ms_mean = 0.0;
  double ms_std = 0.0;
};

/// Groups rows by (algo, domain, topology, n_agents); cells with any failed
/// episode report NaN.
std::vector<CellSummary> summarize(const std::vector<std::filesystem::path>& csv_files);
std::vector<CellSummary> summarize_stream(std::istream& csv);
void print_summary(std::ostream& os, std::span<const CellSummary> cells);

/// Sample mean and (n-1) standard deviation; a single sample has deviation 0.
std::pair<double, double> mean_and_stddev(std::span<const double> xs);

}  // namespace fvmcts
