#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fvmcts/experiment.hpp"

using namespace fvmcts;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("fvmcts_bench_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(BENCH_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmall = R"({
  "domain": {"name": "sysadmin", "topology": "ring", "n_agents": 4},
  "algorithm": "fvmcts_maxplus",
  "planner": {"iterations": 40, "depth": 5, "exploration": 2},
  "episodes": 4, "max_steps": 10, "record_timing": false
})";

EpisodeRecord record(std::string algo, std::uint64_t seed, double ret, bool failed = false) {
  EpisodeRecord r;
  r.algo = std::move(algo);
  r.domain = "sysadmin";
  r.topology = "ring";
  r.n_agents = 4;
  r.seed = seed;
  r.discounted_return = ret;
  r.failed = failed;
  return r;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_experiment(kSmall);
  CHECK(cfg.domain.name == "sysadmin");
  CHECK(cfg.domain.sysadmin.n_agents == 4);
  CHECK(cfg.algorithm == Algorithm::kFvMctsMaxPlus);
  CHECK(cfg.planner.iterations == 40);
  CHECK(cfg.planner.depth == 5);
  CHECK(cfg.planner.exploration == 2.0);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(cfg.max_steps == 10);
  CHECK_FALSE(cfg.record_timing);
  CHECK(cfg.algo_label() == "fvmcts_maxplus");

  const auto flagged = parse_experiment(R"({"domain": {"name": "drones"},
      "algorithm": {"name": "fvmcts_maxplus", "flags": "FFF"}, "seeds": [7, 3]})");
  CHECK(flagged.algo_label() == "fvmcts_maxplus_FFF");
  CHECK(flagged.max_steps == 100);
  CHECK(flagged.seeds == std::vector<std::uint64_t>{7, 3});
  CHECK_FALSE(flagged.planner.maxplus.use_node_utilities);

  const auto ve = parse_experiment(R"({"domain": {"name": "sysadmin"}, "algorithm": "fvmcts_varel"})");
  CHECK(ve.planner.backend == Backend::kVarEl);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(parse_experiment("{"), ConfigError);
  CHECK_THROWS_AS(parse_experiment("[]"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"algorithm": "random"})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin"}, "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin", "nagents": 4}})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "chess"}})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin"}, "algorithm": "dqn"})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin"}, "seeds": [1, 1]})"), ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin"}, "planner": {"depth": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "sysadmin", "n_agents": "four"}})"),
                  ConfigError);
}

TEST_CASE("var-el on dynamic drones is a configuration error") {
  CHECK_THROWS_AS(parse_experiment(R"({"domain": {"name": "drones"}, "algorithm": "fvmcts_varel"})"),
                  ConfigError);
  // The static complete-graph variant is allowed.
  CHECK_NOTHROW(parse_experiment(
      R"({"domain": {"name": "drones", "graph": "complete"}, "algorithm": "fvmcts_varel"})"));
}

TEST_CASE("csv layout") {
  std::ostringstream empty;
  write_csv(empty, {});
  CHECK(empty.str() == std::string(kCsvHeader) + "\n");

  std::vector<EpisodeRecord> rs;
  for (std::uint64_t s = 40; s >= 1; --s) rs.push_back(record("random", s, 0.5 * s));
  std::ostringstream os;
  write_csv(os, rs);
  std::istringstream in(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 41);
  // Sorted by seed.
  CHECK(lines[1] == "random,sysadmin,ring,4,1,0.5,0,0,0,0");
  CHECK(lines[40].rfind("random,sysadmin,ring,4,40,20,", 0) == 0);
}

TEST_CASE("summaries") {
  std::vector<EpisodeRecord> rs{record("a", 1, 10.0), record("a", 2, 20.0), record("b", 1, 3.0),
                                record("c", 1, 1.0), record("c", 2, 0.0, true)};
  std::ostringstream os;
  write_csv(os, rs);
  std::istringstream in(os.str());
  const auto cells = summarize_stream(in);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0].algo == "a");
  CHECK(cells[0].episodes == 2);
  CHECK(cells[0].return_mean == doctest::Approx(15.0));
  CHECK(cells[0].return_std == doctest::Approx(7.0711).epsilon(1e-4));
  CHECK(cells[1].return_mean == 3.0);
  CHECK(cells[1].return_std == 0.0);
  CHECK(cells[2].failures == 1);
  CHECK(std::isnan(cells[2].return_mean));
  CHECK(std::isnan(cells[2].return_std));

  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  const auto [m, sd] = mean_and_stddev(xs);
  CHECK(m == 5.0);
  CHECK(sd == doctest::Approx(std::sqrt(32.0 / 7.0)));
}

TEST_CASE("parallel and serial runners agree") {
  for (const char* algo : {"fvmcts_maxplus", "fvmcts_varel", "iql", "random", "naive_mcts"}) {
    auto cfg = parse_experiment(kSmall);
    cfg.algorithm = parse_algorithm(algo);
    cfg.planner.backend = cfg.algorithm == Algorithm::kFvMctsVarEl ? Backend::kVarEl : Backend::kMaxPlus;
    cfg.iql.episodes = 50;
    cfg.threads = 3;
    std::ostringstream a, b;
    write_csv(a, run_experiment_serial(cfg));
    write_csv(b, run_experiment(cfg));
    INFO(algo);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("memory guard failures become flagged rows") {
  auto cfg = parse_experiment(kSmall);
  cfg.algorithm = Algorithm::kNaiveMcts;
  cfg.memory_cap = 20;  // one 16-entry state fits, the second does not
  const auto rs = run_experiment(cfg);
  REQUIRE(rs.size() == 4);
  for (const auto& r : rs) {
    CHECK(r.failed);
    CHECK_FALSE(r.failure.empty());
  }
  std::ostringstream os;
  write_csv(os, rs);
  std::istringstream in(os.str());
  CHECK(std::isnan(summarize_stream(in).at(0).return_mean));
}

TEST_CASE("episode bookkeeping") {
  auto cfg = parse_experiment(kSmall);
  const auto model = cfg.domain.make_model();
  const auto r = run_episode(cfg, *model, 9);
  CHECK(r.steps == 10);
  CHECK(r.decision_ms.size() == 10);
  CHECK_FALSE(r.failed);
  CHECK(r.peak_stats_entries <= 4 * 2 + 4 * 4);
  CHECK(r.peak_stats_entries > 0);
  CHECK(r.discounted_return >= 0.0);
  // Four machines earn at most 1 each per step.
  CHECK(r.discounted_return <= 4 * (1 - std::pow(0.9, 10)) / 0.1 + 1e-9);
}

TEST_CASE("cli") {
  const auto cfg = write_file("small.json", kSmall);
  const auto out1 = scratch() / "a.csv";
  const auto out2 = scratch() / "b.csv";
  CHECK(run("run --config " + cfg.string() + " --out " + out1.string()) == 0);
  CHECK(run("run --config " + cfg.string() + " --out " + out2.string() + " --serial") == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1).rfind(kCsvHeader, 0) == 0);
  CHECK(run("summarize " + out1.string()) == 0);

  const auto bad = write_file("bad.json", R"({"domain": {"name": "drones"}, "algorithm": "fvmcts_varel"})");
  CHECK(run("run --config " + bad.string()) != 0);
  const auto junk = write_file("junk.json", "not json");
  CHECK(run("run --config " + junk.string()) != 0);
  CHECK(run("run --config " + (scratch() / "missing.json").string()) != 0);
  CHECK(run("frobnicate") != 0);
  CHECK(run("selfcheck --trials 20") == 0);

  fs::remove_all(scratch());
}

TEST_CASE("shipped configs parse") {
  std::size_t n = 0;
  for (const auto& entry : fs::recursive_directory_iterator(CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_experiment(entry.path()));
    ++n;
  }
  CHECK(n > 0);
}
