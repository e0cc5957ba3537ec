#include "fvmcts/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fvmcts/maxplus.hpp"
#include "fvmcts/oracle.hpp"
#include "fvmcts/varel.hpp"

namespace fvmcts {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string describe(const JointAction& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  return os.str();
}

}  // namespace

CheckResult check_varel_exactness(std::size_t trials, std::uint64_t seed) {
  CheckResult res{"varel_exactness", true, trials, {}, 0.0};
  const auto t0 = clock_type::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> agents(1, 5), actions(1, 3);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (std::size_t t = 0; t < trials && res.passed; ++t) {
    const auto n = agents(rng);
    std::vector<std::size_t> counts(n);
    for (auto& k : counts) k = actions(rng);
    auto inst = oracle::random_instance(oracle::random_graph(n, density(rng), rng), counts,
                                        -10.0, 10.0, rng);
    const auto stats = oracle::as_varel_stats(inst);
    std::vector<AgentIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const auto action = var_el_select(stats, order, 0.0);
    const auto truth = oracle::enumerate_best(inst, false);
    const double got = oracle::objective(inst, action, false);
    if (got != truth.best_value) {
      res.passed = false;
      std::ostringstream os;
      os << "trial " << t << ": var-el chose (" << describe(action) << ") worth " << got
         << ", optimum (" << describe(truth.best_action) << ") worth " << truth.best_value;
      res.detail = os.str();
    }
  }
  if (res.passed) res.detail = std::to_string(trials) + " instances matched enumeration";
  res.seconds = seconds_since(t0);
  return res;
}

CheckResult check_maxplus_tree_exactness(std::size_t trials, std::uint64_t seed, bool synchronous) {
  CheckResult res{synchronous ? "maxplus_tree_exactness_synchronous" : "maxplus_tree_exactness",
                  true, trials, {}, 0.0};
  const auto t0 = clock_type::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> agents(1, 6), actions(1, 3);
  for (std::size_t t = 0; t < trials && res.passed; ++t) {
    const auto n = agents(rng);
    std::vector<std::size_t> counts(n);
    for (auto& k : counts) k = actions(rng);
    auto inst = oracle::random_instance(oracle::random_tree(n, rng), counts, -10.0, 10.0, rng);
    const auto stats = oracle::as_maxplus_stats(inst);

    MaxPlusConfig cfg;
    cfg.max_rounds = n;
    cfg.schedule = synchronous ? MessageSchedule::kSynchronous : MessageSchedule::kSequential;
    const auto action = max_plus(stats, cfg, 0.0);
    const auto truth = oracle::enumerate_best(inst, true);
    const double got = oracle::objective(inst, action, true);
    if (std::abs(got - truth.best_value) > 1e-9) {
      res.passed = false;
      std::ostringstream os;
      os << "trial " << t << " (n=" << n << "): max-plus chose (" << describe(action)
         << ") worth " << got << ", optimum (" << describe(truth.best_action) << ") worth "
         << truth.best_value;
      res.detail = os.str();
    }
  }
  if (res.passed) res.detail = std::to_string(trials) + " trees matched enumeration";
  res.seconds = seconds_since(t0);
  return res;
}

CheckResult check_running_means(std::size_t trials, std::uint64_t seed) {
  CheckResult res{"running_means", true, trials, {}, 0.0};
  const auto t0 = clock_type::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> agents(1, 5), actions(1, 3), length(1, 200);
  std::uniform_real_distribution<double> reward(-100.0, 100.0);
  double worst = 0.0;

  for (std::size_t t = 0; t < trials && res.passed; ++t) {
    const auto n = agents(rng);
    std::vector<std::size_t> counts(n);
    for (auto& k : counts) k = actions(rng);
    auto graph = std::make_shared<const CoordinationGraph>(n, oracle::random_graph(n, 0.5, rng));
    StateStats mp(StatsMode::kMaxPlus, {graph, counts});
    StateStats ve(StatsMode::kVarEl, {graph, counts});

    // Sample streams keyed by (kind, index, flattened action).
    std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<double>> streams;
    const auto steps = length(rng);
    for (std::size_t s = 0; s < steps; ++s) {
      JointAction a(n);
      RewardVector q(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<Action>(std::uniform_int_distribution<std::size_t>(0, counts[i] - 1)(rng));
        q[i] = reward(rng);
      }
      update_maxplus_stats(mp, a, q);
      const double team = std::accumulate(q.begin(), q.end(), 0.0);
      update_varel_stats(ve, a, team);
      for (std::size_t i = 0; i < n; ++i) streams[{0, i, a[i]}].push_back(q[i]);
      for (std::size_t k = 0; k < graph->n_edges(); ++k) {
        const auto [i, j] = graph->edges()[k];
        streams[{1, k, a[i] * counts[j] + a[j]}].push_back(q[i] + q[j]);
      }
      for (std::size_t c = 0; c < ve.components.size(); ++c) {
        streams[{2, c, ve.component_index(c, a)}].push_back(team);
      }
    }
    for (const auto& [key, samples] : streams) {
      const auto [kind, idx, x] = key;
      const StatTable& table =
          kind == 0 ? mp.nodes[idx] : kind == 1 ? mp.edges[idx] : ve.component_tables[idx];
      const double err = std::abs(table.values[x] - oracle::direct_mean(samples));
      worst = std::max(worst, err);
      if (err > 1e-9 || table.counts[x] != samples.size()) {
        res.passed = false;
        res.detail = "trial " + std::to_string(t) + ": running mean off by " + std::to_string(err);
        break;
      }
    }
    if (mp.visits != steps || ve.visits != steps) {
      res.passed = false;
      res.detail = "state visit count mismatch";
    }
  }
  if (res.passed) {
    std::ostringstream os;
    os << trials << " streams, worst error " << worst;
    res.detail = os.str();
  }
  res.seconds = seconds_since(t0);
  return res;
}

std::vector<CheckResult> run_selfcheck(std::size_t trials, std::uint64_t seed) {
  return {check_varel_exactness(trials, seed), check_maxplus_tree_exactness(trials, seed + 1),
          check_maxplus_tree_exactness(trials, seed + 2, true),
          check_running_means(trials, seed + 3)};
}

}  // namespace fvmcts
