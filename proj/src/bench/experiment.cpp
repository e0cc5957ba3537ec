#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fvmcts/experiment.hpp"

namespace fvmcts {

double EpisodeRecord::mean_ms_per_action() const {
  if (decision_ms.empty()) return 0.0;
  return std::accumulate(decision_ms.begin(), decision_ms.end(), 0.0) /
         static_cast<double>(decision_ms.size());
}

namespace {

// Planner randomness is a separate stream from the environment's.
std::uint64_t planner_seed(std::uint64_t seed) { return seed * 0x9E3779B97F4A7C15ULL + 0x5851F42DULL; }

NaiveMctsConfig naive_config(const ExperimentConfig& cfg) {
  NaiveMctsConfig out;
  out.iterations = cfg.planner.iterations;
  out.time_budget = cfg.planner.time_budget;
  out.depth = cfg.planner.depth;
  out.exploration = cfg.planner.exploration;
  out.discount = cfg.planner.discount;
  out.memory_cap = cfg.memory_cap;
  return out;
}

}  // namespace

EpisodeRecord run_episode(const ExperimentConfig& cfg, const GenerativeModel& model,
                          std::uint64_t seed) {
  EpisodeRecord rec;
  rec.algo = cfg.algo_label();
  rec.domain = model.name();
  rec.topology = model.topology();
  rec.n_agents = model.n_agents();
  rec.seed = seed;

  Rng env_rng(seed);
  Rng policy_rng(planner_seed(seed));
  const double gamma = cfg.planner.discount.value_or(model.discount());

  std::unique_ptr<FactoredPlanner> factored;
  std::unique_ptr<NaiveMcts> naive;
  IqlTables iql;
  switch (cfg.algorithm) {
    case Algorithm::kFvMctsMaxPlus:
    case Algorithm::kFvMctsVarEl: {
      auto pc = cfg.planner;
      pc.backend = cfg.algorithm == Algorithm::kFvMctsVarEl ? Backend::kVarEl : Backend::kMaxPlus;
      factored = std::make_unique<FactoredPlanner>(model, pc, planner_seed(seed));
      break;
    }
    case Algorithm::kNaiveMcts:
      naive = std::make_unique<NaiveMcts>(model, naive_config(cfg), planner_seed(seed));
      break;
    case Algorithm::kIql: {
      auto qc = cfg.iql;
      qc.discount = gamma;
      iql = iql_train(model, qc, policy_rng);
      rec.peak_stats_entries = iql.entries();
      break;
    }
    case Algorithm::kRandom:
      break;
  }

  using clock = std::chrono::steady_clock;
  JointState s = model.initial_state(env_rng);
  double weight = 1.0;
  try {
    for (std::size_t t = 0; t < cfg.max_steps && !model.is_terminal(s); ++t) {
      const auto start = clock::now();
      JointAction a;
      switch (cfg.algorithm) {
        case Algorithm::kFvMctsMaxPlus:
        case Algorithm::kFvMctsVarEl:
          factored->reset();
          a = factored->plan(s);
          rec.peak_stats_entries =
              std::max(rec.peak_stats_entries, factored->store().peak_state_entries());
          break;
        case Algorithm::kNaiveMcts:
          naive->reset();
          a = naive->plan(s);
          rec.peak_stats_entries = std::max(rec.peak_stats_entries, naive->peak_state_entries());
          break;
        case Algorithm::kIql:
          a = iql_act(iql, model, s);
          break;
        case Algorithm::kRandom:
          a = random_policy(model, s, policy_rng);
          break;
      }
      const std::chrono::duration<double, std::milli> elapsed = clock::now() - start;
      rec.decision_ms.push_back(cfg.record_timing ? elapsed.count() : 0.0);

      auto step = model.step(s, a, env_rng);
      double team = 0.0;
      for (double r : step.rewards) team += r;
      rec.discounted_return += weight * team;
      weight *= gamma;
      s = std::move(step.next);
      ++rec.steps;
    }
  } catch (const MemoryGuardError& e) {
    rec.failed = true;
    rec.failure = e.what();
  } catch (const std::length_error& e) {
    rec.failed = true;
    rec.failure = e.what();
  } catch (const std::bad_alloc&) {
    rec.failed = true;
    rec.failure = "out of memory";
  }
  if (rec.failed) {
    rec.discounted_return = std::numeric_limits<double>::quiet_NaN();
    // A failed decision never produced an action; keep the list aligned with steps.
    rec.decision_ms.resize(rec.steps);
  }
  rec.terminal = model.is_terminal(s);
  return rec;
}

std::vector<EpisodeRecord> run_experiment_serial(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto model = cfg.domain.make_model();
  std::vector<EpisodeRecord> out;
  out.reserve(cfg.seeds.size());
  for (auto seed : cfg.seeds) out.push_back(run_episode(cfg, *model, seed));
  return out;
}

std::vector<EpisodeRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto model = cfg.domain.make_model();
  const auto count = static_cast<std::ptrdiff_t>(cfg.seeds.size());
  std::vector<EpisodeRecord> out(cfg.seeds.size());
#ifdef _OPENMP
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out[idx] = run_episode(cfg, *model, cfg.seeds[idx]);
  }
  return out;
}

}  // namespace fvmcts
