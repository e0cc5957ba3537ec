#include <algorithm>
#include <random>

#include "fvmcts/baselines.hpp"

namespace fvmcts {

std::size_t IqlTables::entries() const noexcept {
  std::size_t total = 0;
  for (const auto& t : tables)
    for (const auto& [key, row] : t) total += row.size();
  return total;
}

Action iql_greedy(const IqlTables& q, AgentIndex agent, std::uint64_t local_state,
                  std::size_t n_actions) {
  const auto& table = q.tables.at(agent);
  auto it = table.find(local_state);
  if (it == table.end()) return 0;
  const auto& row = it->second;
  std::size_t best = 0;
  for (std::size_t a = 1; a < std::min(n_actions, row.size()); ++a) {
    if (row[a] > row[best]) best = a;
  }
  return static_cast<Action>(best);
}

namespace {

std::vector<double>& row_for(IqlTables& q, AgentIndex i, std::uint64_t key, std::size_t n) {
  auto& row = q.tables[i][key];
  if (row.size() < n) row.resize(n, 0.0);
  return row;
}

}  // namespace

IqlTables iql_train(const GenerativeModel& model, const IqlConfig& cfg, Rng& rng) {
  const std::size_t n = model.n_agents();
  const double gamma = cfg.discount.value_or(model.discount());
  IqlTables q;
  q.tables.resize(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  JointAction a(n);
  std::vector<std::uint64_t> keys(n);
  for (std::size_t ep = 0; ep < cfg.episodes; ++ep) {
    double eps = cfg.epsilon;
    if (cfg.linear_decay && cfg.episodes > 1) {
      eps *= 1.0 - static_cast<double>(ep) / static_cast<double>(cfg.episodes - 1);
    }
    JointState s = model.initial_state(rng);
    for (std::size_t t = 0; t < cfg.max_steps && !model.is_terminal(s); ++t) {
      for (AgentIndex i = 0; i < n; ++i) {
        keys[i] = model.local_state(i, s);
        const auto k = model.num_actions(i, s);
        if (unit(rng) < eps) {
          std::uniform_int_distribution<Action> pick(0, static_cast<Action>(k) - 1);
          a[i] = pick(rng);
        } else {
          a[i] = iql_greedy(q, i, keys[i], k);
        }
      }
      auto step = model.step(s, a, rng);
      const bool terminal = model.is_terminal(step.next);
      // Each agent learns from its own reward and touches only its own table.
      for (AgentIndex i = 0; i < n; ++i) {
        double target = step.rewards[i];
        if (!terminal) {
          const auto k_next = model.num_actions(i, step.next);
          const auto& next_row = row_for(q, i, model.local_state(i, step.next), k_next);
          target += gamma * *std::max_element(next_row.begin(), next_row.end());
        }
        auto& row = row_for(q, i, keys[i], model.num_actions(i, s));
        auto& cell = row[static_cast<std::size_t>(a[i])];
        cell += cfg.learning_rate * (target - cell);
      }
      s = std::move(step.next);
    }
  }
  return q;
}

JointAction iql_act(const IqlTables& q, const GenerativeModel& model, const JointState& s) {
  JointAction a(model.n_agents());
  for (AgentIndex i = 0; i < a.size(); ++i) {
    a[i] = iql_greedy(q, i, model.local_state(i, s), model.num_actions(i, s));
  }
  return a;
}

JointAction random_policy(const GenerativeModel& model, const JointState& s, Rng& rng) {
  JointAction a(model.n_agents());
  for (AgentIndex i = 0; i < a.size(); ++i) {
    std::uniform_int_distribution<Action> pick(0, static_cast<Action>(model.num_actions(i, s)) - 1);
    a[i] = pick(rng);
  }
  return a;
}

}  // namespace fvmcts
