#include <cmath>
#include <limits>
#include <string>

#include "fvmcts/baselines.hpp"

namespace fvmcts {

NaiveMcts::NaiveMcts(const GenerativeModel& model, NaiveMctsConfig cfg, std::uint64_t seed)
    : model_(model), cfg_(cfg), gamma_(cfg.discount.value_or(model.discount())), rng_(seed) {
  if (cfg_.depth < 1) throw ConfigError("naive mcts: depth must be >= 1");
  if (cfg_.iterations == 0 && !(cfg_.time_budget && cfg_.time_budget->count() > 0.0)) {
    throw ConfigError("naive mcts: need an iteration budget or a positive time budget");
  }
}

void NaiveMcts::reset() {
  nodes_.clear();
  total_entries_ = 0;
  peak_state_entries_ = 0;
}

const JointActionNode* NaiveMcts::find(const JointState& s) const {
  auto it = nodes_.find(s);
  return it == nodes_.end() ? nullptr : &it->second;
}

JointActionNode& NaiveMcts::node_for(const JointState& s) {
  auto it = nodes_.find(s);
  if (it != nodes_.end()) return it->second;

  JointActionNode node;
  std::size_t size = 1;
  for (AgentIndex i = 0; i < model_.n_agents(); ++i) {
    const auto k = model_.num_actions(i, s);
    node.action_counts.push_back(k);
    if (k != 0 && size > cfg_.memory_cap / k) {
      size = cfg_.memory_cap + 1;  // saturate; the guard below fires
    } else {
      size *= k;
    }
  }
  if (size > cfg_.memory_cap || total_entries_ + size > cfg_.memory_cap) {
    throw MemoryGuardError("naive mcts: joint-action statistics exceed the cap of " +
                           std::to_string(cfg_.memory_cap) + " entries (" +
                           std::to_string(nodes_.size()) + " states stored)");
  }
  node.joint = StatTable(size);
  total_entries_ += size;
  peak_state_entries_ = std::max(peak_state_entries_, size);
  return nodes_.emplace(s, std::move(node)).first->second;
}

std::size_t NaiveMcts::select(const JointActionNode& node, double c) const {
  const auto& t = node.joint;
  const bool bonus = c > 0.0;
  const double log_n = std::log(static_cast<double>(node.visits));
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < t.size(); ++x) {
    double v = t.values[x];
    if (bonus) {
      v = (node.visits == 0 || t.counts[x] == 0)
              ? std::numeric_limits<double>::infinity()
              : v + c * std::sqrt(log_n / static_cast<double>(t.counts[x]));
    }
    if (v > best_value) {
      best_value = v;
      best = x;
    }
  }
  return best;
}

JointAction NaiveMcts::decode(const JointActionNode& node, std::size_t index) const {
  JointAction a(node.action_counts.size());
  for (std::size_t i = a.size(); i-- > 0;) {
    a[i] = static_cast<Action>(index % node.action_counts[i]);
    index /= node.action_counts[i];
  }
  return a;
}

double NaiveMcts::simulate(const JointState& s, std::size_t depth) {
  if (depth == 0 || model_.is_terminal(s)) return 0.0;
  JointActionNode& node = node_for(s);
  const std::size_t index = select(node, cfg_.exploration);
  auto step = model_.step(s, decode(node, index), rng_);
  double q = 0.0;
  for (double r : step.rewards) q += r;
  q += gamma_ * simulate(step.next, depth - 1);
  ++node.visits;
  node.joint.record(index, q);
  return q;
}

JointAction NaiveMcts::plan(const JointState& s) {
  if (model_.is_terminal(s)) throw std::invalid_argument("plan: state is terminal");
  using clock = std::chrono::steady_clock;
  std::optional<clock::time_point> deadline;
  if (cfg_.time_budget) {
    deadline = clock::now() + std::chrono::duration_cast<clock::duration>(*cfg_.time_budget);
  }
  std::size_t done = 0;
  while ((cfg_.iterations == 0 || done < cfg_.iterations) &&
         (!deadline || clock::now() < *deadline)) {
    simulate(s, cfg_.depth);
    ++done;
  }
  const auto& root = node_for(s);
  return decode(root, select(root, 0.0));
}

}  // namespace fvmcts
