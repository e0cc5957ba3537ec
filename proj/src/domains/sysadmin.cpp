#include "fvmcts/sysadmin.hpp"

#include <algorithm>
#include <random>

namespace fvmcts {

SysAdminTopology parse_topology(const std::string& name) {
  if (name == "ring") return SysAdminTopology::kRing;
  if (name == "star") return SysAdminTopology::kStar;
  if (name == "ring_of_rings") return SysAdminTopology::kRingOfRings;
  throw ConfigError("unknown SysAdmin topology: " + name);
}

std::string to_string(SysAdminTopology t) {
  switch (t) {
    case SysAdminTopology::kRing: return "ring";
    case SysAdminTopology::kStar: return "star";
    case SysAdminTopology::kRingOfRings: return "ring_of_rings";
  }
  return "unknown";
}

void SysAdminParams::validate() const {
  if (n_agents == 0) throw ConfigError("sysadmin: n_agents must be positive");
  for (double p : {p_fail_base, p_fail_bonus_per_dead_neighbor, p_dead_base,
                   p_dead_bonus_per_dead_neighbor, p_load, p_done_good, p_done_faulty}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sysadmin: probabilities must lie in [0, 1]");
  }
  if (!(discount >= 0.0 && discount <= 1.0)) throw ConfigError("sysadmin: discount must lie in [0, 1]");
  if (topology == SysAdminTopology::kRingOfRings &&
      (ring_size == 0 || n_agents % ring_size != 0)) {
    throw ConfigError("sysadmin: ring_of_rings needs n_agents divisible by ring_size");
  }
}

namespace {

void add_cycle(std::vector<Edge>& edges, const std::vector<AgentIndex>& nodes) {
  if (nodes.size() < 2) return;
  if (nodes.size() == 2) {
    edges.push_back({nodes[0], nodes[1]});
    return;
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    edges.push_back({nodes[k], nodes[(k + 1) % nodes.size()]});
  }
}

}  // namespace

CoordinationGraph sysadmin_cg(const SysAdminParams& params) {
  params.validate();
  const auto n = params.n_agents;
  switch (params.topology) {
    case SysAdminTopology::kRing: return CoordinationGraph::ring(n);
    case SysAdminTopology::kStar: return CoordinationGraph::star(n);
    case SysAdminTopology::kRingOfRings: {
      const auto m = params.ring_size;
      const auto k = n / m;
      std::vector<Edge> edges;
      std::vector<AgentIndex> hubs;
      for (std::size_t r = 0; r < k; ++r) {
        std::vector<AgentIndex> ring;
        for (std::size_t x = 0; x < m; ++x) ring.push_back(r * m + x);
        add_cycle(edges, ring);
        hubs.push_back(r * m);
      }
      add_cycle(edges, hubs);
      return CoordinationGraph(n, std::move(edges));
    }
  }
  throw ConfigError("sysadmin: bad topology");
}

SysAdmin::SysAdmin(SysAdminParams params)
    : params_(params), graph_(std::make_shared<const CoordinationGraph>(sysadmin_cg(params))) {}

JointState SysAdmin::initial_state(Rng&) const {
  return JointState(params_.n_agents, encode(MachineStatus::kGood, MachineLoad::kIdle));
}

StepResult SysAdmin::step(const JointState& s, const JointAction& a, Rng& rng) const {
  const auto n = params_.n_agents;
  if (s.size() != n || a.size() != n) throw std::invalid_argument("sysadmin: bad state or action size");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StepResult out{JointState(n), RewardVector(n, 0.0)};

  for (AgentIndex i = 0; i < n; ++i) {
    if (a[i] != kNoop && a[i] != kReboot) {
      throw std::invalid_argument("sysadmin: invalid action " + std::to_string(a[i]));
    }
    // Two draws per machine regardless of branch keep the stream aligned.
    const double u_status = unit(rng);
    const double u_load = unit(rng);

    if (a[i] == kReboot) {
      out.next[i] = encode(MachineStatus::kGood, MachineLoad::kIdle);
      continue;
    }
    std::size_t dead_neighbors = 0;
    for (auto j : graph_->neighbors(i)) {
      if (status(s[j]) == MachineStatus::kDead) ++dead_neighbors;
    }
    const auto st = status(s[i]);
    const auto ld = load(s[i]);
    auto next_status = st;
    if (st == MachineStatus::kGood) {
      const double p = std::min(1.0, params_.p_fail_base +
                                         params_.p_fail_bonus_per_dead_neighbor * dead_neighbors);
      if (u_status < p) next_status = MachineStatus::kFaulty;
    } else if (st == MachineStatus::kFaulty) {
      const double p = std::min(1.0, params_.p_dead_base +
                                         params_.p_dead_bonus_per_dead_neighbor * dead_neighbors);
      if (u_status < p) next_status = MachineStatus::kDead;
    }

    auto next_load = MachineLoad::kIdle;
    if (next_status != MachineStatus::kDead) {
      if (ld == MachineLoad::kLoaded) {
        const double p = st == MachineStatus::kGood ? params_.p_done_good : params_.p_done_faulty;
        if (u_load < p) {
          next_load = MachineLoad::kSuccess;
          out.rewards[i] = 1.0;
        } else {
          next_load = MachineLoad::kLoaded;
        }
      } else if (u_load < params_.p_load) {
        next_load = MachineLoad::kLoaded;
      }
    }
    out.next[i] = encode(next_status, next_load);
  }
  return out;
}

}  // namespace fvmcts
