#pragma once

#include <memory>
#include <string>

#include "fvmcts/generative_model.hpp"

namespace fvmcts {

enum class SysAdminTopology { kRing, kStar, kRingOfRings };

SysAdminTopology parse_topology(const std::string& name);
std::string to_string(SysAdminTopology t);

enum class MachineStatus : std::int32_t { kGood = 0, kFaulty = 1, kDead = 2 };
enum class MachineLoad : std::int32_t { kIdle = 0, kLoaded = 1, kSuccess = 2 };

inline constexpr Action kNoop = 0;
inline constexpr Action kReboot = 1;

struct SysAdminParams {
  SysAdminTopology topology = SysAdminTopology::kRing;
  std::size_t n_agents = 4;
  std::size_t ring_size = 4;  // nodes per inner ring (ring-of-rings only)

  // GOOD -> FAULTY and FAULTY -> DEAD: base probability plus a bonus per
  // DEAD neighbor, clamped to 1.
  double p_fail_base = 0.05;
  double p_fail_bonus_per_dead_neighbor = 0.3;
  double p_dead_base = 0.05;
  double p_dead_bonus_per_dead_neighbor = 0.3;
  // IDLE -> LOADED, and LOADED -> SUCCESS by current status.
  double p_load = 0.5;
  double p_done_good = 0.5;
  double p_done_faulty = 0.25;

  double discount = 0.9;

  void validate() const;
};

/// Coordination graph of a SysAdmin network.
///
/// ring: cycle 0-1-...-(n-1)-0. star: hub 0 joined to every other machine.
/// ring_of_rings: k = n / ring_size inner rings, ring r holding machines
/// r*m .. r*m+m-1 in a cycle; machine r*m is joined to ((r+1) mod k)*m, so the
/// first machines of the inner rings form an outer ring. Rings of two nodes
/// collapse to a single edge.
CoordinationGraph sysadmin_cg(const SysAdminParams& params);

/// SysAdmin network of machines. Each agent's state entry is
/// status * 3 + load.
///
/// One step, per machine (status draws use the pre-step DEAD neighbor count):
///  - REBOOT: status GOOD, load IDLE, reward 0.
///  - NOOP: GOOD may turn FAULTY and FAULTY may turn DEAD; DEAD stays DEAD.
///    If the new status is DEAD the process is lost (IDLE, reward 0).
///    Otherwise a LOADED machine finishes with p_done_good / p_done_faulty
///    (by its current status), moving to SUCCESS with reward 1; an IDLE or
///    SUCCESS machine picks up a new process with p_load.
class SysAdmin final : public GenerativeModel {
 public:
  explicit SysAdmin(SysAdminParams params);

  static std::int32_t encode(MachineStatus s, MachineLoad l) {
    return static_cast<std::int32_t>(s) * 3 + static_cast<std::int32_t>(l);
  }
  static MachineStatus status(std::int32_t v) { return static_cast<MachineStatus>(v / 3); }
  static MachineLoad load(std::int32_t v) { return static_cast<MachineLoad>(v % 3); }

  const SysAdminParams& params() const noexcept { return params_; }

  std::size_t n_agents() const override { return params_.n_agents; }
  double discount() const override { return params_.discount; }
  JointState initial_state(Rng& rng) const override;
  StepResult step(const JointState& s, const JointAction& a, Rng& rng) const override;
  bool is_terminal(const JointState&) const override { return false; }
  std::shared_ptr<const CoordinationGraph> coordination_graph(const JointState&) const override {
    return graph_;
  }
  std::size_t num_actions(AgentIndex, const JointState&) const override { return 2; }
  bool has_static_graph() const override { return true; }
  std::uint64_t local_state(AgentIndex i, const JointState& s) const override {
    return static_cast<std::uint64_t>(s[i]);
  }
  std::string name() const override { return "sysadmin"; }
  std::string topology() const override { return to_string(params_.topology); }

 private:
  SysAdminParams params_;
  std::shared_ptr<const CoordinationGraph> graph_;
};

}  // namespace fvmcts
