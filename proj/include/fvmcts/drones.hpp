#pragma once

#include <array>
#include <memory>
#include <string>

#include "fvmcts/generative_model.hpp"

namespace fvmcts {

enum class DroneGraphMode {
  kDynamic,   // proximity and shared-goal edges, rebuilt per state
  kComplete,  // static complete graph (what a static-graph planner would need)
};

/// Multi-drone delivery parameters.
///
/// Grid mapping: the operation space is 2 x 2 units, so a resolution of r
/// units per cell gives a side of round(2 / r) cells (0.20 -> 10, 0.10 -> 20,
/// 0.08 -> 25, 0.05 -> 40). Goal regions are discs of radius max(1, side / 10)
/// cells centred at (side/4, side/4), (side-1-side/4, side/4),
/// (side/4, side-1-side/4) and (side-1-side/4, side-1-side/4).
struct DroneParams {
  std::size_t n_agents = 8;
  double resolution = 0.20;
  double noise = 0.10;
  // Chebyshev distance (cells) under which two drones share a graph edge;
  // 0 means round(0.4 / resolution), i.e. 2 cells at resolution 0.20.
  std::size_t proximity_threshold = 0;

  double goal_board_reward = 1000.0;
  double collision_penalty = 10.0;
  double step_cost = 0.1;             // every un-boarded drone, every step
  double approach_shaping = 1.0;      // per unit of goal distance gained
  double proximity_penalty = 1.0;     // each drone of a pair that ends too close
  std::size_t proximity_distance = 1; // Chebyshev cells counted as "too close"
  double invalid_action_penalty = 1.0;
  double board_conflict_penalty = 10.0;
  double discount = 1.0;

  DroneGraphMode graph_mode = DroneGraphMode::kDynamic;

  void validate() const;
  std::int32_t grid_side() const;
  std::int32_t goal_radius() const;
  std::size_t threshold_cells() const;
};

struct Cell {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Move actions 0..7 (E, NE, N, NW, W, SW, S, SE), then NOOP and BOARD.
inline constexpr Action kDroneNoop = 8;
inline constexpr Action kDroneBoard = 9;
inline constexpr std::size_t kDroneActions = 10;

/// Multi-drone delivery on a grid. Per drone the joint state stores
/// (x, y, boarded, goal region). Boarded drones leave the grid and have a
/// single (no-op) action.
///
/// A step resolves, in order: noise (a move turns 45 degrees either way with
/// total probability `noise`), boarding (BOARD outside the drone's own region
/// is a penalized no-op; when several drones board in one region only the
/// lowest index succeeds and the rest pay board_conflict_penalty), and cell
/// conflicts (movers aiming at the same cell, or at a cell whose occupant
/// stays, stay and pay collision_penalty; repeated until stable). Off-grid
/// moves stay with invalid_action_penalty. Rewards then add -step_cost,
/// approach_shaping times the gain in Euclidean goal distance, +1000 for
/// boarding, and -proximity_penalty for each drone within proximity_distance
/// of another un-boarded drone. Terminal once every drone has boarded.
class DroneDelivery final : public GenerativeModel {
 public:
  explicit DroneDelivery(DroneParams params);

  const DroneParams& params() const noexcept { return params_; }

  std::size_t n_agents() const override { return params_.n_agents; }
  double discount() const override { return params_.discount; }
  JointState initial_state(Rng& rng) const override;
  StepResult step(const JointState& s, const JointAction& a, Rng& rng) const override;
  bool is_terminal(const JointState& s) const override;
  std::shared_ptr<const CoordinationGraph> coordination_graph(const JointState& s) const override;
  std::size_t num_actions(AgentIndex i, const JointState& s) const override;
  bool has_static_graph() const override { return params_.graph_mode == DroneGraphMode::kComplete; }
  std::uint64_t local_state(AgentIndex i, const JointState& s) const override;
  std::string name() const override { return "drones"; }
  std::string topology() const override {
    return params_.graph_mode == DroneGraphMode::kComplete ? "complete" : "dynamic";
  }

  static Cell position(const JointState& s, AgentIndex i) { return {s[4 * i], s[4 * i + 1]}; }
  static bool boarded(const JointState& s, AgentIndex i) { return s[4 * i + 2] != 0; }
  static std::size_t goal(const JointState& s, AgentIndex i) {
    return static_cast<std::size_t>(s[4 * i + 3]);
  }
  static JointState make_state(const std::vector<Cell>& cells, const std::vector<bool>& boarded,
                               const std::vector<std::size_t>& goals);

  const std::array<Cell, 4>& goal_centers() const noexcept { return centers_; }
  bool in_region(Cell c, std::size_t region) const;
  bool in_any_region(Cell c) const;
  /// Cells inside a region, i.e. how many drones it can hold.
  std::size_t capacity(std::size_t region) const;

 private:
  double goal_distance(Cell c, std::size_t region) const;

  DroneParams params_;
  std::int32_t side_;
  std::int32_t radius_;
  std::array<Cell, 4> centers_;
  std::shared_ptr<const CoordinationGraph> complete_;
};

/// Coordination graph of a drone state (see DroneDelivery for the rules).
CoordinationGraph drone_cg(const DroneParams& params, const JointState& s);

}  // namespace fvmcts
