#include "fvmcts/drones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fvmcts {

namespace {

constexpr std::array<Cell, 8> kMoves = {{{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                         {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

std::int32_t chebyshev(Cell a, Cell b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

}  // namespace

void DroneParams::validate() const {
  if (n_agents == 0) throw ConfigError("drones: n_agents must be positive");
  if (!(resolution > 0.0 && resolution <= 0.5)) throw ConfigError("drones: resolution must lie in (0, 0.5]");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("drones: noise must lie in [0, 1]");
  if (!(discount >= 0.0 && discount <= 1.0)) throw ConfigError("drones: discount must lie in [0, 1]");
  if (threshold_cells() < 1) throw ConfigError("drones: proximity threshold must be >= 1");
}

std::int32_t DroneParams::grid_side() const {
  return static_cast<std::int32_t>(std::lround(2.0 / resolution));
}

std::int32_t DroneParams::goal_radius() const { return std::max<std::int32_t>(1, grid_side() / 10); }

std::size_t DroneParams::threshold_cells() const {
  if (proximity_threshold != 0) return proximity_threshold;
  return static_cast<std::size_t>(std::max<long>(1, std::lround(0.4 / resolution)));
}

DroneDelivery::DroneDelivery(DroneParams params)
    : params_(params), side_(params.grid_side()), radius_(params.goal_radius()) {
  params_.validate();
  const std::int32_t lo = side_ / 4;
  const std::int32_t hi = side_ - 1 - side_ / 4;
  centers_ = {{{lo, lo}, {hi, lo}, {lo, hi}, {hi, hi}}};
  complete_ = std::make_shared<const CoordinationGraph>(CoordinationGraph::complete(params_.n_agents));

  std::size_t outside = 0;
  for (std::int32_t x = 0; x < side_; ++x)
    for (std::int32_t y = 0; y < side_; ++y)
      if (!in_any_region({x, y})) ++outside;
  if (outside < params_.n_agents) throw ConfigError("drones: grid too small for the drone count");
  std::size_t total_capacity = 0;
  for (std::size_t r = 0; r < 4; ++r) total_capacity += capacity(r);
  if (total_capacity < params_.n_agents) throw ConfigError("drones: goal regions too small");
}

bool DroneDelivery::in_region(Cell c, std::size_t region) const {
  const auto dx = c.x - centers_[region].x;
  const auto dy = c.y - centers_[region].y;
  return dx * dx + dy * dy <= radius_ * radius_;
}

bool DroneDelivery::in_any_region(Cell c) const {
  for (std::size_t r = 0; r < 4; ++r)
    if (in_region(c, r)) return true;
  return false;
}

std::size_t DroneDelivery::capacity(std::size_t region) const {
  std::size_t count = 0;
  for (std::int32_t x = 0; x < side_; ++x)
    for (std::int32_t y = 0; y < side_; ++y)
      if (in_region({x, y}, region)) ++count;
  return count;
}

double DroneDelivery::goal_distance(Cell c, std::size_t region) const {
  return std::hypot(static_cast<double>(c.x - centers_[region].x),
                    static_cast<double>(c.y - centers_[region].y));
}

JointState DroneDelivery::make_state(const std::vector<Cell>& cells, const std::vector<bool>& boarded,
                                     const std::vector<std::size_t>& goals) {
  JointState s(4 * cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    s[4 * i] = cells[i].x;
    s[4 * i + 1] = cells[i].y;
    s[4 * i + 2] = boarded[i] ? 1 : 0;
    s[4 * i + 3] = static_cast<std::int32_t>(goals[i]);
  }
  return s;
}

JointState DroneDelivery::initial_state(Rng& rng) const {
  const auto n = params_.n_agents;

  // Goal assignment: two drones per region first (as many full pairs as the
  // drone count allows), the rest spread at random within capacity.
  std::array<std::size_t, 4> regions = {0, 1, 2, 3};
  std::shuffle(regions.begin(), regions.end(), rng);
  std::vector<std::size_t> goals;
  std::array<std::size_t, 4> load{};
  for (std::size_t k = 0; k < 4 && goals.size() + 2 <= n; ++k) {
    goals.insert(goals.end(), {regions[k], regions[k]});
    load[regions[k]] += 2;
  }
  std::uniform_int_distribution<std::size_t> pick_region(0, 3);
  while (goals.size() < n) {
    const auto r = pick_region(rng);
    if (load[r] >= capacity(r)) continue;
    goals.push_back(r);
    ++load[r];
  }
  std::shuffle(goals.begin(), goals.end(), rng);

  std::vector<Cell> free;
  for (std::int32_t x = 0; x < side_; ++x)
    for (std::int32_t y = 0; y < side_; ++y)
      if (!in_any_region({x, y})) free.push_back({x, y});
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, free.size() - 1);
    std::swap(free[i], free[pick(rng)]);
    cells.push_back(free[i]);
  }
  return make_state(cells, std::vector<bool>(n, false), goals);
}

bool DroneDelivery::is_terminal(const JointState& s) const {
  for (AgentIndex i = 0; i < params_.n_agents; ++i)
    if (!boarded(s, i)) return false;
  return true;
}

std::size_t DroneDelivery::num_actions(AgentIndex i, const JointState& s) const {
  return boarded(s, i) ? 1 : kDroneActions;
}

std::uint64_t DroneDelivery::local_state(AgentIndex i, const JointState& s) const {
  const auto c = position(s, i);
  const auto side = static_cast<std::uint64_t>(side_);
  return ((static_cast<std::uint64_t>(goal(s, i)) * 2 + (boarded(s, i) ? 1 : 0)) * side +
          static_cast<std::uint64_t>(c.x)) * side + static_cast<std::uint64_t>(c.y);
}

CoordinationGraph drone_cg(const DroneParams& params, const JointState& s) {
  const auto n = params.n_agents;
  if (params.graph_mode == DroneGraphMode::kComplete) return CoordinationGraph::complete(n);
  const auto threshold = static_cast<std::int32_t>(params.threshold_cells());
  std::vector<Edge> edges;
  for (AgentIndex i = 0; i < n; ++i) {
    if (DroneDelivery::boarded(s, i)) continue;
    for (AgentIndex j = i + 1; j < n; ++j) {
      if (DroneDelivery::boarded(s, j)) continue;
      const bool close = chebyshev(DroneDelivery::position(s, i), DroneDelivery::position(s, j)) <= threshold;
      const bool shared_goal = DroneDelivery::goal(s, i) == DroneDelivery::goal(s, j);
      if (close || shared_goal) edges.push_back({i, j});
    }
  }
  return CoordinationGraph(n, std::move(edges));
}

std::shared_ptr<const CoordinationGraph> DroneDelivery::coordination_graph(const JointState& s) const {
  if (params_.graph_mode == DroneGraphMode::kComplete) return complete_;
  return std::make_shared<const CoordinationGraph>(drone_cg(params_, s));
}

StepResult DroneDelivery::step(const JointState& s, const JointAction& a, Rng& rng) const {
  const auto n = params_.n_agents;
  if (s.size() != 4 * n || a.size() != n) throw std::invalid_argument("drones: bad state or action size");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StepResult out{s, RewardVector(n, 0.0)};

  std::vector<Cell> pos(n), target(n);
  std::vector<bool> moving(n, false), active(n, false), boarding(n, false);
  for (AgentIndex i = 0; i < n; ++i) {
    pos[i] = target[i] = position(s, i);
    const double u = unit(rng);  // one draw per drone keeps the stream aligned
    if (boarded(s, i)) continue;
    active[i] = true;
    out.rewards[i] -= params_.step_cost;
    const Action act = a[i];
    if (act < 0 || act >= static_cast<Action>(kDroneActions)) {
      throw std::invalid_argument("drones: invalid action " + std::to_string(act));
    }
    if (act == kDroneNoop) continue;
    if (act == kDroneBoard) {
      if (in_region(pos[i], goal(s, i))) {
        boarding[i] = true;
      } else {
        out.rewards[i] -= params_.invalid_action_penalty;
      }
      continue;
    }
    auto dir = static_cast<std::size_t>(act);
    if (u < params_.noise) dir = (dir + (u < 0.5 * params_.noise ? 1 : 7)) % 8;
    const Cell t{pos[i].x + kMoves[dir].x, pos[i].y + kMoves[dir].y};
    if (t.x < 0 || t.y < 0 || t.x >= side_ || t.y >= side_) {
      out.rewards[i] -= params_.invalid_action_penalty;
      continue;
    }
    target[i] = t;
    moving[i] = true;
  }

  // Simultaneous boarding in one region: the lowest index wins.
  std::array<bool, 4> region_taken{};
  for (AgentIndex i = 0; i < n; ++i) {
    if (!boarding[i]) continue;
    const auto r = goal(s, i);
    if (region_taken[r]) {
      boarding[i] = false;
      out.rewards[i] -= params_.board_conflict_penalty;
    } else {
      region_taken[r] = true;
    }
  }

  // Cell conflicts, resolved to a fixed point. Stationary drones keep their
  // cells; a mover blocked by a shared target or a stationary occupant stays.
  std::vector<bool> penalized(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (AgentIndex i = 0; i < n; ++i) {
      if (!moving[i]) continue;
      bool blocked = false;
      for (AgentIndex j = 0; j < n && !blocked; ++j) {
        if (j == i || !active[j]) continue;
        if (moving[j] ? target[j] == target[i] : pos[j] == target[i]) blocked = true;
      }
      if (!blocked) continue;
      // Both movers of a contested cell are stopped together.
      for (AgentIndex j = 0; j < n; ++j) {
        if (j != i && moving[j] && target[j] == target[i]) {
          moving[j] = false;
          target[j] = pos[j];
          penalized[j] = true;
        }
      }
      moving[i] = false;
      target[i] = pos[i];
      penalized[i] = true;
      changed = true;
    }
  }

  for (AgentIndex i = 0; i < n; ++i) {
    if (!active[i]) continue;
    if (penalized[i]) out.rewards[i] -= params_.collision_penalty;
    const auto g = goal(s, i);
    out.rewards[i] += params_.approach_shaping * (goal_distance(pos[i], g) - goal_distance(target[i], g));
    out.next[4 * i] = target[i].x;
    out.next[4 * i + 1] = target[i].y;
    if (boarding[i]) {
      out.next[4 * i + 2] = 1;
      out.rewards[i] += params_.goal_board_reward;
    }
  }

  for (AgentIndex i = 0; i < n; ++i) {
    if (boarded(out.next, i)) continue;
    for (AgentIndex j = 0; j < n; ++j) {
      if (j == i || boarded(out.next, j)) continue;
      if (chebyshev(position(out.next, i), position(out.next, j)) <=
          static_cast<std::int32_t>(params_.proximity_distance)) {
        out.rewards[i] -= params_.proximity_penalty;
        break;
      }
    }
  }
  return out;
}

}  // namespace fvmcts
