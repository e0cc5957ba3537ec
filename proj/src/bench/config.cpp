#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fvmcts/experiment.hpp"

namespace fvmcts {

using nlohmann::json;

Algorithm parse_algorithm(const std::string& name) {
  if (name == "fvmcts_maxplus") return Algorithm::kFvMctsMaxPlus;
  if (name == "fvmcts_varel") return Algorithm::kFvMctsVarEl;
  if (name == "naive_mcts") return Algorithm::kNaiveMcts;
  if (name == "iql") return Algorithm::kIql;
  if (name == "random") return Algorithm::kRandom;
  throw ConfigError("unknown algorithm: " + name);
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kFvMctsMaxPlus: return "fvmcts_maxplus";
    case Algorithm::kFvMctsVarEl: return "fvmcts_varel";
    case Algorithm::kNaiveMcts: return "naive_mcts";
    case Algorithm::kIql: return "iql";
    case Algorithm::kRandom: return "random";
  }
  return "unknown";
}

std::unique_ptr<GenerativeModel> DomainSpec::make_model() const {
  if (name == "sysadmin") return std::make_unique<SysAdmin>(sysadmin);
  if (name == "drones") return std::make_unique<DroneDelivery>(drones);
  throw ConfigError("unknown domain: " + name);
}

std::size_t DomainSpec::n_agents() const {
  return name == "drones" ? drones.n_agents : sysadmin.n_agents;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("experiment: need at least one episode");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("experiment: seeds must be distinct");
  }
  if (max_steps == 0) throw ConfigError("experiment: max_steps must be positive");
  if (domain.name == "sysadmin") {
    domain.sysadmin.validate();
  } else if (domain.name == "drones") {
    domain.drones.validate();
  } else {
    throw ConfigError("unknown domain: " + domain.name);
  }
  const bool planner_based = algorithm == Algorithm::kFvMctsMaxPlus ||
                             algorithm == Algorithm::kFvMctsVarEl ||
                             algorithm == Algorithm::kNaiveMcts;
  if (planner_based) planner.validate();
  if (algorithm == Algorithm::kFvMctsVarEl) {
    const bool static_graph = domain.name == "sysadmin" ||
                              domain.drones.graph_mode == DroneGraphMode::kComplete;
    if (!static_graph) {
      throw ConfigError("fvmcts_varel cannot run on " + domain.name +
                        ": its coordination graph depends on the state");
    }
  }
  if (algorithm == Algorithm::kIql && iql.episodes == 0) {
    throw ConfigError("iql: training episodes must be positive");
  }
}

std::string ExperimentConfig::algo_label() const {
  auto label = to_string(algorithm);
  if (algorithm == Algorithm::kFvMctsMaxPlus && planner.maxplus.preset() != "TTF") {
    label += "_" + planner.maxplus.preset();
  }
  return label;
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

DomainSpec parse_domain(const json& j) {
  DomainSpec d;
  read(j, "name", d.name);
  if (d.name == "sysadmin") {
    reject_unknown(j, {"name", "topology", "n_agents", "ring_size", "p_fail_base",
                       "p_fail_bonus_per_dead_neighbor", "p_dead_base",
                       "p_dead_bonus_per_dead_neighbor", "p_load", "p_done_good",
                       "p_done_faulty", "discount"}, "domain");
    auto& p = d.sysadmin;
    if (j.contains("topology")) p.topology = parse_topology(j.at("topology").get<std::string>());
    read(j, "n_agents", p.n_agents);
    read(j, "ring_size", p.ring_size);
    read(j, "p_fail_base", p.p_fail_base);
    read(j, "p_fail_bonus_per_dead_neighbor", p.p_fail_bonus_per_dead_neighbor);
    read(j, "p_dead_base", p.p_dead_base);
    read(j, "p_dead_bonus_per_dead_neighbor", p.p_dead_bonus_per_dead_neighbor);
    read(j, "p_load", p.p_load);
    read(j, "p_done_good", p.p_done_good);
    read(j, "p_done_faulty", p.p_done_faulty);
    read(j, "discount", p.discount);
  } else if (d.name == "drones") {
    reject_unknown(j, {"name", "n_agents", "resolution", "noise", "proximity_threshold",
                       "goal_board_reward", "collision_penalty", "step_cost", "approach_shaping",
                       "proximity_penalty", "proximity_distance", "invalid_action_penalty",
                       "board_conflict_penalty", "discount", "graph"}, "domain");
    auto& p = d.drones;
    read(j, "n_agents", p.n_agents);
    read(j, "resolution", p.resolution);
    read(j, "noise", p.noise);
    read(j, "proximity_threshold", p.proximity_threshold);
    read(j, "goal_board_reward", p.goal_board_reward);
    read(j, "collision_penalty", p.collision_penalty);
    read(j, "step_cost", p.step_cost);
    read(j, "approach_shaping", p.approach_shaping);
    read(j, "proximity_penalty", p.proximity_penalty);
    read(j, "proximity_distance", p.proximity_distance);
    read(j, "invalid_action_penalty", p.invalid_action_penalty);
    read(j, "board_conflict_penalty", p.board_conflict_penalty);
    read(j, "discount", p.discount);
    if (j.contains("graph")) {
      const auto mode = j.at("graph").get<std::string>();
      if (mode == "dynamic") {
        p.graph_mode = DroneGraphMode::kDynamic;
      } else if (mode == "complete") {
        p.graph_mode = DroneGraphMode::kComplete;
      } else {
        throw ConfigError("drones: graph must be \"dynamic\" or \"complete\"");
      }
    }
  } else {
    throw ConfigError("unknown domain: " + d.name);
  }
  return d;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  try {
    reject_unknown(root, {"domain", "algorithm", "planner", "memory_cap", "iql", "episodes",
                          "first_seed", "seeds", "max_steps", "record_timing", "threads"},
                   "config");
    if (!root.contains("domain")) throw ConfigError("config: missing \"domain\"");
    cfg.domain = parse_domain(root.at("domain"));
    cfg.max_steps = cfg.domain.name == "drones" ? 100 : 50;

    if (root.contains("algorithm")) {
      const auto& a = root.at("algorithm");
      if (a.is_string()) {
        cfg.algorithm = parse_algorithm(a.get<std::string>());
      } else {
        reject_unknown(a, {"name", "flags", "max_rounds", "normalize", "tolerance", "schedule"},
                       "algorithm");
        cfg.algorithm = parse_algorithm(a.at("name").get<std::string>());
        auto& mp = cfg.planner.maxplus;
        if (a.contains("flags")) {
          const auto flags = MaxPlusConfig::from_preset(a.at("flags").get<std::string>());
          mp.use_node_utilities = flags.use_node_utilities;
          mp.node_exploration = flags.node_exploration;
          mp.edge_exploration = flags.edge_exploration;
        }
        read(a, "max_rounds", mp.max_rounds);
        read(a, "normalize", mp.message_normalization);
        read(a, "tolerance", mp.message_tolerance);
        if (a.contains("schedule")) {
          const auto s = a.at("schedule").get<std::string>();
          if (s == "sequential") {
            mp.schedule = MessageSchedule::kSequential;
          } else if (s == "synchronous") {
            mp.schedule = MessageSchedule::kSynchronous;
          } else {
            throw ConfigError("algorithm: schedule must be sequential or synchronous");
          }
        }
      }
    }
    cfg.planner.backend =
        cfg.algorithm == Algorithm::kFvMctsVarEl ? Backend::kVarEl : Backend::kMaxPlus;

    if (root.contains("planner")) {
      const auto& p = root.at("planner");
      reject_unknown(p, {"iterations", "time_budget_s", "depth", "exploration", "discount",
                         "rollout_steps", "varel_cutoff"}, "planner");
      read(p, "iterations", cfg.planner.iterations);
      read(p, "depth", cfg.planner.depth);
      read(p, "exploration", cfg.planner.exploration);
      read(p, "rollout_steps", cfg.planner.rollout_steps);
      read(p, "varel_cutoff", cfg.planner.varel_cutoff);
      if (p.contains("time_budget_s")) {
        cfg.planner.time_budget = std::chrono::duration<double>(p.at("time_budget_s").get<double>());
      }
      if (p.contains("discount")) cfg.planner.discount = p.at("discount").get<double>();
    }
    read(root, "memory_cap", cfg.memory_cap);
    if (root.contains("iql")) {
      const auto& q = root.at("iql");
      reject_unknown(q, {"learning_rate", "epsilon", "linear_decay", "episodes", "max_steps"}, "iql");
      read(q, "learning_rate", cfg.iql.learning_rate);
      read(q, "epsilon", cfg.iql.epsilon);
      read(q, "linear_decay", cfg.iql.linear_decay);
      read(q, "episodes", cfg.iql.episodes);
      read(q, "max_steps", cfg.iql.max_steps);
    }
    read(root, "max_steps", cfg.max_steps);
    read(root, "record_timing", cfg.record_timing);
    read(root, "threads", cfg.threads);

    if (root.contains("seeds")) {
      cfg.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
    } else {
      std::size_t episodes = 10;
      std::uint64_t first = 1;
      read(root, "episodes", episodes);
      read(root, "first_seed", first);
      for (std::size_t k = 0; k < episodes; ++k) cfg.seeds.push_back(first + k);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment(buffer.str());
}

}  // namespace fvmcts
