#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvmcts {

using AgentIndex = std::size_t;
using Action = std::int32_t;

// Joint states are agent-ordered integer vectors; the vector itself is the
// canonical key used by every statistics table.
using JointState = std::vector<std::int32_t>;
using JointAction = std::vector<Action>;
using RewardVector = std::vector<double>;

using Rng = std::mt19937_64;

struct JointStateHash {
  std::size_t operator()(const JointState& s) const noexcept {
    // FNV-1a over the raw values.
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : s) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Thrown when a per-run statistics table would exceed its configured entry cap.
class MemoryGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment or planner configuration, detected before any work runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fvmcts
