#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fvmcts {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t trials = 0;
  std::string detail;  // first counterexample, or a short summary
  double seconds = 0.0;
};

/// Var-El with c = 0 against exhaustive enumeration: random pairwise
/// instances (n <= 5, |A| <= 3, payoffs in [-10, 10]) and random orders.
CheckResult check_varel_exactness(std::size_t trials, std::uint64_t seed);

/// Max-Plus with c = 0 and M = n rounds against exhaustive enumeration on
/// random trees (n <= 6, |A| <= 3), for the given message schedule.
CheckResult check_maxplus_tree_exactness(std::size_t trials, std::uint64_t seed,
                                         bool synchronous = false);

/// Node, edge and component running means against directly computed means
/// of random update streams (tolerance 1e-9).
CheckResult check_running_means(std::size_t trials, std::uint64_t seed);

/// All of the above.
std::vector<CheckResult> run_selfcheck(std::size_t trials = 1000, std::uint64_t seed = 2024);

}  // namespace fvmcts
