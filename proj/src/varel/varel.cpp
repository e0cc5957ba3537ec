#include "fvmcts/varel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fvmcts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t table_size(std::span<const AgentIndex> scope,
                       std::span<const std::size_t> action_counts) {
  std::size_t size = 1;
  for (auto a : scope) {
    const auto k = action_counts[a];
    if (k != 0 && size > kMaxIntermediateEntries / k) return kMaxIntermediateEntries + 1;
    size *= k;
  }
  return size;
}

}  // namespace

IntermediatePayoff eliminate_agent(AgentIndex k, std::vector<PayoffFunction>& active,
                                   std::span<const std::size_t> action_counts) {
  std::vector<PayoffFunction> collected;
  std::vector<PayoffFunction> rest;
  for (auto& f : active) {
    if (std::find(f.scope.begin(), f.scope.end(), k) != f.scope.end()) {
      collected.push_back(std::move(f));
    } else {
      rest.push_back(std::move(f));
    }
  }
  active = std::move(rest);

  IntermediatePayoff out;
  out.eliminated = k;
  for (const auto& f : collected) {
    for (auto a : f.scope) {
      if (a != k) out.scope.push_back(a);
    }
  }
  std::sort(out.scope.begin(), out.scope.end());
  out.scope.erase(std::unique(out.scope.begin(), out.scope.end()), out.scope.end());

  if (out.scope.size() > kMaxInducedWidth) {
    throw std::length_error("variable elimination: induced width too large (" +
                            std::to_string(out.scope.size()) + " > " +
                            std::to_string(kMaxInducedWidth) + ")");
  }
  const std::size_t size = table_size(out.scope, action_counts);
  if (size > kMaxIntermediateEntries) {
    throw std::length_error("variable elimination: intermediate table too large");
  }
  const std::size_t nk = action_counts[k];

  // For each collected function: stride of every new-scope agent and of k.
  struct Access {
    std::vector<std::size_t> scope_stride;  // aligned with out.scope
    std::size_t k_stride = 0;
  };
  std::vector<Access> access(collected.size());
  for (std::size_t f = 0; f < collected.size(); ++f) {
    const auto& scope = collected[f].scope;
    access[f].scope_stride.assign(out.scope.size(), 0);
    std::size_t stride = 1;
    for (std::size_t p = scope.size(); p-- > 0;) {
      if (scope[p] == k) {
        access[f].k_stride = stride;
      } else {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(out.scope.begin(), out.scope.end(), scope[p]) - out.scope.begin());
        access[f].scope_stride[pos] = stride;
      }
      stride *= action_counts[scope[p]];
    }
  }

  out.table.assign(size, 0.0);
  out.best_response.assign(size, 0);
  std::vector<std::size_t> digits(out.scope.size(), 0);
  std::vector<std::size_t> base(collected.size(), 0);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t f = 0; f < collected.size(); ++f) {
      std::size_t idx = 0;
      for (std::size_t p = 0; p < digits.size(); ++p) idx += digits[p] * access[f].scope_stride[p];
      base[f] = idx;
    }
    double best = -kInf;
    Action arg = 0;
    for (std::size_t ak = 0; ak < nk; ++ak) {
      double v = 0.0;
      for (std::size_t f = 0; f < collected.size(); ++f) {
        v += collected[f].table[base[f] + ak * access[f].k_stride];
      }
      if (v > best) {
        best = v;
        arg = static_cast<Action>(ak);
      }
    }
    // No function mentions k: constant zero, free choice of action 0.
    out.table[x] = collected.empty() ? 0.0 : best;
    out.best_response[x] = arg;

    for (std::size_t p = digits.size(); p-- > 0;) {
      if (++digits[p] < action_counts[out.scope[p]]) break;
      digits[p] = 0;
    }
  }

  active.push_back(PayoffFunction{out.scope, out.table});
  return out;
}

JointAction var_el_maximize(std::vector<PayoffFunction> functions,
                            std::span<const std::size_t> action_counts,
                            std::span<const AgentIndex> order) {
  const std::size_t n = action_counts.size();
  if (order.size() != n) throw std::invalid_argument("var_el: order must cover every agent");
  std::vector<bool> seen(n, false);
  for (auto a : order) {
    if (a >= n || seen[a]) throw std::invalid_argument("var_el: order is not a permutation");
    seen[a] = true;
  }
  for (auto k : action_counts) {
    if (k == 0) throw std::invalid_argument("var_el: empty action set");
  }

  std::vector<IntermediatePayoff> eliminated;
  eliminated.reserve(n);
  for (auto k : order) eliminated.push_back(eliminate_agent(k, functions, action_counts));

  JointAction joint(n, 0);
  for (std::size_t step = n; step-- > 0;) {
    const auto& e = eliminated[step];
    std::size_t idx = 0;
    for (auto a : e.scope) idx = idx * action_counts[a] + static_cast<std::size_t>(joint[a]);
    joint[e.eliminated] = e.best_response[idx];
  }
  return joint;
}

std::vector<PayoffFunction> augmented_components(const StateStats& stats, double c) {
  if (stats.mode != StatsMode::kVarEl) {
    throw std::logic_error("var_el_select requires Var-El statistics");
  }
  if (stats.components.empty()) {
    throw std::invalid_argument("var_el_select: empty component statistics");
  }
  const bool bonus = c > 0.0;
  const double log_n = std::log(static_cast<double>(stats.visits));
  std::vector<PayoffFunction> out;
  out.reserve(stats.components.size());
  for (std::size_t e = 0; e < stats.components.size(); ++e) {
    const auto& t = stats.component_tables[e];
    PayoffFunction f{stats.components[e], t.values};
    if (bonus) {
      for (std::size_t x = 0; x < f.table.size(); ++x) {
        if (stats.visits == 0 || t.counts[x] == 0) {
          f.table[x] = kInf;
        } else {
          f.table[x] += c * std::sqrt(log_n / static_cast<double>(t.counts[x]));
        }
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

JointAction var_el_select(const StateStats& stats, std::span<const AgentIndex> order, double c) {
  return var_el_maximize(augmented_components(stats, c), stats.action_counts, order);
}

}  // namespace fvmcts
