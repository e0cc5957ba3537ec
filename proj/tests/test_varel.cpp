#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fvmcts/oracle.hpp"
#include "fvmcts/selfcheck.hpp"
#include "fvmcts/varel.hpp"

using namespace fvmcts;

TEST_CASE("eliminating the only agent of a pairwise table") {
  std::vector<PayoffFunction> active{{{0, 1}, {1.0, 0.0, 0.0, 2.0}}};
  const std::vector<std::size_t> counts{2, 2};
  const auto e = eliminate_agent(0, active, counts);
  CHECK(e.scope == std::vector<AgentIndex>{1});
  CHECK(e.table == std::vector<double>{1.0, 2.0});
  CHECK(e.best_response == std::vector<Action>{0, 1});
  REQUIRE(active.size() == 1);
  CHECK(active[0].scope == e.scope);
}

TEST_CASE("eliminating the middle of a chain joins its neighbors") {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<double> q12(6), q23(6);
  for (auto& v : q12) v = u(rng);
  for (auto& v : q23) v = u(rng);
  // Agents 0, 1, 2 with 2, 3, 2 actions.
  const std::vector<std::size_t> counts{2, 3, 2};
  std::vector<PayoffFunction> active{{{0, 1}, q12}, {{1, 2}, q23}};
  const auto e = eliminate_agent(1, active, counts);
  REQUIRE(e.scope == std::vector<AgentIndex>{0, 2});
  for (std::size_t a0 = 0; a0 < 2; ++a0) {
    for (std::size_t a2 = 0; a2 < 2; ++a2) {
      double best = -1e300;
      Action arg = 0;
      for (std::size_t a1 = 0; a1 < 3; ++a1) {
        const double v = q12[a0 * 3 + a1] + q23[a1 * 2 + a2];
        if (v > best) best = v, arg = static_cast<Action>(a1);
      }
      CHECK(e.table[a0 * 2 + a2] == best);
      CHECK(e.best_response[a0 * 2 + a2] == arg);
    }
  }
  CHECK(active.size() == 1);
}

TEST_CASE("an agent in no function yields a constant zero") {
  std::vector<PayoffFunction> active{{{0, 1}, {1.0, 2.0, 3.0, 4.0}}};
  const std::vector<std::size_t> counts{2, 2, 3};
  const auto e = eliminate_agent(2, active, counts);
  CHECK(e.scope.empty());
  CHECK(e.table == std::vector<double>{0.0});
  CHECK(e.best_response == std::vector<Action>{0});
  CHECK(active.size() == 2);
}

TEST_CASE("width and size limits") {
  const std::size_t n = kMaxInducedWidth + 2;
  const std::vector<std::size_t> counts(n, 2);
  std::vector<PayoffFunction> star;
  for (AgentIndex i = 1; i < n; ++i) star.push_back({{0, i}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(eliminate_agent(0, star, counts), std::length_error);

  // Few agents with huge action sets trip the size limit instead.
  const std::vector<std::size_t> wide{1 << 14, 1 << 14, 1 << 14};
  std::vector<PayoffFunction> fs{{{0, 1}, {}}, {{1, 2}, {}}};
  CHECK_THROWS_AS(eliminate_agent(1, fs, wide), std::length_error);
}

TEST_CASE("flat objective falls back to the all-zero action") {
  Rng rng(0);
  auto inst = oracle::random_instance({{0, 1}, {1, 2}, {2, 3}}, {3, 3, 3, 3}, 1.5, 1.5, rng);
  const auto stats = oracle::as_varel_stats(inst);
  const std::vector<AgentIndex> order{2, 0, 3, 1};
  CHECK(var_el_select(stats, order, 0.0) == JointAction{0, 0, 0, 0});
}

TEST_CASE("exact against enumeration for random orders") {
  const auto r = check_varel_exactness(500, 77);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("chain value does not depend on the elimination order") {
  Rng rng(19);
  const auto inst = oracle::random_instance({{0, 1}, {1, 2}, {2, 3}}, {2, 3, 2, 3}, -10, 10, rng);
  const auto stats = oracle::as_varel_stats(inst);
  std::vector<AgentIndex> order{0, 1, 2, 3};
  const double reference = oracle::objective(inst, var_el_select(stats, order, 0.0), false);
  CHECK(reference == oracle::enumerate_best(inst, false).best_value);
  do {
    CHECK(oracle::objective(inst, var_el_select(stats, order, 0.0), false) == reference);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("cyclic graphs are solved exactly too") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto inst = oracle::random_instance(CoordinationGraph::complete(5).edges(),
                                              std::vector<std::size_t>(5, 3), -10, 10, rng);
    const auto stats = oracle::as_varel_stats(inst);
    const auto order = elimination_order(*stats.graph);
    CHECK(oracle::objective(inst, var_el_select(stats, order, 0.0), false) ==
          oracle::enumerate_best(inst, false).best_value);
  }
}

TEST_CASE("exploration bonus") {
  Rng rng(0);
  auto inst = oracle::random_instance({{0, 1}}, {2, 2}, 0.0, 0.0, rng);
  inst.edge_payoff[0] = {{3.0, 0.0}, {0.0, 0.0}};
  auto stats = oracle::as_varel_stats(inst, 4, 16);
  const std::vector<AgentIndex> order{0, 1};

  const auto f = augmented_components(stats, 2.0);
  CHECK(f[0].table[0] == doctest::Approx(3.0 + 2.0 * std::sqrt(std::log(16.0) / 4.0)));

  stats.component_tables[0].counts[3] = 0;
  CHECK(var_el_select(stats, order, 2.0) == JointAction{1, 1});
  CHECK(var_el_select(stats, order, 0.0) == JointAction{0, 0});

  // An unvisited state makes every entry infinite: tie-break to zero.
  stats.visits = 0;
  const auto unvisited = augmented_components(stats, 1.0);
  for (double v : unvisited[0].table) CHECK(std::isinf(v));
  CHECK(var_el_select(stats, order, 1.0) == JointAction{0, 0});
}

TEST_CASE("invalid inputs") {
  Rng rng(0);
  const auto inst = oracle::random_instance({{0, 1}}, {2, 2}, 0.0, 1.0, rng);
  const auto stats = oracle::as_varel_stats(inst);
  const std::vector<AgentIndex> short_order{0};
  const std::vector<AgentIndex> repeated{0, 0};
  CHECK_THROWS_AS(var_el_select(stats, short_order, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(var_el_select(stats, repeated, 0.0), std::invalid_argument);
  StateStats empty = stats;
  empty.components.clear();
  empty.component_tables.clear();
  const std::vector<AgentIndex> order{0, 1};
  CHECK_THROWS_AS(var_el_select(empty, order, 0.0), std::invalid_argument);
  CHECK_THROWS(var_el_select(oracle::as_maxplus_stats(inst), order, 0.0));
}
