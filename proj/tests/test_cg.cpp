#include <doctest.h>

#include <algorithm>

#include "fvmcts/coordination_graph.hpp"
#include "fvmcts/oracle.hpp"

using namespace fvmcts;

namespace {

std::vector<AgentIndex> as_vec(std::span<const AgentIndex> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("neighbors on small graphs") {
  // 1-2-3-4 chain, zero-indexed.
  const auto chain = CoordinationGraph::chain(4);
  CHECK(as_vec(chain.neighbors(1)) == std::vector<AgentIndex>{0, 2});
  CHECK(as_vec(chain.neighbors(0)) == std::vector<AgentIndex>{1});

  const auto empty = CoordinationGraph::edgeless(3);
  for (AgentIndex i = 0; i < 3; ++i) CHECK(empty.neighbors(i).empty());

  const CoordinationGraph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(as_vec(triangle.neighbors(1)) == std::vector<AgentIndex>{0, 2});

  CHECK_THROWS_AS(chain.neighbors(4), std::out_of_range);
}

TEST_CASE("edges are normalized, sorted and validated") {
  const CoordinationGraph g(4, {{3, 2}, {1, 0}, {0, 3}});
  REQUIRE(g.n_edges() == 3);
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[1] == Edge{0, 3});
  CHECK(g.edges()[2] == Edge{2, 3});
  CHECK(g.edge_index(3, 0) == 1);
  CHECK(g.edge_index(0, 3) == 1);
  CHECK_FALSE(g.edge_index(1, 2).has_value());

  CHECK_THROWS_AS(CoordinationGraph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(CoordinationGraph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(CoordinationGraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("factories") {
  CHECK(CoordinationGraph::ring(4).edges() ==
        std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK(CoordinationGraph::star(7).n_edges() == 6);
  CHECK(CoordinationGraph::complete(5).n_edges() == 10);
  CHECK(CoordinationGraph::ring(2).n_edges() == 1);
  CHECK(CoordinationGraph::ring(6).mean_degree() == doctest::Approx(2.0));
  CHECK(CoordinationGraph::chain(5).is_acyclic());
  CHECK(CoordinationGraph::star(5).is_acyclic());
  CHECK_FALSE(CoordinationGraph::ring(5).is_acyclic());
}

TEST_CASE("incidence lists pair neighbors with edge indices") {
  const auto g = CoordinationGraph::ring(5);
  for (AgentIndex i = 0; i < 5; ++i) {
    for (const auto& inc : g.incident(i)) {
      const auto e = g.edges()[inc.edge];
      CHECK(((e.first == i && e.second == inc.neighbor) || (e.second == i && e.first == inc.neighbor)));
    }
  }
}

TEST_CASE("var-el components") {
  CHECK(varel_components(CoordinationGraph::chain(4)) ==
        VarElComponents{{0, 1}, {1, 2}, {2, 3}});
  CHECK(varel_components(CoordinationGraph::edgeless(3)) == VarElComponents{{0}, {1}, {2}});
  CHECK(varel_components(CoordinationGraph::star(5)) ==
        VarElComponents{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  // Isolated agents still get a component.
  CHECK(varel_components(CoordinationGraph(3, {{0, 2}})) == VarElComponents{{0, 2}, {1}});
}

TEST_CASE("elimination order") {
  CHECK(elimination_order(CoordinationGraph::chain(4)) == std::vector<AgentIndex>{0, 1, 2, 3});
  CHECK(elimination_order(CoordinationGraph::edgeless(3)) == std::vector<AgentIndex>{0, 1, 2});
  CHECK(elimination_order(CoordinationGraph::complete(3)) == std::vector<AgentIndex>{0, 1, 2});
  // Leaves before the hub.
  CHECK(elimination_order(CoordinationGraph::star(4)) == std::vector<AgentIndex>{1, 2, 0, 3});
}

TEST_CASE("elimination order is a permutation on random graphs") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 9;
    const CoordinationGraph g(n, oracle::random_graph(n, 0.4, rng));
    auto order = elimination_order(g);
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(order[i] == i);
  }
}
