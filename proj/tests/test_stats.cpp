#include <doctest.h>

#include <sstream>

#include "fvmcts/oracle.hpp"
#include "fvmcts/selfcheck.hpp"
#include "fvmcts/stats.hpp"

using namespace fvmcts;

namespace {

StateLayout single_edge() {
  return {std::make_shared<const CoordinationGraph>(CoordinationGraph::chain(2)), {2, 2}};
}

}  // namespace

TEST_CASE("max-plus update on a single edge") {
  StateStats st(StatsMode::kMaxPlus, single_edge());
  const std::vector<double> q{2.0, 4.0};
  update_maxplus_stats(st, {1, 0}, q);
  CHECK(st.visits == 1);
  CHECK(st.nodes[0].values[1] == 2.0);
  CHECK(st.nodes[1].values[0] == 4.0);
  CHECK(st.edges[0].values[1 * 2 + 0] == 6.0);
  CHECK(st.nodes[0].counts[1] == 1);
  CHECK(st.nodes[1].counts[0] == 1);
  CHECK(st.edges[0].counts[2] == 1);
  // Untouched entries stay at zero.
  CHECK(st.nodes[0].counts[0] == 0);
  CHECK(st.edges[0].counts[0] == 0);

  const std::vector<double> q2{5.0, 5.0};
  update_maxplus_stats(st, {1, 0}, q2);
  CHECK(st.edges[0].values[2] == 8.0);
  CHECK(st.edges[0].counts[2] == 2);
}

TEST_CASE("max-plus update rejects a mismatched return vector") {
  StateStats st(StatsMode::kMaxPlus, single_edge());
  const std::vector<double> q{1.0};
  CHECK_THROWS_AS(update_maxplus_stats(st, {0, 0}, q), std::invalid_argument);
}

TEST_CASE("var-el update") {
  const StateLayout chain{std::make_shared<const CoordinationGraph>(CoordinationGraph::chain(4)),
                          {2, 2, 2, 2}};
  StateStats st(StatsMode::kVarEl, chain);
  REQUIRE(st.components.size() == 3);
  update_varel_stats(st, {0, 1, 0, 1}, 5.0);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto idx = st.component_index(c, {0, 1, 0, 1});
    CHECK(st.component_tables[c].values[idx] == 5.0);
    CHECK(st.component_tables[c].counts[idx] == 1);
  }

  StateStats two(StatsMode::kVarEl, single_edge());
  update_varel_stats(two, {1, 1}, 1.0);
  update_varel_stats(two, {1, 1}, 3.0);
  CHECK(two.component_tables[0].values[3] == 2.0);
  CHECK(two.visits == 2);
}

TEST_CASE("component index is mixed radix, first agent most significant") {
  const StateLayout l{std::make_shared<const CoordinationGraph>(CoordinationGraph(3, {{0, 2}})),
                      {2, 3, 3}};
  const StateStats st(StatsMode::kVarEl, l);
  REQUIRE(st.components == VarElComponents{{0, 2}, {1}});
  CHECK(st.component_index(0, {1, 0, 2}) == 1 * 3 + 2);
  CHECK(st.component_index(1, {1, 2, 2}) == 2);
  CHECK(st.entries() == 6 + 3);
}

TEST_CASE("wrong mode is rejected") {
  StateStats st(StatsMode::kVarEl, single_edge());
  const std::vector<double> q{1.0, 1.0};
  CHECK_THROWS(update_maxplus_stats(st, {0, 0}, q));
  StateStats mp(StatsMode::kMaxPlus, single_edge());
  CHECK_THROWS(update_varel_stats(mp, {0, 0}, 1.0));
}

TEST_CASE("store lookups") {
  StatsStore store(StatsMode::kMaxPlus);
  const JointState s{3, 1};
  CHECK(store.find(s) == nullptr);

  auto& fresh = store.lookup_or_init(s, single_edge());
  CHECK(fresh.visits == 0);
  for (const auto& t : fresh.nodes) {
    for (auto n : t.counts) CHECK(n == 0);
    for (auto v : t.values) CHECK(v == 0.0);
  }
  const std::vector<double> q{1.0, 2.0};
  update_maxplus_stats(fresh, {0, 1}, q);

  // A second lookup returns the stored entry untouched, whatever layout is passed.
  auto& again = store.lookup_or_init(s, single_edge());
  CHECK(&again == &fresh);
  CHECK(again.visits == 1);
  CHECK(again.edges[0].values[1] == 3.0);
  CHECK(store.n_states() == 1);
  CHECK(store.total_entries() == 2 * 2 + 4);
  CHECK(store.peak_state_entries() == 8);

  store.clear();
  CHECK(store.n_states() == 0);
  CHECK(store.total_entries() == 0);
}

TEST_CASE("dump lists every table row") {
  StatsStore store(StatsMode::kMaxPlus);
  auto& st = store.lookup_or_init({0, 0}, single_edge());
  const std::vector<double> q{1.0, 2.0};
  update_maxplus_stats(st, {0, 1}, q);
  std::ostringstream os;
  store.dump_csv(os, {0, 0});
  std::size_t lines = 0;
  for (char ch : os.str()) lines += ch == '\n';
  CHECK(lines == 4 + 4);  // node rows, then edge rows
}

TEST_CASE("running means match direct means over random streams") {
  const auto r = check_running_means(300, 11);
  INFO(r.detail);
  CHECK(r.passed);
}
