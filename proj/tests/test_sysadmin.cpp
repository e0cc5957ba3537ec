#include <doctest.h>

#include <cmath>

#include "fvmcts/sysadmin.hpp"

using namespace fvmcts;

namespace {

SysAdmin ring(std::size_t n) {
  SysAdminParams p;
  p.n_agents = n;
  return SysAdmin(p);
}

// Frequency of pred(next) over many steps from s under a, within 3 sigma of p.
template <class Pred>
void check_rate(const SysAdmin& m, const JointState& s, const JointAction& a, double p, Pred pred) {
  const int n = 100000;
  Rng rng(2718);
  int hits = 0;
  for (int k = 0; k < n; ++k) hits += pred(m.step(s, a, rng));
  const double sigma = std::sqrt(n * p * (1 - p));
  INFO("hits ", hits, " expected ", n * p);
  CHECK(std::abs(hits - n * p) <= 3 * sigma + 1e-9);
}

constexpr auto G = MachineStatus::kGood;
constexpr auto F = MachineStatus::kFaulty;
constexpr auto D = MachineStatus::kDead;
constexpr auto I = MachineLoad::kIdle;
constexpr auto L = MachineLoad::kLoaded;
constexpr auto S = MachineLoad::kSuccess;

}  // namespace

TEST_CASE("graphs") {
  const auto r4 = sysadmin_cg({});
  CHECK(r4.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

  SysAdminParams star;
  star.topology = SysAdminTopology::kStar;
  star.n_agents = 7;
  const auto g = sysadmin_cg(star);
  CHECK(g.n_edges() == 6);
  CHECK(g.neighbors(0).size() == 6);

  SysAdminParams rr;
  rr.topology = SysAdminTopology::kRingOfRings;
  rr.n_agents = 9;
  rr.ring_size = 3;
  const auto h = sysadmin_cg(rr);
  CHECK(h.n_agents() == 9);
  CHECK(h.n_edges() == 12);
  const auto nb = h.neighbors(0);
  CHECK(std::vector<AgentIndex>(nb.begin(), nb.end()) == std::vector<AgentIndex>{1, 2, 3, 6});

  rr.n_agents = 8;
  CHECK_THROWS_AS(sysadmin_cg(rr), ConfigError);
  CHECK(parse_topology("ring_of_rings") == SysAdminTopology::kRingOfRings);
  CHECK_THROWS_AS(parse_topology("mesh"), ConfigError);
}

TEST_CASE("every machine starts good and idle") {
  const auto m = ring(6);
  Rng rng(0);
  const auto s = m.initial_state(rng);
  REQUIRE(s.size() == 6);
  for (auto v : s) CHECK(v == SysAdmin::encode(G, I));
  CHECK(SysAdmin::status(SysAdmin::encode(F, S)) == F);
  CHECK(SysAdmin::load(SysAdmin::encode(F, S)) == S);
}

TEST_CASE("reboot restores a machine and pays nothing") {
  const auto m = ring(4);
  Rng rng(1);
  const JointState s{SysAdmin::encode(D, I), SysAdmin::encode(F, L), SysAdmin::encode(G, L),
                     SysAdmin::encode(G, I)};
  for (int k = 0; k < 50; ++k) {
    const auto r = m.step(s, {kReboot, kReboot, kNoop, kNoop}, rng);
    CHECK(r.next[0] == SysAdmin::encode(G, I));
    CHECK(r.next[1] == SysAdmin::encode(G, I));
    CHECK(r.rewards[0] == 0.0);
    CHECK(r.rewards[1] == 0.0);
  }
}

TEST_CASE("a dead machine stays dead and idle under noop") {
  const auto m = ring(4);
  Rng rng(2);
  JointState s(4, SysAdmin::encode(D, I));
  for (int k = 0; k < 100; ++k) {
    const auto r = m.step(s, {0, 0, 0, 0}, rng);
    CHECK(r.next == s);
    for (double x : r.rewards) CHECK(x == 0.0);
  }
}

TEST_CASE("rewards are zero or one") {
  const auto m = ring(8);
  Rng rng(3);
  std::uniform_int_distribution<int> coin(0, 1);
  auto s = m.initial_state(rng);
  double total = 0;
  for (int t = 0; t < 2000; ++t) {
    JointAction a(8);
    for (auto& x : a) x = coin(rng) && coin(rng);
    const auto r = m.step(s, a, rng);
    for (double x : r.rewards) {
      CHECK((x == 0.0 || x == 1.0));
      total += x;
    }
    s = r.next;
  }
  CHECK(total > 0);
}

TEST_CASE("transition frequencies") {
  const auto m = ring(4);
  const auto good_idle = SysAdmin::encode(G, I);
  const JointAction noop{0, 0, 0, 0};

  // No dead neighbors: base failure rate.
  const JointState healthy(4, good_idle);
  check_rate(m, healthy, noop, 0.05, [](const StepResult& r) { return SysAdmin::status(r.next[0]) == F; });
  check_rate(m, healthy, noop, 0.5, [](const StepResult& r) { return SysAdmin::load(r.next[0]) == L; });

  // One dead neighbor adds 0.3; two give 0.65.
  JointState one{good_idle, SysAdmin::encode(D, I), good_idle, good_idle};
  check_rate(m, one, noop, 0.35, [](const StepResult& r) { return SysAdmin::status(r.next[0]) == F; });
  JointState faulty{SysAdmin::encode(F, I), SysAdmin::encode(D, I), good_idle, SysAdmin::encode(D, I)};
  check_rate(m, faulty, noop, 0.65, [](const StepResult& r) { return SysAdmin::status(r.next[0]) == D; });

  // Completion depends on the current status.
  JointState loaded{SysAdmin::encode(G, L), good_idle, SysAdmin::encode(F, L), good_idle};
  check_rate(m, loaded, noop, 0.5, [](const StepResult& r) { return r.rewards[0] == 1.0; });
  // A faulty machine first has to survive (0.95), then finishes at 0.25.
  check_rate(m, loaded, noop, 0.95 * 0.25, [](const StepResult& r) { return r.rewards[2] == 1.0; });
}

TEST_CASE("fixed rng stream reproduces a trajectory") {
  const auto m = ring(5);
  Rng a(44), b(44);
  auto s = m.initial_state(a);
  auto t = m.initial_state(b);
  for (int k = 0; k < 100; ++k) {
    const JointAction act{0, 1, 0, 0, k % 2};
    const auto ra = m.step(s, act, a);
    const auto rb = m.step(t, act, b);
    CHECK(ra.next == rb.next);
    CHECK(ra.rewards == rb.rewards);
    s = ra.next;
    t = rb.next;
  }
}

TEST_CASE("invalid inputs") {
  const auto m = ring(3);
  Rng rng(0);
  const JointState s(3, 0);
  CHECK_THROWS_AS(m.step(s, {0, 2, 0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(m.step(s, {0, 0}, rng), std::invalid_argument);
  SysAdminParams bad;
  bad.p_load = 1.5;
  CHECK_THROWS_AS(SysAdmin{bad}, ConfigError);
}
