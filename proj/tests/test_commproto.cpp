#include "doctest.h"

#include <random>

#include "fca/classify.hpp"
#include "fca/commproto.hpp"
#include "fca/engine.hpp"
#include "fca/minsky.hpp"
#include "fca/szone.hpp"
#include "helpers.hpp"

using namespace fca;
using namespace fca::testing;

namespace {

SplitInstance random_instance(const CellularAutomaton& ca, std::int64_t n,
                              std::mt19937_64& rng) {
  Pattern p(ca.dim(), ca.radius() * n);
  std::uniform_int_distribution<std::size_t> dist(0, ca.alphabet().size() - 1);
  for (auto& s : p.cells()) s = static_cast<StateId>(dist(rng));
  return SplitInstance::from_pattern(ca, n, p);
}

MinskyMachine fig2_machine() {
  std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>> rules;
  rules[{0, {0}}] = {1, {1}};
  rules[{0, {1}}] = {1, {1}};
  rules[{1, {0}}] = {2, {-1}};
  rules[{1, {1}}] = {2, {-1}};
  rules[{2, {0}}] = {3, {0}};
  rules[{2, {1}}] = {2, {-1}};
  return MinskyMachine({"q0", "q1", "q2", "h"}, "q0", "h", 1, rules);
}

} // namespace

TEST_CASE("trivial protocol: bit count and oracle agreement") {
  auto mx = max1d();
  std::mt19937_64 rng(301);
  auto inst = random_instance(mx, 4, rng);
  auto tr = run_trivial_protocol(mx, inst);
  CHECK(tr.total_bits == 5); // |A_4| = 5 cells, one bit per state
  REQUIRE(tr.rounds.size() == 1);
  CHECK(tr.rounds[0].tag == RoundTag::Init);

  for (int i = 0; i < 100; ++i) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 6);
    auto in = random_instance(mx, n, rng);
    auto t = run_trivial_protocol(mx, in);
    CHECK(t.answer == predict_naive(mx, make_instance(mx, n, in.join(mx), 0)));
  }

  // n = 1 identity: the answer is the center of Alice's half.
  auto id = identity1d();
  auto in1 = random_instance(id, 1, rng);
  auto t1 = run_trivial_protocol(id, in1);
  CHECK(t1.answer == in1.join(id).at({0}));
}

TEST_CASE("diffreport: identity sends no diff reports") {
  auto id = identity1d();
  std::mt19937_64 rng(303);
  auto inst = random_instance(id, 8, rng);
  auto tr = run_diffreport_protocol(id, inst, 1);
  CHECK(tr.bits_with_tag(RoundTag::DiffReport) == 0);
  CHECK(tr.diff_changes() == 0);
  CHECK(tr.bits_with_tag(RoundTag::Init) == 2 * 1 * 1); // both zones, 1 bit each
  CHECK(tr.answer == inst.join(id).at({0}));
}

TEST_CASE("diffreport: freezing growth matches the oracle with few changes") {
  auto mx = max1d();
  std::mt19937_64 rng(307);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 15);
    auto inst = random_instance(mx, n, rng);
    auto tr = run_diffreport_protocol(mx, inst, 1);
    CHECK(tr.answer == predict_naive(mx, make_instance(mx, n, inst.join(mx), 0)));
    CHECK(tr.diff_changes() <= 2 * mx.radius() * 1); // 2rk real changes at most
  }
}

TEST_CASE("diffreport: compiled machine instances match the oracle") {
  auto compiled = compile_minsky(fig2_machine());
  const auto& ca = compiled.ca();
  std::mt19937_64 rng(311);
  for (int i = 0; i < 25; ++i) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 12);
    auto inst = random_instance(ca, n, rng);
    auto tr = run_diffreport_protocol(ca, inst, compiled.K() + 5);
    CHECK(tr.answer == predict_naive(ca, make_instance(ca, n, inst.join(ca), 0)));
  }
}

TEST_CASE("diffreport: rollback snapshots agree with a reference simulation") {
  auto mx = max1d();
  std::mt19937_64 rng(313);
  for (int i = 0; i < 10; ++i) {
    const std::int64_t n = 4 + static_cast<std::int64_t>(rng() % 10);
    auto inst = random_instance(mx, n, rng);
    DiffReportDiagnostics diag;
    run_diffreport_protocol(mx, inst, 1, &diag);
    // Reference: the joined pattern embedded in the same zero filler the
    // parties use for cells beyond their tracked regions.
    Configuration ref = Configuration::uniform(1, 0);
    auto joined = inst.join(mx);
    for_each_in_ball(1, joined.radius(), [&](const Coord& z) {
      ref.set(z, joined.at(z));
    });
    auto orbit = simulate(mx, ref, n);
    for (const auto& sync : diag.syncs) {
      const auto& conf = orbit[static_cast<std::size_t>(sync.time)];
      std::size_t ai = 0, bi = 0;
      for_each_in_ball(1, n, [&](const Coord& z) {
        if (z[0] <= 0)
          CHECK(sync.alice_region[ai++] == conf.at(z));
        else
          CHECK(sync.bob_region[bi++] == conf.at(z));
      });
    }
  }
}

TEST_CASE("diffreport: non-init traffic obeys the freezing bit budget") {
  auto mx = max1d();
  std::mt19937_64 rng(317);
  const std::int64_t r = mx.radius();
  const std::int64_t q = 2;
  for (std::int64_t n : {8, 16, 32, 64}) {
    auto ceil_log2 = [](std::int64_t v) {
      std::int64_t b = 0, c = 1;
      while (c < v) c *= 2, ++b;
      return b;
    };
    const std::int64_t budget =
        2 * r * (q - 1) * (ceil_log2(q) + 2 * ceil_log2(n)) +
        n * (2 * ceil_log2(n));
    for (int i = 0; i < 10; ++i) {
      auto inst = random_instance(mx, n, rng);
      auto tr = run_diffreport_protocol(mx, inst, q - 1);
      CHECK(tr.total_bits - tr.bits_with_tag(RoundTag::Init) <= budget);
    }
  }
}

TEST_CASE("mirror compare rule: matched mirrors read 1, mismatches 0") {
  auto ca = mirror_compare_rule(1);
  CHECK(ca.alphabet().size() == 6);
  const StateId r0 = ca.alphabet().id("r0"), r1 = ca.alphabet().id("r1");
  const StateId l0 = ca.alphabet().id("l0"), l1 = ca.alphabet().id("l1");
  const StateId t0 = ca.alphabet().id("t0"), t1 = ca.alphabet().id("t1");

  auto correct = [&](const std::vector<int>& left_bits,
                     const std::vector<int>& right_bits) {
    // left_bits[i] is the bit at cell -(i+1); right_bits[i] at +(i+1).
    Pattern p(1, 6, t1);
    p.set({0}, t1);
    for (std::size_t i = 0; i < 6; ++i) {
      p.set({-static_cast<std::int64_t>(i) - 1}, left_bits[i] ? r1 : r0);
      p.set({static_cast<std::int64_t>(i) + 1}, right_bits[i] ? l1 : l0);
    }
    return p;
  };

  auto run = [&](const Pattern& p) {
    return predict_naive(ca, make_instance(ca, 6, p, 0));
  };

  CHECK(run(correct({1, 0, 1, 1, 0, 0}, {1, 0, 1, 1, 0, 0})) == t1);
  CHECK(run(correct({1, 0, 1, 1, 0, 0}, {1, 1, 1, 1, 0, 0})) == t0);
  CHECK(run(correct({0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0})) == t0);

  // (T, 0) is absorbing.
  Configuration c = Configuration::uniform(1, t1);
  c.set({0}, t0);
  auto orbit = simulate(ca, c, 4);
  CHECK(orbit.back().at({0}) == t0);
}

TEST_CASE("fooling set: mirror-bit candidates verify at size 8") {
  auto ca = mirror_compare_rule(1);
  const StateId r0 = ca.alphabet().id("r0"), r1 = ca.alphabet().id("r1");
  const StateId l0 = ca.alphabet().id("l0"), l1 = ca.alphabet().id("l1");
  const StateId t1 = ca.alphabet().id("t1");
  std::vector<SplitInstance> candidates;
  for (int mask = 0; mask < 8; ++mask) {
    Pattern p(1, 6, t1);
    for (std::int64_t d = 1; d <= 6; ++d) {
      const int bit = d <= 3 ? ((mask >> (d - 1)) & 1) : 0;
      p.set({-d}, bit ? r1 : r0);
      p.set({d}, bit ? l1 : l0);
    }
    candidates.push_back(SplitInstance::from_pattern(ca, 6, p));
  }
  auto res = check_fooling_set(ca, 6, candidates);
  REQUIRE(std::holds_alternative<FoolingSetVerified>(res));
  CHECK(std::get<FoolingSetVerified>(res).size == 8);
}

TEST_CASE("fooling set: identity candidates fail, singletons pass") {
  auto id = identity1d();
  std::mt19937_64 rng(331);
  // Two candidates differing only away from the center: the oracle ignores
  // the difference.
  Pattern p1(1, 3, 0);
  Pattern p2(1, 3, 0);
  p2.set({3}, 1);
  std::vector<SplitInstance> cands = {SplitInstance::from_pattern(id, 3, p1),
                                      SplitInstance::from_pattern(id, 3, p2)};
  auto res = check_fooling_set(id, 3, cands);
  REQUIRE(std::holds_alternative<FoolingCounterexample>(res));

  auto single = check_fooling_set(id, 3, {SplitInstance::from_pattern(id, 3, p1)});
  REQUIRE(std::holds_alternative<FoolingSetVerified>(single));
  CHECK(std::get<FoolingSetVerified>(single).size == 1);
}

TEST_CASE("diffreport runs on zone-wrapped rules") {
  // The wrapper of a high-communication rule is the stock convergent example
  // with expensive prediction; the protocol still answers correctly, it just
  // pays for the many boundary changes.
  auto wrapped = build_szone(mirror_compare_rule(1));
  const auto& ca = wrapped.ca();
  std::mt19937_64 rng(337);
  const std::int64_t k = static_cast<std::int64_t>(ca.alphabet().size()) - 1;
  for (int i = 0; i < 6; ++i) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 5);
    Pattern p(1, n);
    for (auto& s : p.cells())
      s = static_cast<StateId>(rng() % ca.alphabet().size());
    auto inst = SplitInstance::from_pattern(ca, n, p);
    auto tr = run_diffreport_protocol(ca, inst, k);
    CHECK(tr.answer == predict_naive(ca, make_instance(ca, n, p, 0)));
  }
  // A seeded zone instance rather than noise.
  Configuration c = Configuration::uniform(1, 0);
  auto lam = make_lambda(wrapped, 3, c, c);
  Pattern p(1, 8, wrapped.blank());
  for (std::int64_t z = -8; z <= 8; ++z) p.set({z}, lam.realized.at({z}));
  auto inst = SplitInstance::from_pattern(ca, 8, p);
  auto tr = run_diffreport_protocol(ca, inst, k);
  CHECK(tr.answer == predict_naive(ca, make_instance(ca, 8, p, 0)));
}
