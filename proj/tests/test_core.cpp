#include "doctest.h"

#include <random>

#include "fca/engine.hpp"
#include "fca/zoo.hpp"
#include "helpers.hpp"

using namespace fca;
using namespace fca::testing;

namespace {

Configuration single_one_2d() {
  Configuration c = Configuration::uniform(2, 0);
  c.set({0, 0}, 1);
  return c;
}

Configuration shift_by(const Configuration& c, const Coord& s) {
  Configuration out = c;
  // Shifting a uniform-background configuration: move the overrides.
  Configuration shifted = Configuration::uniform(c.dim(), c.block()[0]);
  for (auto& [z, st] : c.overrides()) shifted.set(add(z, s), st);
  return shifted;
}

} // namespace

TEST_CASE("step: Ulam rule grows a plus from a single seed") {
  auto ca = ulam();
  auto next = step(ca, single_one_2d());
  // Oracle: brute-force evaluation on a 5x5 window.
  Configuration expect = Configuration::uniform(2, 0);
  for (const Coord& z : {Coord{0, 0}, Coord{1, 0}, Coord{-1, 0}, Coord{0, 1},
                         Coord{0, -1}})
    expect.set(z, 1);
  for_each_in_ball(2, 5, [&](const Coord& z) { CHECK(next.at(z) == expect.at(z)); });
  CHECK(next == expect);
}

TEST_CASE("step: identity and constant rules") {
  std::mt19937_64 rng(7);
  auto id = identity1d();
  auto c = random_configuration(id, 4, 0, rng);
  CHECK(step(id, c) == c);

  auto cq = constant1d(1);
  auto after = step(cq, c);
  CHECK(after == Configuration::uniform(1, 1));
}

TEST_CASE("step: periodic backgrounds stay periodic and exact") {
  auto ca = max1d();
  Configuration c = Configuration::periodic(1, {3}, {0, 1, 0});
  c.set({0}, 1);
  auto next = step(ca, c);
  // Every cell adjacent to a 1 turns 1; the background image has period 3.
  for (std::int64_t z = -9; z <= 9; ++z) {
    StateId expect = 0;
    for (std::int64_t d = -1; d <= 1; ++d) {
      std::int64_t p = z + d;
      StateId v = (((p % 3) + 3) % 3 == 1) ? 1 : 0;
      if (p == 0) v = 1;
      expect = std::max(expect, v);
    }
    CHECK(next.at({z}) == expect);
  }
  CHECK(next.periods() == std::vector<std::int64_t>{3});
}

TEST_CASE("simulate: t=0 echoes the input") {
  auto ca = max1d();
  Configuration c = Configuration::uniform(1, 0);
  c.set({2}, 1);
  auto orbit = simulate(ca, c, 0);
  REQUIRE(orbit.size() == 1);
  CHECK(orbit[0] == c);
}

TEST_CASE("apply_to_pattern: radius bookkeeping and membership") {
  auto ca = ulam();
  Pattern u(2, 2, 0);
  u.set({0, 0}, 1);
  auto v = apply_to_pattern(ca, u);
  CHECK(v.radius() == 1);
  for_each_in_ball(2, 1, [&](const Coord& z) {
    CHECK(v.at(z) == ((max_norm(z) <= 1 && (z[0] == 0 || z[1] == 0)) ? 1 : 0));
  });

  auto id = identity1d();
  Pattern w(1, 3, 0);
  w.set({1}, 1);
  auto w1 = apply_to_pattern(id, w);
  CHECK(w1.radius() == 2);
  for (std::int64_t z = -2; z <= 2; ++z) CHECK(w1.at({z}) == w.at({z}));

  CHECK_THROWS_AS(apply_to_pattern(ca, Pattern(2, 0, 0)), Error);
}

TEST_CASE("cylinder consistency: step lands inside the pattern image") {
  std::mt19937_64 rng(11);
  auto ca = max1d();
  for (int trial = 0; trial < 50; ++trial) {
    Pattern u = random_pattern(ca, 3, rng);
    auto v = apply_to_pattern(ca, u);
    Configuration c = random_configuration(ca, 8, 0, rng);
    for_each_in_ball(1, 3, [&](const Coord& z) { c.set(z, u.at(z)); });
    REQUIRE(in_cylinder(c, u));
    CHECK(in_cylinder(step(ca, c), v));
  }
}

TEST_CASE("shift commutation") {
  std::mt19937_64 rng(13);
  for (const auto& ca : {max1d(), identity1d(), shift_right()}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto c = random_configuration(ca, 5, 0, rng);
      Coord s = {static_cast<std::int64_t>(rng() % 7) - 3};
      CHECK(step(ca, shift_by(c, s)) == shift_by(step(ca, c), s));
    }
  }
}

TEST_CASE("canonical form: overrides never equal the background") {
  std::mt19937_64 rng(17);
  auto ca = ulam();
  auto c = single_one_2d();
  for (int t = 0; t < 5; ++t) {
    c = step(ca, c);
    for (auto& [z, s] : c.overrides()) CHECK(s != c.background_at(z));
  }
}

TEST_CASE("determinism: repeated simulation is identical") {
  std::mt19937_64 rng(19);
  auto ca = threshold_growth_2d(2);
  auto c = random_configuration(ca, 4, 0, rng);
  auto a = simulate(ca, c, 12);
  auto b = simulate(ca, c, 12);
  CHECK(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("trace: constant rule stabilizes at 1") {
  auto cq = constant1d(1);
  Configuration c = Configuration::uniform(1, 0);
  auto tr = trace(cq, c, {{0}}, 3);
  REQUIRE(tr.rows.size() == 4);
  CHECK(tr.rows[0][0] == 0);
  CHECK(tr.rows[1][0] == 1);
  REQUIRE(tr.eventually_constant_at.has_value());
  CHECK(*tr.eventually_constant_at == 1);

  Configuration c1 = Configuration::uniform(1, 1);
  auto tr1 = trace(cq, c1, {{0}}, 3);
  CHECK(*tr1.eventually_constant_at == 0);
}

TEST_CASE("trace: Ulam origin never changes") {
  auto ca = ulam();
  auto tr = trace(ca, single_one_2d(), {{0, 0}}, 6);
  REQUIRE(tr.eventually_constant_at.has_value());
  CHECK(*tr.eventually_constant_at == 0);
  for (const auto& row : tr.rows) CHECK(row[0] == 1);
}

TEST_CASE("freezing_report: Ulam seed is frozen from the start") {
  auto ca = ulam();
  auto rep = freezing_report(ca, single_one_2d(), {0, 0}, 8, 2);
  REQUIRE(rep.freezing_time.has_value());
  CHECK(*rep.freezing_time == 0);
  CHECK(*rep.limit_state == 1);
  CHECK(rep.guarantee == FreezeGuarantee::ExactMinimal);
}

TEST_CASE("freezing_report: vertical-min zero descends") {
  auto ca = vertical_min();
  Configuration c = Configuration::uniform(2, 1);
  c.set({0, 5}, 0);
  auto rep = freezing_report(ca, c, {0, 0}, 12, 3);
  REQUIRE(rep.freezing_time.has_value());
  CHECK(*rep.freezing_time == 5);
  CHECK(*rep.limit_state == 0);
}

TEST_CASE("freezing_report: constant rule freezes within one step") {
  std::mt19937_64 rng(23);
  auto cq = constant1d(1);
  auto c = random_configuration(cq, 3, 0, rng);
  auto rep = freezing_report(cq, c, {1}, 6, 2);
  REQUIRE(rep.freezing_time.has_value());
  CHECK(*rep.freezing_time <= 1);
}

TEST_CASE("chi: windowed positions of a state") {
  Configuration all0 = Configuration::uniform(1, 0);
  auto cells = chi(all0, 0, 1);
  CHECK(cells == std::vector<Coord>{{-1}, {0}, {1}});

  auto ca = ulam();
  auto plus = step(ca, single_one_2d());
  auto ones = chi(plus, 1, 2);
  CHECK(ones.size() == 5);
  CHECK(chi(plus, 1, 2) == chi(plus, 1, 3)); // nothing outside B(2) yet
  CHECK(chi(plus, 0, 1).size() == 4);
  CHECK(chi(plus, 2, 2).empty()); // a state that never occurs
}

TEST_CASE("limit_window: constant and Ulam") {
  auto cq = constant1d(1);
  Configuration c0 = Configuration::uniform(1, 0);
  auto lw = limit_window(cq, c0, 2, 6, 2);
  for (StateId s : lw.limit.cells()) CHECK(s == 1);
  for (const auto& rep : lw.reports) CHECK(*rep.freezing_time <= 1);

  // Oracle (10-step simulation): the diagonals keep an even number of live
  // neighbors forever, so the window limit is the plus shape, not all ones.
  auto ca = ulam();
  auto lw2 = limit_window(ca, single_one_2d(), 1, 10, 2);
  for_each_in_ball(2, 1, [&](const Coord& z) {
    const StateId want = (z[0] == 0 || z[1] == 0) ? 1 : 0;
    CHECK(lw2.limit.at(z) == want);
  });
}

TEST_CASE("limit_window: vertical-min halting columns at desk scale") {
  auto ca = vertical_min();
  // Column x has a 0 at height x+1; row 0 eventually reads the predicate
  // "column contains a 0 above".
  Configuration c = Configuration::uniform(2, 1);
  for (std::int64_t x = -2; x <= 2; ++x)
    if (x % 2 == 0) c.set({x, x < 0 ? -x : x}, 0);
  auto lw = limit_window(ca, c, 2, 20, 3);
  for (std::int64_t x = -2; x <= 2; ++x) {
    const StateId want = (x % 2 == 0) ? 0 : 1;
    CHECK(lw.limit.at({x, 0}) == want);
  }
}

TEST_CASE("cyreach_bounded: central sub-pattern reached at t=0") {
  auto ca = max1d();
  Pattern u(1, 2, 0);
  u.set({0}, 1);
  Pattern v(1, 1, 0);
  v.set({0}, 1);
  auto res = cyreach_bounded(ca, u, v, 0, 0, {0});
  REQUIRE(std::holds_alternative<Reached>(res));
  CHECK(std::get<Reached>(res).time == 0);
}

TEST_CASE("cyreach_bounded: growth reaches a distant one") {
  auto ca = max1d();
  Pattern u(1, 0, 1); // single 1 at the origin
  Pattern v(1, 1, 1); // all ones on B(1)
  auto res = cyreach_bounded(ca, u, v, 4, 0, {0});
  REQUIRE(std::holds_alternative<Reached>(res));
  CHECK(std::get<Reached>(res).time == 1);
}

TEST_CASE("cyreach_bounded: unknown when the target is unreachable") {
  auto id = identity1d();
  Pattern u(1, 0, 0);
  Pattern v(1, 0, 1);
  auto res = cyreach_bounded(id, u, v, 5, 1, {0});
  CHECK(std::holds_alternative<Unknown>(res));
}

TEST_CASE("cyreach_bounded: extensions are searched smallest first") {
  // Target needs a 1 outside the base pattern; only an extension provides it.
  auto ca = shift_right();
  Pattern u(1, 0, 0);   // origin is 0
  Pattern v(1, 0, 1);   // want a 1 at the origin
  auto res = cyreach_bounded(ca, u, v, 3, 2, {0});
  REQUIRE(std::holds_alternative<Reached>(res));
  const auto& reached = std::get<Reached>(res);
  CHECK(in_cylinder(reached.witness, u));
  CHECK(reached.time >= 1);
}

TEST_CASE("cyreach_bounded: non-quiescent backgrounds are rejected") {
  auto cq = constant1d(1);
  Pattern u(1, 0, 0);
  CHECK_THROWS_AS(cyreach_bounded(cq, u, u, 1, 0, {0}), Error);
}

TEST_CASE("cyreach_bounded: 2D extensions supply the missing cell") {
  auto ca = vertical_min();
  Pattern u(2, 0, 1); // origin holds a 1
  Pattern v(2, 0, 0); // want a 0 there
  // Without extensions nothing above the origin ever carries a 0.
  auto res0 = cyreach_bounded(ca, u, v, 4, 0, {1});
  CHECK(std::holds_alternative<Unknown>(res0));
  // A width-1 annulus can place the 0 right above, reaching in one step.
  auto res1 = cyreach_bounded(ca, u, v, 4, 1, {1});
  REQUIRE(std::holds_alternative<Reached>(res1));
  const auto& reached = std::get<Reached>(res1);
  CHECK(reached.time == 1);
  CHECK(in_cylinder(reached.witness, u));
  CHECK(reached.witness.at({0, 1}) == 0);
}

TEST_CASE("2D periodic backgrounds evolve exactly") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    auto ca = trial % 2 ? ulam() : threshold_growth_2d(2);
    const std::int64_t p1 = 1 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t p2 = 1 + static_cast<std::int64_t>(rng() % 3);
    std::vector<StateId> block(static_cast<std::size_t>(p1 * p2));
    for (auto& s : block) s = static_cast<StateId>(rng() % 2);
    Configuration c = Configuration::periodic(2, {p1, p2}, block);
    for (int o = 0; o < 5; ++o)
      c.set({static_cast<std::int64_t>(rng() % 9) - 4,
             static_cast<std::int64_t>(rng() % 9) - 4},
            static_cast<StateId>(rng() % 2));
    auto next = step(ca, c);
    std::vector<StateId> tuple(ca.neighborhood().size());
    for_each_in_ball(2, 6, [&](const Coord& z) {
      for (std::size_t j = 0; j < tuple.size(); ++j)
        tuple[j] = c.at(add(z, ca.neighborhood().offsets()[j]));
      CHECK(next.at(z) == ca.apply(tuple));
    });
  }
}
