#include "doctest.h"

#include <random>
#include <set>

#include "fca/classify.hpp"
#include "fca/engine.hpp"
#include "fca/predict.hpp"
#include "fca/szone.hpp"
#include "helpers.hpp"

using namespace fca;
using namespace fca::testing;

namespace {

CellularAutomaton random_inner(std::size_t n_states, std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_states; ++i) names.push_back(std::to_string(i));
  const std::size_t entries = n_states * n_states * n_states;
  std::vector<StateId> table(entries);
  for (auto& s : table) s = static_cast<StateId>(rng() % n_states);
  return CellularAutomaton(Alphabet(names), line_neighborhood(-1, 1), table,
                           "inner");
}

} // namespace

TEST_CASE("build_szone: alphabet size and basic state properties") {
  auto sz = build_szone(max1d());
  CHECK(sz.ca().alphabet().size() == 3 + 4 * 2 * 2);
  CHECK(sz.ca().radius() == 1);
  CHECK_THROWS_AS(build_szone(CellularAutomaton::from_local_rule(
                      Alphabet({"0", "1"}), line_neighborhood(-2, 2),
                      [](const std::vector<StateId>& t) { return t[2]; }, "wide")),
                  Error);
}

TEST_CASE("error state spreads; blanks decay") {
  auto sz = build_szone(max1d());
  const StateId e = sz.error_state();
  Configuration c = Configuration::uniform(1, sz.blank());
  c.set({0}, e);
  auto orbit = simulate(sz.ca(), c, 4);
  for (std::int64_t z = -4; z <= 4; ++z)
    CHECK((orbit.back().at({z}) == e) == (std::abs(z) <= 4));

  Configuration d = Configuration::uniform(1, sz.blank());
  d.set({0}, sz.blank_decay());
  CHECK(step(sz.ca(), d) == Configuration::uniform(1, sz.blank()));
}

TEST_CASE("single-cell zones lose their head") {
  auto sz = build_szone(max1d());
  for (auto marker : {SZoneRule::kHeadLeft, SZoneRule::kHeadRight, SZoneRule::kLeft}) {
    Configuration c = Configuration::uniform(1, sz.blank());
    c.set({0}, sz.zone(1, 0, marker));
    auto next = step(sz.ca(), c);
    CHECK(next.at({0}) == sz.zone(1, 0, SZoneRule::kRight));
    CHECK(step(sz.ca(), next) == next); // headless zones are fixed
  }
}

TEST_CASE("make_lambda: the seeded zone layout") {
  auto sz = build_szone(max1d());
  Configuration zeros = Configuration::uniform(1, 0);
  auto lam = make_lambda(sz, 1, zeros, zeros);
  CHECK(lam.realized.at({-2}) == sz.blank());
  CHECK(lam.realized.at({-1}) == sz.zone(0, 0, SZoneRule::kHeadRight));
  CHECK(lam.realized.at({0}) == sz.zone(0, 0, SZoneRule::kRight));
  CHECK(lam.realized.at({1}) == sz.zone(0, 0, SZoneRule::kRight));
  CHECK(lam.realized.at({2}) == sz.blank());
  CHECK_THROWS_AS(make_lambda(sz, 0, zeros, zeros), Error);

  std::mt19937_64 rng(61);
  auto c = random_configuration(max1d(), 5, 0, rng);
  auto lam3 = make_lambda(sz, 3, c, c);
  for (std::int64_t z = -3; z <= 3; ++z) {
    const auto marker = z == -3 ? SZoneRule::kHeadRight : SZoneRule::kRight;
    CHECK(lam3.realized.at({z}) == sz.zone(c.at({z}), c.at({z}), marker));
  }
}

TEST_CASE("pass_time matches the arithmetic sum") {
  CHECK(pass_time(3, 2) == (4 * 3 + 1) + (4 * 2 + 1));
  CHECK(pass_time(1, 1) == 5);
  CHECK(pass_time(8, 8) == 2 * 8 * 8 + 3 * 8);
}

TEST_CASE("verify_timing: single pass of a single-cell window") {
  std::mt19937_64 rng(67);
  auto inner = max1d();
  auto sz = build_szone(inner);
  auto c = random_configuration(inner, 3, 0, rng);
  auto check = verify_timing(sz, c, 1, 1);
  CHECK(check.pass_time == 5);
  CHECK(check.ok);
}

TEST_CASE("verify_timing: passes for sampled inner rules up to n = 6") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    auto inner = random_inner(2 + trial % 2, rng);
    auto sz = build_szone(inner);
    auto c = random_configuration(inner, 8, 0, rng);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 6);
    const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % n);
    CAPTURE(trial);
    CAPTURE(n);
    CAPTURE(t);
    auto check = verify_timing(sz, c, n, t);
    for (const auto& m : check.mismatches) {
      CAPTURE(m);
      CHECK(false);
    }
    CHECK(check.ok);
  }
}

TEST_CASE("unbounded change: the origin changes more than n times") {
  std::mt19937_64 rng(73);
  auto inner = max1d();
  auto sz = build_szone(inner);
  for (std::int64_t n : {2, 4, 8}) {
    auto c = random_configuration(inner, n + 1, 0, rng);
    auto lam = make_lambda(sz, n, c, c);
    const std::int64_t horizon = pass_time(n, n) + 4;
    Configuration cur = lam.realized;
    std::int64_t changes = 0;
    StateId prev = cur.at({0});
    for (std::int64_t t = 1; t <= horizon; ++t) {
      cur = step(sz.ca(), cur);
      if (cur.at({0}) != prev) {
        ++changes;
        prev = cur.at({0});
      }
    }
    CAPTURE(n);
    CHECK(changes > n);
  }
}

TEST_CASE("zone shrinkage and head uniqueness along the full run") {
  std::mt19937_64 rng(79);
  auto inner = random_inner(2, rng);
  auto sz = build_szone(inner);
  auto c = random_configuration(inner, 5, 0, rng);
  const std::int64_t n = 4;
  auto lam = make_lambda(sz, n, c, c);
  Configuration cur = lam.realized;
  const std::int64_t horizon = pass_time(n, n) + 6;
  std::set<std::int64_t> seen_sizes;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    if (t > 0) cur = step(sz.ca(), cur);
    // Never an error state; at most one head; zone is one contiguous block.
    std::int64_t zone_cells = 0, heads = 0, lo = 99, hi = -99;
    for (std::int64_t z = -n - 2; z <= n + 2; ++z) {
      const StateId s = cur.at({z});
      CHECK(s != sz.error_state());
      if (sz.is_zone(s)) {
        ++zone_cells;
        lo = std::min(lo, z);
        hi = std::max(hi, z);
        const auto m = sz.zone_marker(s);
        heads += (m == SZoneRule::kHeadLeft || m == SZoneRule::kHeadRight);
      }
    }
    if (zone_cells > 0) CHECK(zone_cells == hi - lo + 1);
    CHECK(heads <= 1);
    seen_sizes.insert(zone_cells);
  }
  // The zone shrank through every size from 2n+1 down to 1.
  for (std::int64_t s = 1; s <= 2 * n + 1; ++s) CHECK(seen_sizes.count(s) == 1);
  // And the final state is fixed.
  CHECK(step(sz.ca(), cur) == cur);
}

TEST_CASE("convergence harness: random valid seeds stabilize") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 6; ++trial) {
    auto inner = random_inner(2, rng);
    auto sz = build_szone(inner);
    auto c = random_configuration(inner, 9, 0, rng);
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 7);
    auto lam = make_lambda(sz, n, c, c);
    Configuration cur = lam.realized;
    Configuration prev = cur;
    std::int64_t stable_streak = 0;
    for (std::int64_t t = 1; t <= 2000 && stable_streak < 8; ++t) {
      cur = step(sz.ca(), cur);
      stable_streak = (cur == prev) ? stable_streak + 1 : 0;
      prev = cur;
    }
    CHECK(stable_streak >= 8);
  }
}

TEST_CASE("erasing variant: constant-s zones die, s-free orbits agree") {
  // Inner with spreading state s = 1: max over the window.
  auto inner = max1d();
  auto plain = build_szone(inner);
  auto erasing = build_szone_erasing(inner, 1);

  // A zone whose head writes s: everything erases to the error state.
  Configuration ones = Configuration::uniform(1, 1);
  auto lam = make_lambda(erasing, 3, ones, ones);
  auto orbit = simulate(erasing.ca(), lam.realized, 12);
  bool saw_error = false;
  for (std::int64_t z = -3; z <= 3; ++z)
    saw_error = saw_error || orbit.back().at({z}) == erasing.error_state();
  CHECK(saw_error);

  // s-free inner orbits match the plain wrapper state for state.
  Configuration zeros = Configuration::uniform(1, 0);
  auto lam0p = make_lambda(plain, 4, zeros, zeros);
  auto lam0e = make_lambda(erasing, 4, zeros, zeros);
  auto po = simulate(plain.ca(), lam0p.realized, 40);
  auto eo = simulate(erasing.ca(), lam0e.realized, 40);
  for (std::size_t t = 0; t < po.size(); ++t)
    for (std::int64_t z = -6; z <= 6; ++z) CHECK(po[t].at({z}) == eo[t].at({z}));

  // One step on an s-free seed is identical as a map too.
  CHECK_THROWS_AS(build_szone_erasing(identity1d(), 1), Error);
}

TEST_CASE("trace of the origin: busy prefix, then constant") {
  auto sz = build_szone(max1d());
  Configuration zeros = Configuration::uniform(1, 0);
  Configuration c = zeros;
  c.set({0}, 1);
  auto lam = make_lambda(sz, 3, c, c);
  auto tr = trace(sz.ca(), lam.realized, {{0}}, pass_time(3, 3) + 6);
  REQUIRE(tr.eventually_constant_at.has_value());
  CHECK(*tr.eventually_constant_at > 0);
  // The settled value is a headless zone cell or blank.
  const StateId last = tr.rows.back()[0];
  CHECK((last == sz.blank() || sz.is_zone(last)));
}

TEST_CASE("table-level invariants of the zone alphabet") {
  auto sz = build_szone(max1d());
  const auto& ca = sz.ca();
  const std::size_t n = ca.alphabet().size();
  // The error state spreads through every context.
  CHECK(is_spreading_state(ca, sz.error_state()));
  // Blank never changes absent the error state; the decayed blank drops to
  // blank.
  for (StateId x = 0; x < n; ++x)
    for (StateId z = 0; z < n; ++z) {
      if (x == sz.error_state() || z == sz.error_state()) continue;
      CHECK(ca.apply({x, sz.blank(), z}) == sz.blank());
      CHECK(ca.apply({x, sz.blank_decay(), z}) == sz.blank());
    }
  // Forbidden adjacencies produce the error state from both sides.
  const StateId rr = sz.zone(0, 0, SZoneRule::kRight);
  const StateId ll = sz.zone(0, 0, SZoneRule::kLeft);
  const StateId hl = sz.zone(0, 0, SZoneRule::kHeadLeft);
  const StateId hr = sz.zone(0, 0, SZoneRule::kHeadRight);
  for (auto [a, b] : {std::pair{rr, ll}, {ll, rr}, {hl, hr}, {hr, hl},
                      {rr, hl}, {rr, hr}, {hl, ll}, {hr, ll}}) {
    CHECK(ca.apply({a, b, sz.blank()}) == sz.error_state());
    CHECK(ca.apply({sz.blank(), a, b}) == sz.error_state());
  }
  // The listed head movements are present verbatim: arrival applying the
  // inner map, departures swapping, turns at both ends.
  auto zc = [&](StateId a, StateId b, SZoneRule::Marker m) { return sz.zone(a, b, m); };
  // max(1, 0, 1) = 1 lands in the fresh slot of the arriving head.
  CHECK(ca.apply({zc(1, 0, SZoneRule::kHeadRight), zc(0, 0, SZoneRule::kRight),
                  zc(1, 1, SZoneRule::kRight)}) ==
        zc(0, 1, SZoneRule::kHeadRight));
  CHECK(ca.apply({zc(1, 0, SZoneRule::kLeft), zc(0, 1, SZoneRule::kHeadRight),
                  zc(1, 1, SZoneRule::kRight)}) == zc(1, 0, SZoneRule::kLeft));
  CHECK(ca.apply({sz.blank(), zc(1, 0, SZoneRule::kHeadLeft),
                  zc(0, 0, SZoneRule::kRight)}) == zc(1, 0, SZoneRule::kHeadRight));
  CHECK(ca.apply({zc(1, 0, SZoneRule::kLeft), zc(0, 1, SZoneRule::kHeadRight),
                  sz.blank()}) == zc(0, 1, SZoneRule::kHeadLeft));
}

TEST_CASE("prediction reduces through the zone wrapper") {
  // Predicting the inner rule t steps ahead equals reading the first layer
  // of the wrapped rule after t full passes on the seeded zone, which is the
  // published route from inner prediction to wrapper prediction.
  auto inner = max1d();
  auto sz = build_szone(inner);
  std::mt19937_64 rng(991);
  for (int trial = 0; trial < 6; ++trial) {
    const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t n = t + 1;
    const std::int64_t tn = pass_time(n, t);
    Configuration c = Configuration::uniform(1, 0);
    for (std::int64_t z = -tn - 2; z <= tn + 2; ++z)
      c.set({z}, static_cast<StateId>(rng() % 2));
    auto lam = make_lambda(sz, n, c, c);
    Pattern u(1, tn, sz.blank());
    for (std::int64_t z = -tn; z <= tn; ++z) u.set({z}, lam.realized.at({z}));
    const StateId wrapped =
        predict_naive(sz.ca(), make_instance(sz.ca(), tn, u, 0));
    REQUIRE(sz.is_zone(wrapped));
    auto inner_orbit = simulate(inner, c, t);
    CHECK(sz.zone_new(wrapped) == inner_orbit.back().at({0}));
    CHECK(sz.zone_old(wrapped) ==
          inner_orbit[static_cast<std::size_t>(t) - 1].at({0}));
  }
}
