#include "doctest.h"

#include <sstream>

#include "fca/engine.hpp"
#include "fca/io.hpp"
#include "fca/minsky.hpp"
#include "fca/zoo.hpp"
#include "helpers.hpp"

using namespace fca;
using namespace fca::testing;

TEST_CASE("rule files round-trip through the parser") {
  for (const auto& name : {"ulam", "max1d", "sir", "vertical-min"}) {
    auto ca = zoo_build(name);
    std::ostringstream out;
    write_rule(out, ca);
    std::istringstream in(out.str());
    auto back = parse_rule(in, "mem");
    CHECK(back.alphabet() == ca.alphabet());
    CHECK(back.neighborhood() == ca.neighborhood());
    CHECK(back.table() == ca.table());
  }
}

TEST_CASE("rule files accept builtin references and validate headers") {
  std::istringstream ok("dim 2\nbuiltin ulam\n");
  auto ca = parse_rule(ok, "mem");
  CHECK(ca.alphabet().size() == 2);

  std::istringstream bad("dim 1\nbuiltin ulam\n");
  CHECK_THROWS_AS(parse_rule(bad, "mem"), Error);
}

TEST_CASE("rule files report missing entries and bad states with line numbers") {
  std::istringstream missing(
      "dim 1\nalphabet 0 1\nneighborhood -1 0 1\nentry 0 0 0 -> 0\n");
  try {
    parse_rule(missing, "rule.ca");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(std::string(e.what()).find("rule.ca") != std::string::npos);
  }

  std::istringstream bad("dim 1\nalphabet 0 1\nneighborhood 0\nentry 2 -> 0\n");
  try {
    parse_rule(bad, "rule.ca");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }
}

TEST_CASE("configuration files round-trip") {
  auto ca = max1d();
  std::mt19937_64 rng(401);
  auto c = random_configuration(ca, 5, 0, rng);
  std::ostringstream out;
  write_configuration(out, c, ca.alphabet());
  std::istringstream in(out.str());
  auto back = parse_configuration(in, ca.alphabet(), "mem");
  CHECK(back == c);

  Configuration per = Configuration::periodic(1, {3}, {0, 1, 0});
  per.set({7}, 1);
  std::ostringstream out2;
  write_configuration(out2, per, ca.alphabet());
  std::istringstream in2(out2.str());
  CHECK(parse_configuration(in2, ca.alphabet(), "mem") == per);
}

TEST_CASE("pattern files round-trip") {
  auto ca = ulam();
  std::mt19937_64 rng(403);
  auto p = random_pattern(ca, 2, rng);
  std::ostringstream out;
  write_pattern(out, p, ca.alphabet());
  std::istringstream in(out.str());
  CHECK(parse_pattern(in, ca.alphabet(), "mem") == p);
}

TEST_CASE("machine files parse, expand wildcards, and round-trip") {
  std::istringstream in(
      "states q0 q1 q2 h\ninitial q0\nhalting h\ncounters 1\n"
      "rule q0 * -> q1 +\nrule q1 * -> q2 -\nrule q2 0 -> h 0\nrule q2 1 -> q2 -\n");
  auto m = parse_machine(in, "mem");
  CHECK(m.counters() == 1);
  CHECK(m.transition(0, {0}) == std::make_pair(1, std::vector<int>{1}));
  CHECK(m.transition(0, {1}) == std::make_pair(1, std::vector<int>{1}));
  CHECK(m.transition(2, {0}).first == 3);

  std::ostringstream out;
  write_machine(out, m);
  std::istringstream in2(out.str());
  auto m2 = parse_machine(in2, "mem");
  CHECK(m2.states() == m.states());
  for (int q = 0; q < 4; ++q)
    for (int f = 0; f < 2; ++f) CHECK(m2.transition(q, {f}) == m.transition(q, {f}));
}

TEST_CASE("machine files reject non-total maps with a line number") {
  std::istringstream in(
      "states q0 h\ninitial q0\nhalting h\ncounters 1\nrule q0 0 -> h 0\n");
  try {
    parse_machine(in, "m.mm");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("m.mm") != std::string::npos);
    CHECK(std::string(e.what()).find("not total") != std::string::npos);
  }
}

TEST_CASE("tile sets parse into working systems") {
  std::istringstream in(
      "threshold 2\nseed S\n"
      "tile S a,2 b,2 - -\n"
      "tile A - - a,2 -\n"
      "tile B - - - b,2\n");
  auto sys = parse_tileset(in, "mem");
  CHECK(sys.tiles().size() == 3);
  CHECK(sys.threshold() == 2);
  auto closure = atam_closure(sys);
  REQUIRE(closure.terminal.size() == 1);
  // Terminal: S at origin, A above (north glue a), B to the east (glue b).
  CHECK(closure.terminal[0].at({0, 0}) == sys.tile_id("S"));
  CHECK(closure.terminal[0].at({0, 1}) == sys.tile_id("A"));
  CHECK(closure.terminal[0].at({1, 0}) == sys.tile_id("B"));
}

TEST_CASE("pgm: exact byte layout") {
  std::ostringstream out;
  write_pgm_rows(out, {{0, 1, 2}, {2, 1, 0}}, 2);
  CHECK(out.str() == "P2\n3 2\n2\n0 1 2\n2 1 0\n");
}

TEST_CASE("space-time render: one row per step, ids as gray levels") {
  auto sr = shift_right();
  Configuration c = Configuration::uniform(1, 0);
  c.set({0}, 1);
  std::ostringstream out;
  render_space_time(out, sr, c, 2, 2);
  CHECK(out.str() == "P2\n5 3\n1\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n");
}

TEST_CASE("snapshot render: 2D window at the final step") {
  auto vm = vertical_min();
  Configuration c = Configuration::uniform(2, 1);
  c.set({0, 1}, 0);
  std::ostringstream out;
  render_snapshot(out, vm, c, 1, 1);
  // After one step the zero has copied down to the origin; rows are emitted
  // top to bottom (y = 1 down to y = -1).
  CHECK(out.str() == "P2\n3 3\n1\n1 0 1\n1 0 1\n1 1 1\n");
}

TEST_CASE("machine files: two counters with mixed wildcard flags") {
  std::istringstream in(
      "states m h\ninitial m\nhalting h\ncounters 2\n"
      "rule m 1* -> m -+\nrule m 0* -> h 00\n");
  auto m = parse_machine(in, "mem");
  CHECK(m.counters() == 2);
  CHECK(m.transition(0, {1, 0}) == std::make_pair(0, std::vector<int>{-1, 1}));
  CHECK(m.transition(0, {1, 1}) == std::make_pair(0, std::vector<int>{-1, 1}));
  CHECK(m.transition(0, {0, 0}).first == 1);
  CHECK(m.transition(0, {0, 1}).first == 1);
  // The interpreter drains the first counter into the second.
  MinskyConfig cfg{0, {3, 1}};
  auto res = minsky_run(m, cfg, 20);
  REQUIRE(std::holds_alternative<Halted>(res));
  CHECK(std::get<Halted>(res).time == 4);
}
