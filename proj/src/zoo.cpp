#include "fca/zoo.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "fca/commproto.hpp"
#include "fca/engine.hpp"

namespace fca {

CellularAutomaton ulam() {
  Alphabet alpha({"0", "1"});
  Neighborhood nb = von_neumann();
  const int center = nb.center_index();
  auto rule = [&, center](const std::vector<StateId>& t) -> StateId {
    int ones = 0;
    for (StateId s : t) ones += (s == 1);
    if (t[static_cast<std::size_t>(center)] == 0 && ones != 1) return 0;
    return 1;
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule, "ulam");
}

CellularAutomaton threshold_growth(int dim, int threshold,
                                   const std::vector<Coord>& counting_offsets) {
  Alphabet alpha({"0", "1"});
  std::vector<Coord> offs;
  offs.push_back(origin(dim));
  for (const auto& o : counting_offsets)
    if (o != origin(dim)) offs.push_back(o);
  Neighborhood nb(dim, offs);
  auto rule = [&](const std::vector<StateId>& t) -> StateId {
    if (t[0] == 1) return 1;
    int ones = 0;
    for (std::size_t j = 1; j < t.size(); ++j) ones += (t[j] == 1);
    return ones >= threshold ? 1 : 0;
  };
  return CellularAutomaton::from_local_rule(
      alpha, nb, rule, "threshold" + std::to_string(threshold));
}

CellularAutomaton threshold_growth_2d(int threshold) {
  return threshold_growth(
      2, threshold, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

CellularAutomaton freeze_under_order(const CellularAutomaton& inner,
                                     const std::vector<StateId>& low_to_high) {
  if (low_to_high.size() != inner.alphabet().size())
    fail(ErrorKind::Format, "order must list every state exactly once");
  std::vector<std::size_t> rank(inner.alphabet().size());
  std::vector<char> seen(inner.alphabet().size(), 0);
  for (std::size_t i = 0; i < low_to_high.size(); ++i) {
    if (seen[low_to_high[i]]) fail(ErrorKind::Format, "order repeats a state");
    seen[low_to_high[i]] = 1;
    rank[low_to_high[i]] = i;
  }
  const int center = inner.neighborhood().center_index();
  if (center < 0)
    fail(ErrorKind::Format, "freeze-under-order needs the center in the neighborhood");
  auto rule = [&, center](const std::vector<StateId>& t) -> StateId {
    const StateId cur = t[static_cast<std::size_t>(center)];
    const StateId nxt = inner.apply(t);
    return rank[nxt] < rank[cur] ? nxt : cur;
  };
  return CellularAutomaton::from_local_rule(inner.alphabet(), inner.neighborhood(),
                                            rule, inner.name() + "-frozen");
}

CellularAutomaton game_of_life() {
  Alphabet alpha({"0", "1"});
  Neighborhood nb = moore_neighborhood();
  const int center = nb.center_index();
  auto rule = [&, center](const std::vector<StateId>& t) -> StateId {
    int live = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (static_cast<int>(j) != center) live += (t[j] == 1);
    if (t[static_cast<std::size_t>(center)] == 1)
      return (live == 2 || live == 3) ? 1 : 0;
    return live == 3 ? 1 : 0;
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule, "life");
}

CellularAutomaton life_without_death() {
  auto life = game_of_life();
  // 1 below 0: live cells can never die.
  auto ca = freeze_under_order(life, {1, 0});
  return CellularAutomaton(ca.alphabet(), ca.neighborhood(), ca.table(),
                           "life-without-death");
}

CellularAutomaton sir(int infection_threshold) {
  Alphabet alpha({"S", "I", "R"});
  Neighborhood nb = von_neumann();
  const int center = nb.center_index();
  auto rule = [&, center](const std::vector<StateId>& t) -> StateId {
    const StateId cur = t[static_cast<std::size_t>(center)];
    if (cur == 2) return 2; // recovered
    if (cur == 1) return 2; // infected recover after one step
    int infected = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (static_cast<int>(j) != center) infected += (t[j] == 1);
    return infected >= infection_threshold ? 1 : 0;
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule, "sir");
}

CellularAutomaton vertical_min() {
  Alphabet alpha({"0", "1"});
  Neighborhood nb(2, {{0, 0}, {0, 1}});
  auto rule = [](const std::vector<StateId>& t) -> StateId {
    return std::min(t[0], t[1]);
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule, "vertical-min");
}

CellularAutomaton line_lift(const CellularAutomaton& inner) {
  if (inner.dim() != 1) fail(ErrorKind::WrongDimension, "line lift needs a 1D rule");
  const std::size_t n = inner.alphabet().size();
  std::vector<std::string> names = inner.alphabet().names();
  names.push_back("*");
  const StateId star = static_cast<StateId>(n);
  std::vector<Coord> offs;
  offs.push_back({0, 0});
  for (const auto& v : inner.neighborhood().offsets()) offs.push_back({v[0], -1});
  Neighborhood nb(2, offs);
  auto rule = [&](const std::vector<StateId>& t) -> StateId {
    if (t[0] != star) return t[0];
    std::vector<StateId> below(t.begin() + 1, t.end());
    for (StateId s : below)
      if (s == star) return star;
    return inner.apply(below);
  };
  return CellularAutomaton::from_local_rule(Alphabet(names), nb, rule,
                                            inner.name() + "-lift");
}

AtamSystem::AtamSystem(std::vector<AtamTile> tiles, const std::string& seed,
                       int threshold)
    : tiles_(std::move(tiles)), threshold_(threshold) {
  if (tiles_.empty()) fail(ErrorKind::Format, "tile set must be nonempty");
  bool found = false;
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    for (std::size_t j = i + 1; j < tiles_.size(); ++j)
      if (tiles_[i].name == tiles_[j].name)
        fail(ErrorKind::Format, "duplicate tile name: " + tiles_[i].name);
    if (tiles_[i].name == seed) {
      seed_ = i;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::Format, "seed tile not in tile set: " + seed);
}

std::size_t AtamSystem::tile_id(const std::string& name) const {
  for (std::size_t i = 0; i < tiles_.size(); ++i)
    if (tiles_[i].name == name) return i;
  fail(ErrorKind::Format, "unknown tile: " + name);
}

bool AtamSystem::attaches(std::size_t t, const std::array<StateId, 4>& around) const {
  // Sides: N, E, S, W; the neighbor's facing side is the opposite one.
  static const int kOpposite[4] = {2, 3, 0, 1};
  int strength = 0;
  for (int side = 0; side < 4; ++side) {
    const StateId nb = around[static_cast<std::size_t>(side)];
    if (nb == empty_state()) continue;
    const auto& mine = tiles_[t].glues[static_cast<std::size_t>(side)];
    const auto& theirs =
        tiles_[nb].glues[static_cast<std::size_t>(kOpposite[side])];
    if (mine.first != 0 && mine == theirs) strength += mine.second;
  }
  return strength >= threshold_;
}

Configuration AtamSystem::seed_configuration() const {
  Configuration c = Configuration::uniform(2, empty_state());
  c.set({0, 0}, static_cast<StateId>(seed_));
  return c;
}

namespace {
const std::array<Coord, 4> kSides = {Coord{0, 1}, Coord{1, 0}, Coord{0, -1},
                                     Coord{-1, 0}};
}

std::vector<Configuration> atam_step(const AtamSystem& sys, const Configuration& c) {
  const StateId eps = sys.empty_state();
  std::set<Coord> frontier;
  for (auto& [z, s] : c.overrides()) {
    if (s == eps) continue;
    for (const auto& side : kSides) {
      Coord nb = add(z, side);
      if (c.at(nb) == eps) frontier.insert(nb);
    }
  }
  std::vector<Configuration> out;
  for (const auto& z : frontier) {
    std::array<StateId, 4> around;
    for (int side = 0; side < 4; ++side)
      around[static_cast<std::size_t>(side)] =
          c.at(add(z, kSides[static_cast<std::size_t>(side)]));
    for (std::size_t t = 0; t < sys.tiles().size(); ++t) {
      if (sys.attaches(t, around)) {
        Configuration next = c;
        next.set(z, static_cast<StateId>(t));
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

CellularAutomaton atam_to_ca(const AtamSystem& sys) {
  std::vector<std::string> names;
  for (const auto& t : sys.tiles()) names.push_back(t.name);
  names.push_back("eps");
  const StateId eps = sys.empty_state();
  // Offsets: center, then the four sides in N, E, S, W order.
  std::vector<Coord> offs = {{0, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 0}};
  Neighborhood nbh(2, offs);
  auto rule = [&](const std::vector<StateId>& t) -> StateId {
    if (t[0] != eps) return t[0];
    std::array<StateId, 4> around = {t[1], t[2], t[3], t[4]};
    for (std::size_t tile = 0; tile < sys.tiles().size(); ++tile)
      if (sys.attaches(tile, around)) return static_cast<StateId>(tile);
    return eps;
  };
  return CellularAutomaton::from_local_rule(Alphabet(names), nbh, rule, "atam");
}

AtamSystem directed_toy_atam() {
  // A tree of strength-2 bonds: S at the origin, A, B to the east, C above S,
  // D above A. Unique terminal assembly of five tiles.
  auto glue = [](int color) { return std::pair<int, int>{color, 2}; };
  auto none = std::pair<int, int>{0, 0};
  std::vector<AtamTile> tiles = {
      // name, {N, E, S, W}
      {"S", {glue(3), glue(1), none, none}},
      {"A", {glue(4), glue(2), none, glue(1)}},
      {"B", {none, none, none, glue(2)}},
      {"C", {none, none, glue(3), none}},
      {"D", {none, none, glue(4), none}},
  };
  return AtamSystem(std::move(tiles), "S", 2);
}

AtamClosure atam_closure(const AtamSystem& sys, std::size_t max_assemblies) {
  AtamClosure out;
  std::set<std::map<Coord, StateId>> seen;
  std::queue<Configuration> queue;
  Configuration c0 = sys.seed_configuration();
  seen.insert(c0.overrides());
  queue.push(c0);
  while (!queue.empty()) {
    if (seen.size() > max_assemblies)
      fail(ErrorKind::BoundViolation, "assembly closure exceeded the bound");
    Configuration cur = queue.front();
    queue.pop();
    auto succ = atam_step(sys, cur);
    if (succ.empty()) {
      out.terminal.push_back(cur);
      continue;
    }
    for (auto& s : succ) {
      if (seen.insert(s.overrides()).second) queue.push(std::move(s));
    }
  }
  out.explored = seen.size();
  return out;
}

const std::vector<ZooEntry>& zoo_entries() {
  static const std::vector<ZooEntry> entries = {
      {"ulam", "freezing", [] { return ulam(); }},
      {"threshold2", "freezing", [] { return threshold_growth_2d(2); }},
      {"life-without-death", "freezing", [] { return life_without_death(); }},
      {"sir", "freezing", [] { return sir(); }},
      {"vertical-min", "freezing", [] { return vertical_min(); }},
      {"max1d", "freezing",
       [] {
         Alphabet alpha({"0", "1"});
         return CellularAutomaton::from_local_rule(
             alpha, line_neighborhood(-1, 1),
             [](const std::vector<StateId>& t) -> StateId {
               return std::max({t[0], t[1], t[2]});
             },
             "max1d");
       }},
      {"threshold1d", "freezing",
       [] {
         // 1D two-neighbor threshold growth.
         Alphabet alpha({"0", "1"});
         return CellularAutomaton::from_local_rule(
             alpha, line_neighborhood(-1, 1),
             [](const std::vector<StateId>& t) -> StateId {
               if (t[1] == 1) return 1;
               return (t[0] == 1 && t[2] == 1) ? 1 : 0;
             },
             "threshold1d");
       }},
      {"identity1d", "freezing",
       [] {
         Alphabet alpha({"0", "1"});
         return CellularAutomaton::from_local_rule(
             alpha, line_neighborhood(-1, 1),
             [](const std::vector<StateId>& t) -> StateId { return t[1]; },
             "identity1d");
       }},
      {"flip3", "boundedChange",
       [] {
         // Nilpotent but not freezing: output 1 over a 0, else 2.
         Alphabet alpha({"0", "1", "2"});
         return CellularAutomaton::from_local_rule(
             alpha, line_neighborhood(0, 1),
             [](const std::vector<StateId>& t) -> StateId {
               return t[1] == 0 ? 1 : 2;
             },
             "flip3");
       }},
      {"mirror-compare", "none", [] { return mirror_compare_rule(1); }},
      {"atam-toy", "freezing", [] { return atam_to_ca(directed_toy_atam()); }},
      {"lift-max1d", "freezing", [] { return line_lift(zoo_build("max1d")); }},
  };
  return entries;
}

CellularAutomaton zoo_build(const std::string& name) {
  for (const auto& e : zoo_entries())
    if (e.name == name) return e.build();
  fail(ErrorKind::Format, "unknown zoo rule: " + name);
}

} // namespace fca
