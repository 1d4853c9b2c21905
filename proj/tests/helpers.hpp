#pragma once

#include <random>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/engine.hpp"

namespace fca::testing {

inline CellularAutomaton identity1d(std::size_t n_states = 2) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_states; ++i) names.push_back(std::to_string(i));
  return CellularAutomaton::from_local_rule(
      Alphabet(names), line_neighborhood(-1, 1),
      [](const std::vector<StateId>& t) { return t[1]; }, "identity");
}

inline CellularAutomaton constant1d(StateId q, std::size_t n_states = 2) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_states; ++i) names.push_back(std::to_string(i));
  return CellularAutomaton::from_local_rule(
      Alphabet(names), line_neighborhood(-1, 1),
      [q](const std::vector<StateId>&) { return q; }, "constant");
}

// f(a, b) = a over offsets {-1, 0}: states shift right one cell per step.
inline CellularAutomaton shift_right() {
  return CellularAutomaton::from_local_rule(
      Alphabet({"0", "1"}), line_neighborhood(-1, 0),
      [](const std::vector<StateId>& t) { return t[0]; }, "shift");
}

inline CellularAutomaton max1d() {
  return CellularAutomaton::from_local_rule(
      Alphabet({"0", "1"}), line_neighborhood(-1, 1),
      [](const std::vector<StateId>& t) -> StateId {
        return std::max({t[0], t[1], t[2]});
      },
      "max1d");
}

// f(a, b) = max over offsets {-1, 0}: one-way freezing growth.
inline CellularAutomaton max_oneway() {
  return CellularAutomaton::from_local_rule(
      Alphabet({"0", "1"}), line_neighborhood(-1, 0),
      [](const std::vector<StateId>& t) -> StateId {
        return std::max(t[0], t[1]);
      },
      "max-oneway");
}

// The three-state nilpotent but non-freezing rule over offsets {0, 1}.
inline CellularAutomaton flip3() {
  return CellularAutomaton::from_local_rule(
      Alphabet({"0", "1", "2"}), line_neighborhood(0, 1),
      [](const std::vector<StateId>& t) -> StateId { return t[1] == 0 ? 1 : 2; },
      "flip3");
}

inline Pattern random_pattern(const CellularAutomaton& ca, std::int64_t radius,
                              std::mt19937_64& rng) {
  Pattern p(ca.dim(), radius);
  std::uniform_int_distribution<std::size_t> dist(0, ca.alphabet().size() - 1);
  for (auto& s : p.cells()) s = static_cast<StateId>(dist(rng));
  return p;
}

inline Configuration random_configuration(const CellularAutomaton& ca,
                                          std::int64_t radius, StateId background,
                                          std::mt19937_64& rng) {
  Configuration c = Configuration::uniform(ca.dim(), background);
  std::uniform_int_distribution<std::size_t> dist(0, ca.alphabet().size() - 1);
  for_each_in_ball(ca.dim(), radius, [&](const Coord& z) {
    c.set(z, static_cast<StateId>(dist(rng)));
  });
  return c;
}

// A random freezing table: pick a random total order and only allow outputs
// at or below the center.
inline CellularAutomaton random_freezing_rule(std::size_t n_states,
                                              std::mt19937_64& rng) {
  std::vector<StateId> order(n_states);
  for (std::size_t i = 0; i < n_states; ++i) order[i] = static_cast<StateId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> rank(n_states);
  for (std::size_t i = 0; i < n_states; ++i) rank[order[i]] = i;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_states; ++i) names.push_back(std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, n_states - 1);
  // Materialize a full random table first so the lambda is pure.
  const std::size_t entries = n_states * n_states * n_states;
  std::vector<StateId> outs(entries);
  std::vector<StateId> tuple(3, 0);
  for (std::size_t idx = 0; idx < entries; ++idx) {
    const StateId center = tuple[1];
    // Choose uniformly among states at or below the center in the order.
    std::vector<StateId> allowed;
    for (std::size_t q = 0; q < n_states; ++q)
      if (rank[q] <= rank[center]) allowed.push_back(static_cast<StateId>(q));
    outs[idx] = allowed[pick(rng) % allowed.size()];
    for (std::size_t j = 0; j < 3; ++j) {
      if (++tuple[j] < n_states) break;
      tuple[j] = 0;
    }
  }
  return CellularAutomaton(Alphabet(names), line_neighborhood(-1, 1), outs,
                           "random-freezing");
}

} // namespace fca::testing
