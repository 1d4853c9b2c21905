#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/engine.hpp"

namespace fca {

// All ordered pairs (q, q') with q != q' such that some neighborhood context
// maps center q to q'.
struct StateChangeRelation {
  std::set<std::pair<StateId, StateId>> arcs;
  bool has(StateId a, StateId b) const { return arcs.count({a, b}) > 0; }
};

StateChangeRelation state_change_relation(const CellularAutomaton& ca);

struct Freezing {
  // Reflexive-transitive closure of the change relation: (higher, lower)
  // comparabilities of the witnessing order.
  std::vector<std::pair<StateId, StateId>> comparabilities;
};
struct NotFreezing {
  std::vector<StateId> cycle; // length >= 2, consecutive pairs are arcs
};
using FreezingOrder = std::variant<Freezing, NotFreezing>;

FreezingOrder check_freezing(const CellularAutomaton& ca);
bool is_freezing(const CellularAutomaton& ca);

struct ChangeProfile {
  std::int64_t max_changes_observed = 0;
  std::map<Coord, std::int64_t> per_cell;
  std::int64_t horizon = 0;
  std::int64_t sample_count = 0;
};

ChangeProfile change_profile(const CellularAutomaton& ca,
                             const std::vector<Configuration>& configs,
                             std::int64_t window_radius, std::int64_t horizon);

// De Bruijn graph of a 1D rule: vertices are words of length 2r, one edge per
// transition-table entry, labeled by the entry's output. An edge is
// "consistent" when its label equals the center symbol of the spelled word,
// so circuits of consistent edges spell spatially periodic fixed points.
struct DeBruijnGraph {
  std::int64_t r = 1;
  std::size_t n_states = 0;
  std::size_t vertex_count = 0;
  struct Edge {
    std::size_t from;
    std::size_t to;
    StateId label;
    bool consistent;
  };
  std::vector<Edge> edges;
};

DeBruijnGraph build_debruijn(const CellularAutomaton& ca);

struct AtLeastTwo {
  std::vector<Configuration> witnesses; // each verified: step(c) == c
};
struct ExactlyOneUniform {
  StateId state;
};
struct NoneFound {};
using FixedPointCensus = std::variant<AtLeastTwo, ExactlyOneUniform, NoneFound>;

FixedPointCensus census_fixed_points(const CellularAutomaton& ca);

enum class ConvergenceCertificate { None, Freezing, AssumedConvergent };

struct Nilpotent {};
struct NotNilpotent {
  std::vector<Configuration> witnesses;
};
using NilpotencyVerdict = std::variant<Nilpotent, NotNilpotent>;

// Valid only for convergent rules: nilpotency is equivalent to having a
// single fixed point. Refuses to answer without a certificate; a Freezing
// certificate is re-verified.
NilpotencyVerdict decide_nilpotency_1d(const CellularAutomaton& ca,
                                       ConvergenceCertificate certificate);

// Product with a flipping bit layer that freezes on the spreading state:
// nilpotent iff the input is, non-convergent otherwise.
CellularAutomaton lift_spreading_product(const CellularAutomaton& ca,
                                         StateId spreading);

bool is_spreading_state(const CellularAutomaton& ca, StateId s);

// Groups a 1D rule into blocks of size b: alphabet Q^b, radius ceil(r/b).
CellularAutomaton group_blocks(const CellularAutomaton& ca, std::int64_t b);

// Packs/unpacks block states of a grouped configuration.
Configuration group_configuration(const CellularAutomaton& ca, std::int64_t b,
                                  const Configuration& c);

// Limit of a 1D radius-1 orbit on [z, z'] from exact per-endpoint change
// counts: simulate until both endpoints have used up their changes, then
// k*(z'-z) more steps; the segment is then the limit.
std::vector<StateId> limit_segment_with_counts(
    const CellularAutomaton& ca, const Configuration& c, std::int64_t z,
    std::int64_t z_prime, std::int64_t lambda_z, std::int64_t lambda_z_prime,
    std::int64_t k, std::int64_t hard_cap = 1 << 20);

} // namespace fca
