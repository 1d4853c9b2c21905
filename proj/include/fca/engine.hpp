#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"

namespace fca {

// One synchronous update. Exact on the periodic background and on every cell
// whose neighborhood touches an override; the result is canonical.
Configuration step(const CellularAutomaton& ca, const Configuration& c);

// [c, F(c), ..., F^t(c)].
std::vector<Configuration> simulate(const CellularAutomaton& ca,
                                    const Configuration& c, std::int64_t t);

// Pattern action: u of radius n + r maps to the radius-n image.
Pattern apply_to_pattern(const CellularAutomaton& ca, const Pattern& u);

// Does c agree with u on B(u.radius)?
bool in_cylinder(const Configuration& c, const Pattern& u);

struct Trace {
  std::vector<Coord> base;
  std::vector<std::vector<StateId>> rows; // rows[t][i] = F^t(c) at base[i]
  std::optional<std::int64_t> eventually_constant_at;
};

Trace trace(const CellularAutomaton& ca, const Configuration& c,
            const std::vector<Coord>& base, std::int64_t horizon);

enum class FreezeGuarantee {
  NotWitnessed,   // still changing too close to the horizon
  Observed,       // constant tail of length >= confirm_tail
  ExactMinimal,   // final state is invariant under the rule: exact tau(c,z)
};

struct FreezingReport {
  Coord cell;
  std::optional<std::int64_t> freezing_time;
  std::optional<StateId> limit_state;
  FreezeGuarantee guarantee = FreezeGuarantee::NotWitnessed;
};

FreezingReport freezing_report(const CellularAutomaton& ca,
                               const Configuration& c, const Coord& z,
                               std::int64_t horizon, std::int64_t confirm_tail);

// Positions of the window B(window_radius) that carry state q.
std::vector<Coord> chi(const Configuration& c, StateId q,
                       std::int64_t window_radius);

struct LimitWindow {
  Pattern limit;                       // state at the horizon per cell
  std::vector<FreezingReport> reports; // same order as B(radius) iteration
};

LimitWindow limit_window(const CellularAutomaton& ca, const Configuration& c,
                         std::int64_t window_radius, std::int64_t horizon,
                         std::int64_t confirm_tail);

struct Reached {
  std::int64_t time = 0;
  Configuration witness;
};
struct Unknown {
  std::int64_t candidates_tried = 0;
};
using CyReachResult = std::variant<Reached, Unknown>;

// Bounded semi-decision of cylinder reachability: does some c in [u] reach
// [v]? Candidates are u extended by every assignment of an annulus of width
// <= extension_radius over each quiescent background state, tried in
// nondecreasing extension size. Every positive answer is re-verified by an
// independent simulation before being returned.
CyReachResult cyreach_bounded(const CellularAutomaton& ca, const Pattern& u,
                              const Pattern& v, std::int64_t t_max,
                              std::int64_t extension_radius,
                              const std::vector<StateId>& backgrounds);

} // namespace fca
