#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/engine.hpp"

namespace fca {

// Shrinking-zone wrapper of a 1D radius-1 rule: a bouncing head applies one
// inner step per left-to-right pass and shrinks its zone by one cell per
// bounce, so every orbit converges while single cells change unboundedly
// often across inputs.
class SZoneRule {
public:
  const CellularAutomaton& ca() const { return ca_; }
  const CellularAutomaton& inner() const { return inner_; }
  bool erases_state() const { return erase_state_.has_value(); }
  std::optional<StateId> erased_inner_state() const { return erase_state_; }

  StateId blank() const { return blank_; }
  StateId blank_decay() const { return blank_plus_; }
  StateId error_state() const { return error_; }

  // Zone markers: 0 = left-of-head, 1 = right-of-head, 2 = head moving left,
  // 3 = head moving right.
  enum Marker { kLeft = 0, kRight = 1, kHeadLeft = 2, kHeadRight = 3 };

  StateId zone(StateId new_state, StateId old_state, Marker m) const;
  bool is_zone(StateId s) const { return s >= first_zone_; }
  StateId zone_new(StateId s) const;
  StateId zone_old(StateId s) const;
  Marker zone_marker(StateId s) const;

  friend SZoneRule build_szone(const CellularAutomaton& inner);
  friend SZoneRule build_szone_erasing(const CellularAutomaton& inner,
                                       StateId spreading);

private:
  CellularAutomaton inner_;
  CellularAutomaton ca_;
  std::optional<StateId> erase_state_;
  StateId blank_ = 0, blank_plus_ = 1, error_ = 2;
  StateId first_zone_ = 3;
  std::size_t inner_n_ = 0;

  void construct();
  StateId local_rule(StateId x, StateId y, StateId z) const;
};

SZoneRule build_szone(const CellularAutomaton& inner);

// Variant that additionally erases (spreads the error state over) any zone
// cell carrying the given inner state on either layer: convergent always,
// bounded-change exactly when the inner rule is nilpotent.
SZoneRule build_szone_erasing(const CellularAutomaton& inner, StateId spreading);

struct LambdaInput {
  std::int64_t n = 1;
  Configuration inner_first;   // new-state layer seed
  Configuration inner_second;  // old-state layer seed
  Configuration realized;      // over the zone alphabet
};

// The standard seeded zone: head at -n, zone cells on [-n, n], blank outside.
LambdaInput make_lambda(const SZoneRule& szone, std::int64_t n,
                        const Configuration& c, const Configuration& c_prime);

struct TimingCheck {
  bool ok = false;
  std::int64_t pass_time = 0; // steps consumed by t full passes
  std::vector<std::string> mismatches;
};

// Verifies the pass schedule: after sum_{i=n-t+1..n} (4i+1) steps the zone
// seeded at size parameter n looks like the zone seeded at n-t over
// (F^t(c), F^{t-1}(c)) on the window |z| <= n-t, and every intermediate zone
// cell holds a pair of inner states at most one time step apart.
TimingCheck verify_timing(const SZoneRule& szone, const Configuration& c,
                          std::int64_t n, std::int64_t t);

// Steps consumed by t full passes from size parameter n.
std::int64_t pass_time(std::int64_t n, std::int64_t t);

} // namespace fca
