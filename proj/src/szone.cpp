#include "fca/szone.hpp"

#include <algorithm>
#include <sstream>

namespace fca {

namespace {
const char* kMarkerName[4] = {"l", "r", "<", ">"};
}

StateId SZoneRule::zone(StateId new_state, StateId old_state, Marker m) const {
  return static_cast<StateId>(first_zone_ +
                              (static_cast<std::size_t>(new_state) * inner_n_ +
                               old_state) *
                                  4 +
                              static_cast<std::size_t>(m));
}

StateId SZoneRule::zone_new(StateId s) const {
  return static_cast<StateId>((s - first_zone_) / 4 / inner_n_);
}
StateId SZoneRule::zone_old(StateId s) const {
  return static_cast<StateId>((s - first_zone_) / 4 % inner_n_);
}
SZoneRule::Marker SZoneRule::zone_marker(StateId s) const {
  return static_cast<Marker>((s - first_zone_) % 4);
}

StateId SZoneRule::local_rule(StateId x, StateId y, StateId z) const {
  const StateId e = error_;
  if (x == e || y == e || z == e) return e;
  if (erase_state_) {
    for (StateId s : {x, y, z})
      if (is_zone(s) &&
          (zone_new(s) == *erase_state_ || zone_old(s) == *erase_state_))
        return e;
  }
  if (y == blank_ || y == blank_plus_) return blank_;

  // y is a zone cell from here on.
  const auto marker = zone_marker(y);
  const StateId p = zone_new(y), q = zone_old(y);
  auto forbidden = [&](StateId a, StateId b) {
    // Left-to-right adjacent zone pairs that cannot occur in a valid orbit.
    if (!is_zone(a) || !is_zone(b)) return false;
    const auto ma = zone_marker(a), mb = zone_marker(b);
    if (ma == kRight && mb == kLeft) return true;
    if (ma == kLeft && mb == kRight) return true;
    if ((ma == kHeadLeft || ma == kHeadRight) &&
        (mb == kHeadLeft || mb == kHeadRight))
      return true;
    if (ma == kRight && (mb == kHeadLeft || mb == kHeadRight)) return true;
    if ((ma == kHeadLeft || ma == kHeadRight) && mb == kLeft) return true;
    return false;
  };
  if (forbidden(x, y) || forbidden(y, z)) return e;

  const bool x_blank = (x == blank_ || x == blank_plus_);
  const bool z_blank = (z == blank_ || z == blank_plus_);
  // The head of a single-cell zone disappears.
  if (x_blank && z_blank) return zone(p, q, kRight);

  switch (marker) {
    case kLeft: {
      if (is_zone(z) && zone_marker(z) == kHeadLeft) {
        // Head arrives moving left.
        if (x == blank_ || (is_zone(x) && zone_marker(x) == kLeft))
          return zone(p, q, kHeadLeft);
        return e;
      }
      if (is_zone(z) && zone_marker(z) == kHeadRight) {
        // Head departs to the right: the leftmost cell dies, interior cells
        // just stay behind it.
        if (x == blank_) return blank_plus_;
        return zone(p, q, kLeft);
      }
      return zone(p, q, kLeft);
    }
    case kRight: {
      if (is_zone(x) && zone_marker(x) == kHeadRight) {
        if (is_zone(z) && zone_marker(z) == kRight)
          // Head arrives applying one inner step. The head's first layer
          // carries the driving value of the cell it came from; the fresh
          // value lands in the second slot and moves up front when the head
          // departs (the swap on departure).
          return zone(p, inner_.apply({zone_new(x), p, zone_new(z)}),
                      kHeadRight);
        if (z == blank_) return zone(p, q, kHeadRight); // right end, no update
        return e;
      }
      if (is_zone(x) && zone_marker(x) == kHeadLeft) {
        // Head departs to the left: the rightmost cell dies.
        if (z == blank_) return blank_plus_;
        return zone(p, q, kRight);
      }
      return zone(p, q, kRight);
    }
    case kHeadRight: {
      if (x == blank_) {
        if (is_zone(z) && zone_marker(z) == kRight) return zone(q, p, kLeft);
        return e;
      }
      if (is_zone(x) && zone_marker(x) == kLeft) {
        // A rightward head departs swapped, putting the fresh value up
        // front; at the right end it turns around with its layers as they
        // are (it never applied the inner map there).
        if (is_zone(z) && zone_marker(z) == kRight) return zone(q, p, kLeft);
        if (z == blank_) return zone(p, q, kHeadLeft);
        return e;
      }
      return e;
    }
    case kHeadLeft: {
      if (x == blank_) {
        if (is_zone(z) && zone_marker(z) == kRight)
          return zone(p, q, kHeadRight); // bounce at the left end
        return e;
      }
      if (is_zone(x) && zone_marker(x) == kLeft) {
        if (is_zone(z) && zone_marker(z) == kRight) return zone(p, q, kRight);
        if (z == blank_) return zone(p, q, kRight);
        return e;
      }
      return e;
    }
  }
  return e;
}

void SZoneRule::construct() {
  if (inner_.dim() != 1 || inner_.radius() != 1)
    fail(ErrorKind::WrongRadius,
         "the shrinking-zone wrapper needs a 1D radius-1 rule; group first");
  inner_n_ = inner_.alphabet().size();
  std::vector<std::string> names = {"b", "b+", "e"};
  for (std::size_t a = 0; a < inner_n_; ++a)
    for (std::size_t b = 0; b < inner_n_; ++b)
      for (int m = 0; m < 4; ++m)
        names.push_back(inner_.alphabet().name(static_cast<StateId>(a)) + "~" +
                        inner_.alphabet().name(static_cast<StateId>(b)) + "~" +
                        kMarkerName[m]);
  blank_ = 0;
  blank_plus_ = 1;
  error_ = 2;
  first_zone_ = 3;
  auto rule = [this](const std::vector<StateId>& t) -> StateId {
    return local_rule(t[0], t[1], t[2]);
  };
  ca_ = CellularAutomaton::from_local_rule(Alphabet(names),
                                           line_neighborhood(-1, 1), rule,
                                           "szone(" + inner_.name() + ")");
}

SZoneRule build_szone(const CellularAutomaton& inner) {
  SZoneRule rule;
  rule.inner_ = inner;
  rule.construct();
  return rule;
}

SZoneRule build_szone_erasing(const CellularAutomaton& inner, StateId spreading) {
  // The erasing variant only makes sense over a spreading inner state.
  {
    const std::size_t n = inner.alphabet().size();
    std::vector<StateId> tuple(inner.neighborhood().size(), 0);
    for (std::size_t idx = 0; idx < inner.table().size(); ++idx) {
      bool has = false;
      for (StateId t : tuple)
        if (t == spreading) has = true;
      if (has && inner.table()[idx] != spreading)
        fail(ErrorKind::NotSpreading,
             "state " + inner.alphabet().name(spreading) + " does not spread");
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (++tuple[j] < n) break;
        tuple[j] = 0;
      }
    }
  }
  SZoneRule rule;
  rule.inner_ = inner;
  rule.erase_state_ = spreading;
  rule.construct();
  return rule;
}

LambdaInput make_lambda(const SZoneRule& szone, std::int64_t n,
                        const Configuration& c, const Configuration& c_prime) {
  if (n < 1) fail(ErrorKind::Format, "zone size parameter must be >= 1");
  if (c.dim() != 1 || c_prime.dim() != 1)
    fail(ErrorKind::WrongDimension, "zone seeds are 1D");
  LambdaInput input;
  input.n = n;
  input.inner_first = c;
  input.inner_second = c_prime;
  input.realized = Configuration::uniform(1, szone.blank());
  input.realized.set({-n}, szone.zone(c.at({-n}), c_prime.at({-n}),
                                      SZoneRule::kHeadRight));
  for (std::int64_t z = -n + 1; z <= n; ++z)
    input.realized.set({z},
                       szone.zone(c.at({z}), c_prime.at({z}), SZoneRule::kRight));
  return input;
}

std::int64_t pass_time(std::int64_t n, std::int64_t t) {
  std::int64_t total = 0;
  for (std::int64_t i = n - t + 1; i <= n; ++i) total += 4 * i + 1;
  return total;
}

namespace {

// The zone shape for any n >= 0; n = 0 is the single head cell that the last
// pass leaves at the origin.
Configuration lambda_shape(const SZoneRule& szone, std::int64_t n,
                           const Configuration& c, const Configuration& c_prime) {
  Configuration out = Configuration::uniform(1, szone.blank());
  out.set({-n}, szone.zone(c.at({-n}), c_prime.at({-n}), SZoneRule::kHeadRight));
  for (std::int64_t z = -n + 1; z <= n; ++z)
    out.set({z}, szone.zone(c.at({z}), c_prime.at({z}), SZoneRule::kRight));
  return out;
}

} // namespace

TimingCheck verify_timing(const SZoneRule& szone, const Configuration& c,
                          std::int64_t n, std::int64_t t) {
  if (!(n >= t && t >= 1))
    fail(ErrorKind::Format, "need n >= t >= 1");
  TimingCheck check;
  check.pass_time = pass_time(n, t);

  // Inner orbit values on the window, for both checks.
  auto inner_orbit = simulate(szone.inner(), c, t);

  LambdaInput lambda = make_lambda(szone, n, c, c);
  Configuration cur = lambda.realized;
  std::ostringstream msg;
  for (std::int64_t step_no = 0; step_no <= check.pass_time; ++step_no) {
    if (step_no > 0) cur = step(szone.ca(), cur);
    // Intermediate form: every strict-interior cell is blank or a pair of
    // inner states at most one time step apart.
    for (std::int64_t z = -n + 1; z <= n - 1; ++z) {
      const StateId s = cur.at({z});
      if (s == szone.blank() || s == szone.blank_decay()) continue;
      if (!szone.is_zone(s)) {
        msg.str("");
        msg << "cell " << z << " at step " << step_no << " left the zone alphabet";
        check.mismatches.push_back(msg.str());
        continue;
      }
      bool matched = false;
      for (std::int64_t t1 = 0; t1 <= t && !matched; ++t1)
        for (std::int64_t t2 = std::max<std::int64_t>(0, t1 - 1);
             t2 <= std::min(t, t1 + 1) && !matched; ++t2) {
          if (szone.zone_new(s) ==
                  inner_orbit[static_cast<std::size_t>(t1)].at({z}) &&
              szone.zone_old(s) ==
                  inner_orbit[static_cast<std::size_t>(t2)].at({z}))
            matched = true;
        }
      if (!matched) {
        msg.str("");
        msg << "cell " << z << " at step " << step_no
            << " holds a pair outside the inner orbit window";
        check.mismatches.push_back(msg.str());
      }
    }
  }

  // Main identity: after t full passes the window looks like the zone seeded
  // at n-t over the advanced inner pair.
  Configuration expected =
      lambda_shape(szone, n - t, inner_orbit[static_cast<std::size_t>(t)],
                   inner_orbit[static_cast<std::size_t>(t - 1)]);
  for (std::int64_t z = -(n - t); z <= n - t; ++z) {
    if (cur.at({z}) != expected.at({z})) {
      msg.str("");
      msg << "window cell " << z << " differs after " << check.pass_time
          << " steps";
      check.mismatches.push_back(msg.str());
    }
  }
  check.ok = check.mismatches.empty();
  return check;
}

} // namespace fca
