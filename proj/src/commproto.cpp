#include "fca/commproto.hpp"

#include <algorithm>
#include <cmath>

#include "fca/engine.hpp"

namespace fca {

namespace {

std::int64_t ceil_log2(std::int64_t v) {
  std::int64_t bits = 0;
  std::int64_t cap = 1;
  while (cap < v) {
    cap *= 2;
    ++bits;
  }
  return bits;
}

// Positions of B(rn) split by the first coordinate, each in box order.
void split_positions(int dim, std::int64_t rn, std::vector<Coord>* alice,
                     std::vector<Coord>* bob) {
  for_each_in_ball(dim, rn, [&](const Coord& z) {
    if (z[0] <= 0)
      alice->push_back(z);
    else
      bob->push_back(z);
  });
}

} // namespace

SplitInstance SplitInstance::from_pattern(const CellularAutomaton& ca,
                                          std::int64_t n, const Pattern& input) {
  if (input.radius() != ca.radius() * n)
    fail(ErrorKind::RadiusTooSmall, "split instance needs a radius r*n pattern");
  SplitInstance inst;
  inst.n = n;
  std::vector<Coord> a_cells, b_cells;
  split_positions(ca.dim(), ca.radius() * n, &a_cells, &b_cells);
  for (const auto& z : a_cells) inst.alice.push_back(input.at(z));
  for (const auto& z : b_cells) inst.bob.push_back(input.at(z));
  return inst;
}

Pattern SplitInstance::join(const CellularAutomaton& ca) const {
  const std::int64_t rn = ca.radius() * n;
  std::vector<Coord> a_cells, b_cells;
  split_positions(ca.dim(), rn, &a_cells, &b_cells);
  if (a_cells.size() != alice.size() || b_cells.size() != bob.size())
    fail(ErrorKind::Format, "split instance does not match the rule's geometry");
  Pattern p(ca.dim(), rn);
  for (std::size_t i = 0; i < a_cells.size(); ++i) p.set(a_cells[i], alice[i]);
  for (std::size_t i = 0; i < b_cells.size(); ++i) p.set(b_cells[i], bob[i]);
  return p;
}

ProtocolTranscript run_trivial_protocol(const CellularAutomaton& ca,
                                        const SplitInstance& inst) {
  ProtocolTranscript tr;
  const std::int64_t state_bits = ceil_log2(static_cast<std::int64_t>(ca.alphabet().size()));
  tr.rounds.push_back({Party::Alice,
                       static_cast<std::int64_t>(inst.alice.size()) * state_bits,
                       RoundTag::Init, 0});
  Pattern joined = inst.join(ca);
  tr.answer = predict_naive(ca, make_instance(ca, inst.n, joined, 0));
  for (const auto& r : tr.rounds) tr.total_bits += r.bits;
  return tr;
}

namespace {

// One party's view of the diff-report protocol. The party owns the cells of
// its half and assumes the other side's boundary zone frozen while it
// simulates; everything else beyond the pattern is irrelevant because the
// needed light cone shrinks as time advances.
struct PartyState {
  const CellularAutomaton* ca;
  std::vector<Coord> own_cells;    // this party's half of B(rn)
  std::vector<Coord> zone_own;     // own boundary zone
  std::vector<Coord> zone_other;   // the other party's boundary zone
  std::map<Coord, std::size_t> own_index;
  std::vector<StateId> own;        // states of own_cells at sync time
  std::map<Coord, StateId> other_zone; // believed other-zone states
  std::int64_t sync_time = 0;

  StateId lookup(const std::vector<StateId>& own_states, const Coord& z) const {
    auto it = own_index.find(z);
    if (it != own_index.end()) return own_states[it->second];
    auto jt = other_zone.find(z);
    if (jt != other_zone.end()) return jt->second;
    // Outside the tracked region: value is irrelevant for cells whose cone
    // stays inside; any fixed filler keeps the run deterministic.
    return 0;
  }

  // Advances own_states one step under the frozen-other-zone assumption.
  std::vector<StateId> advance(const std::vector<StateId>& own_states) const {
    const auto& offsets = ca->neighborhood().offsets();
    std::vector<StateId> next(own_states.size());
    std::vector<StateId> tuple(offsets.size());
    for (std::size_t i = 0; i < own_cells.size(); ++i) {
      for (std::size_t j = 0; j < offsets.size(); ++j)
        tuple[j] = lookup(own_states, add(own_cells[i], offsets[j]));
      next[i] = ca->apply(tuple);
    }
    return next;
  }
};

} // namespace

ProtocolTranscript run_diffreport_protocol(const CellularAutomaton& ca,
                                           const SplitInstance& inst,
                                           std::int64_t k,
                                           DiffReportDiagnostics* diag) {
  const int d = ca.dim();
  const std::int64_t r = ca.radius();
  const std::int64_t n = inst.n;
  const std::int64_t rn = r * n;
  const std::size_t q_bits =
      static_cast<std::size_t>(ceil_log2(static_cast<std::int64_t>(ca.alphabet().size())));
  const std::int64_t counter_bits = ceil_log2(n + 1);
  const std::int64_t diff_cost_per_change =
      static_cast<std::int64_t>(q_bits) + (d + 1) * ceil_log2(n);

  PartyState alice, bob;
  alice.ca = bob.ca = &ca;
  split_positions(d, rn, &alice.own_cells, &bob.own_cells);
  for (const auto& z : alice.own_cells)
    if (z[0] >= -r + 1) alice.zone_own.push_back(z);
  for (const auto& z : bob.own_cells)
    if (z[0] <= r) bob.zone_own.push_back(z);
  alice.zone_other = bob.zone_own;
  bob.zone_other = alice.zone_own;
  for (std::size_t i = 0; i < alice.own_cells.size(); ++i)
    alice.own_index[alice.own_cells[i]] = i;
  for (std::size_t i = 0; i < bob.own_cells.size(); ++i)
    bob.own_index[bob.own_cells[i]] = i;
  alice.own = inst.alice;
  bob.own = inst.bob;

  ProtocolTranscript tr;
  auto send = [&](Party p, std::int64_t bits, RoundTag tag, std::int64_t changes = 0) {
    tr.rounds.push_back({p, bits, tag, changes});
  };

  // Init: exchange the boundary zone contents.
  for (const auto& z : alice.zone_own)
    bob.other_zone[z] = alice.own[alice.own_index.at(z)];
  for (const auto& z : bob.zone_own)
    alice.other_zone[z] = bob.own[bob.own_index.at(z)];
  send(Party::Alice,
       static_cast<std::int64_t>(alice.zone_own.size() * q_bits), RoundTag::Init);
  send(Party::Bob, static_cast<std::int64_t>(bob.zone_own.size() * q_bits),
       RoundTag::Init);

  if (diag) {
    diag->syncs.push_back({0, alice.own, bob.own});
  }

  // Change at time t means state(t) != state(t-1) in the party's own zone.
  struct ScanResult {
    std::int64_t first_change; // n when none up to n
    std::vector<std::vector<StateId>> history; // states at sync+1.., inclusive
    std::vector<std::pair<Coord, StateId>> changes; // at first_change
  };
  auto scan = [&](const PartyState& ps) {
    ScanResult res;
    res.first_change = n;
    std::vector<StateId> cur = ps.own;
    for (std::int64_t t = ps.sync_time + 1; t <= n; ++t) {
      std::vector<StateId> next = ps.advance(cur);
      res.history.push_back(next);
      bool changed = false;
      for (const auto& z : ps.zone_own) {
        const std::size_t i = ps.own_index.at(z);
        if (next[i] != cur[i]) {
          changed = true;
          res.changes.push_back({z, next[i]});
        }
      }
      cur = std::move(next);
      if (changed) {
        res.first_change = t;
        return res;
      }
      res.changes.clear();
    }
    return res;
  };

  std::map<Coord, std::int64_t> zone_change_counts;
  auto count_changes = [&](const std::vector<std::pair<Coord, StateId>>& changes) {
    for (const auto& [z, s] : changes) {
      if (++zone_change_counts[z] > k)
        fail(ErrorKind::BoundViolation,
             "a boundary-zone cell changed more often than the declared bound");
    }
  };

  while (alice.sync_time < n) {
    ScanResult a = scan(alice);
    ScanResult b = scan(bob);
    send(Party::Alice, counter_bits, RoundTag::Counter);
    send(Party::Bob, counter_bits, RoundTag::Counter);
    const std::int64_t tm = std::min(a.first_change, b.first_change);
    if (tm >= n) {
      // No further boundary-zone changes before the horizon: both parties
      // finish locally.
      alice.own = a.history.empty() ? alice.own : a.history.back();
      alice.sync_time = n;
      bob.sync_time = n;
      break;
    }
    // Roll both parties to tm.
    const std::size_t steps_a = static_cast<std::size_t>(tm - alice.sync_time);
    const std::size_t steps_b = static_cast<std::size_t>(tm - bob.sync_time);
    if (steps_a > 0) alice.own = a.history[steps_a - 1];
    if (steps_b > 0) bob.own = b.history[steps_b - 1];
    alice.sync_time = bob.sync_time = tm;
    // Earliest changers report; Alice before Bob on ties.
    if (a.first_change == tm) {
      count_changes(a.changes);
      send(Party::Alice,
           static_cast<std::int64_t>(a.changes.size()) * diff_cost_per_change,
           RoundTag::DiffReport, static_cast<std::int64_t>(a.changes.size()));
      for (const auto& [z, s] : a.changes) bob.other_zone[z] = s;
    }
    if (b.first_change == tm) {
      count_changes(b.changes);
      send(Party::Bob,
           static_cast<std::int64_t>(b.changes.size()) * diff_cost_per_change,
           RoundTag::DiffReport, static_cast<std::int64_t>(b.changes.size()));
      for (const auto& [z, s] : b.changes) alice.other_zone[z] = s;
    }
    if (diag) diag->syncs.push_back({tm, alice.own, bob.own});
  }

  tr.answer = alice.own[alice.own_index.at(origin(d))];
  for (const auto& round : tr.rounds) tr.total_bits += round.bits;
  return tr;
}

CellularAutomaton mirror_compare_rule(int dim) {
  if (dim < 1) fail(ErrorKind::WrongDimension, "dimension must be >= 1");
  // direction x bit: 0..1 right-movers, 2..3 left-movers, 4..5 testers.
  Alphabet alpha({"r0", "r1", "l0", "l1", "t0", "t1"});
  Neighborhood nb = ball_neighborhood(dim, 1);
  std::size_t center = 0, from_left = 0, from_right = 0;
  const auto& offs = nb.offsets();
  for (std::size_t j = 0; j < offs.size(); ++j) {
    bool is_center = true, is_left = true, is_right = true;
    for (int a = 0; a < dim; ++a) {
      const std::int64_t v = offs[j][static_cast<std::size_t>(a)];
      if (v != 0) is_center = false;
      if (v != (a == 0 ? -1 : 0)) is_left = false;
      if (v != (a == 0 ? 1 : 0)) is_right = false;
    }
    if (is_center) center = j;
    if (is_left) from_left = j;
    if (is_right) from_right = j;
  }
  auto bit = [](StateId s) { return s % 2; };
  auto rule = [=](const std::vector<StateId>& t) -> StateId {
    const StateId c = t[center];
    if (c / 2 == 0) return t[from_left];  // right-mover copies from the left
    if (c / 2 == 1) return t[from_right]; // left-mover copies from the right
    for (StateId s : t)
      if (s == 4) return 4; // tester 0 anywhere nearby is absorbing
    if (bit(t[from_left]) != bit(t[from_right])) return 4;
    return 5;
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule, "mirror-compare");
}

FoolingSetResult check_fooling_set(const CellularAutomaton& ca, std::int64_t n,
                                   const std::vector<SplitInstance>& candidates) {
  if (candidates.empty()) fail(ErrorKind::Format, "need at least one candidate");
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (candidates[i].alice == candidates[j].alice &&
          candidates[i].bob == candidates[j].bob)
        fail(ErrorKind::Format, "candidates must be pairwise distinct");

  const std::size_t m = candidates.size();
  std::vector<std::vector<StateId>> value(m, std::vector<StateId>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      SplitInstance cross;
      cross.n = n;
      cross.alice = candidates[i].alice;
      cross.bob = candidates[j].bob;
      value[i][j] =
          predict_naive(ca, make_instance(ca, n, cross.join(ca), 0));
    }
  }
  const StateId diag = value[0][0];
  for (std::size_t i = 1; i < m; ++i)
    if (value[i][i] != diag)
      return FoolingCounterexample{i, i, "diagonal values differ"};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (value[i][j] == diag && value[j][i] == diag)
        return FoolingCounterexample{
            i, j, "both cross evaluations equal the diagonal value"};
  return FoolingSetVerified{m};
}

} // namespace fca
