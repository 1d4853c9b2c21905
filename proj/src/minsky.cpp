#include "fca/minsky.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fca {

namespace {

bool valid_machine_state_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  if (name == "b" || name == "w") return false;
  if (name[0] == 'i' && name.size() > 1 &&
      std::all_of(name.begin() + 1, name.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  return true;
}

std::string delta_char(int d) {
  switch (d) {
    case -1: return "-";
    case 0: return "0";
    case 1: return "+";
  }
  fail(ErrorKind::Format, "delta out of range");
}

} // namespace

MinskyMachine::MinskyMachine(
    std::vector<std::string> states, const std::string& initial,
    const std::string& halting, int counters,
    std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>>
        rules)
    : states_(std::move(states)), k_(counters), rules_(std::move(rules)) {
  if (k_ < 1) fail(ErrorKind::Format, "machine needs at least one counter");
  if (states_.empty()) fail(ErrorKind::Format, "machine needs at least one state");
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!valid_machine_state_name(states_[i]))
      fail(ErrorKind::Format, "invalid machine state name: " + states_[i]);
    for (std::size_t j = i + 1; j < states_.size(); ++j)
      if (states_[i] == states_[j])
        fail(ErrorKind::Format, "duplicate machine state: " + states_[i]);
  }
  initial_ = state_id(initial);
  halting_ = state_id(halting);

  const std::size_t flag_patterns = static_cast<std::size_t>(1) << k_;
  for (int q = 0; q < static_cast<int>(states_.size()); ++q) {
    for (std::size_t mask = 0; mask < flag_patterns; ++mask) {
      std::vector<int> flags(static_cast<std::size_t>(k_));
      for (int i = 0; i < k_; ++i) flags[static_cast<std::size_t>(i)] = (mask >> i) & 1;
      auto it = rules_.find({q, flags});
      if (q == halting_) {
        const std::pair<int, std::vector<int>> stay{halting_,
                                                    std::vector<int>(k_, 0)};
        if (it == rules_.end())
          rules_[{q, flags}] = stay;
        else if (it->second != stay)
          fail(ErrorKind::Format, "halting state must map to itself with zero deltas");
      } else if (it == rules_.end()) {
        std::string f;
        for (int v : flags) f += std::to_string(v);
        fail(ErrorKind::Format,
             "transition map not total: missing rule for " + states_[q] + " " + f);
      }
    }
  }
  for (auto& [key, val] : rules_) {
    if (key.first < 0 || key.first >= static_cast<int>(states_.size()))
      fail(ErrorKind::Format, "rule references unknown state");
    if (static_cast<int>(key.second.size()) != k_ ||
        static_cast<int>(val.second.size()) != k_)
      fail(ErrorKind::Format, "rule arity does not match the counter count");
    for (int fl : key.second)
      if (fl != 0 && fl != 1) fail(ErrorKind::Format, "zero flags must be 0 or 1");
    for (int d : val.second)
      if (d < -1 || d > 1) fail(ErrorKind::Format, "deltas must be in {-1,0,1}");
    if (val.first < 0 || val.first >= static_cast<int>(states_.size()))
      fail(ErrorKind::Format, "rule targets unknown state");
  }
}

int MinskyMachine::state_id(const std::string& name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return static_cast<int>(i);
  fail(ErrorKind::Format, "unknown machine state: " + name);
}

std::pair<int, std::vector<int>> MinskyMachine::transition(
    int state, const std::vector<int>& flags) const {
  auto it = rules_.find({state, flags});
  if (it == rules_.end()) fail(ErrorKind::Internal, "transition lookup failed");
  return it->second;
}

MinskyConfig minsky_step(const MinskyMachine& m, const MinskyConfig& cfg) {
  std::vector<int> flags(static_cast<std::size_t>(m.counters()));
  for (int i = 0; i < m.counters(); ++i)
    flags[static_cast<std::size_t>(i)] =
        cfg.counters[static_cast<std::size_t>(i)] > 0 ? 1 : 0;
  auto [q, deltas] = m.transition(cfg.state, flags);
  MinskyConfig next;
  next.state = q;
  next.counters = cfg.counters;
  for (int i = 0; i < m.counters(); ++i) {
    auto& v = next.counters[static_cast<std::size_t>(i)];
    v = std::max<std::int64_t>(0, v + deltas[static_cast<std::size_t>(i)]);
  }
  return next;
}

MinskyRunResult minsky_run(const MinskyMachine& m, const MinskyConfig& cfg,
                           std::int64_t t_max) {
  MinskyConfig cur = cfg;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    if (cur.state == m.halting()) return Halted{t};
    if (t == t_max) break;
    cur = minsky_step(m, cur);
  }
  return Running{cur};
}

// ---------------------------------------------------------------------------
// Compilation to the freezing CA.
//
// Counter symbols inside a cell's trace: 0 = '1' (running unary digit),
// 1/2/3 = the three end markers in firing order. A cell's trace spells one
// machine configuration: the control state, then per counter a run of '1's
// whose length is the counter value, closed by the marker sweep.
// ---------------------------------------------------------------------------

namespace {
constexpr int kRun = 0, kMarkLo = 1, kMarkMid = 2, kMarkHi = 3;

int marker_for_delta(int delta) {
  // The end-marker index whose sighting in the left column stops this run.
  return kMarkLo + (delta + 1);
}
} // namespace

CompiledMinskyCA::CompiledMinskyCA(const MinskyMachine& m)
    : machine_(m), k_(m.counters()), K_(3 * m.counters() + 3) {
  const std::size_t n_states = m.states().size();
  std::size_t pow3 = 1;
  for (int i = 0; i < k_; ++i) pow3 *= 3;
  std::size_t pow12 = 1;
  for (int i = 0; i < k_; ++i) pow12 *= 12;
  n_bare_ = n_states;
  n_control_ = n_states * pow3;
  n_counter_ = pow12;

  std::vector<std::string> names;
  names.push_back("b");
  names.push_back("w");
  first_countdown_ = 2;
  for (int i = 0; i <= K_; ++i) names.push_back("i" + std::to_string(i));
  first_bare_ = static_cast<StateId>(names.size());
  for (const auto& s : m.states()) names.push_back(s);
  first_control_ = static_cast<StateId>(names.size());
  for (std::size_t q = 0; q < n_states; ++q) {
    for (std::size_t d = 0; d < pow3; ++d) {
      std::string nm = m.states()[q] + "[";
      std::size_t rest = d;
      for (int i = 0; i < k_; ++i) {
        if (i) nm += ",";
        nm += delta_char(static_cast<int>(rest % 3) - 1);
        rest /= 3;
      }
      nm += "]";
      names.push_back(nm);
    }
  }
  first_counter_ = static_cast<StateId>(names.size());
  static const char* kSymName[4] = {"1", "<", "=", ">"};
  for (std::size_t d = 0; d < pow12; ++d) {
    std::string nm = "C[";
    std::size_t rest = d;
    for (int i = 0; i < k_; ++i) {
      if (i) nm += ",";
      nm += kSymName[rest % 12 / 3];
      nm += delta_char(static_cast<int>(rest % 3) - 1);
      rest /= 12;
    }
    nm += "]";
    names.push_back(nm);
  }

  blank_ = 0;
  wall_ = 1;
  halt_bare_ = static_cast<StateId>(first_bare_ + m.halting());

  Alphabet alpha(names);
  build_order();
  auto rule = [this](const std::vector<StateId>& t) -> StateId {
    return local_rule(t[0], t[1], t[2]);
  };
  ca_ = CellularAutomaton::from_local_rule(alpha, line_neighborhood(-1, 1), rule,
                                           "minsky");
}

StateId CompiledMinskyCA::countdown(int n) const {
  if (n < 0 || n > K_) fail(ErrorKind::Format, "countdown index out of range");
  return static_cast<StateId>(first_countdown_ + n);
}

StateId CompiledMinskyCA::bare(int q) const {
  return static_cast<StateId>(first_bare_ + q);
}

StateId CompiledMinskyCA::control(int q, const std::vector<int>& deltas) const {
  std::size_t d = 0;
  for (int i = k_; i-- > 0;)
    d = d * 3 + static_cast<std::size_t>(deltas[static_cast<std::size_t>(i)] + 1);
  return static_cast<StateId>(first_control_ +
                              static_cast<std::size_t>(q) * [&] {
                                std::size_t p = 1;
                                for (int i = 0; i < k_; ++i) p *= 3;
                                return p;
                              }() +
                              d);
}

StateId CompiledMinskyCA::counter_tuple(
    const std::vector<std::pair<int, int>>& parts) const {
  std::size_t d = 0;
  for (int i = k_; i-- > 0;) {
    const auto& [sym, delta] = parts[static_cast<std::size_t>(i)];
    d = d * 12 + static_cast<std::size_t>(sym * 3 + delta + 1);
  }
  return static_cast<StateId>(first_counter_ + d);
}

bool CompiledMinskyCA::is_counter_tuple(StateId s) const {
  return s >= first_counter_;
}
bool CompiledMinskyCA::is_control(StateId s) const {
  return s >= first_control_ && s < first_counter_;
}
bool CompiledMinskyCA::is_bare(StateId s) const {
  return s >= first_bare_ && s < first_control_;
}

std::vector<std::pair<int, int>> CompiledMinskyCA::counter_parts(StateId s) const {
  if (!is_counter_tuple(s)) fail(ErrorKind::Internal, "not a counter state");
  std::size_t rest = s - first_counter_;
  std::vector<std::pair<int, int>> parts(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) {
    parts[static_cast<std::size_t>(i)] = {static_cast<int>(rest % 12 / 3),
                                          static_cast<int>(rest % 3) - 1};
    rest /= 12;
  }
  return parts;
}

std::pair<int, std::vector<int>> CompiledMinskyCA::control_parts(StateId s) const {
  if (!is_control(s)) fail(ErrorKind::Internal, "not a control state");
  std::size_t pow3 = 1;
  for (int i = 0; i < k_; ++i) pow3 *= 3;
  std::size_t rest = s - first_control_;
  const int q = static_cast<int>(rest / pow3);
  rest %= pow3;
  std::vector<int> deltas(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) {
    deltas[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3) - 1;
    rest /= 3;
  }
  return {q, deltas};
}

int CompiledMinskyCA::bare_state(StateId s) const {
  if (!is_bare(s)) fail(ErrorKind::Internal, "not a bare control state");
  return static_cast<int>(s - first_bare_);
}

StateId CompiledMinskyCA::local_rule(StateId x, StateId y, StateId z) const {
  // (1) halting information propagates backwards over finished counters
  if (y == halt_bare_) return halt_bare_;
  if (z == halt_bare_ && is_counter_tuple(y)) {
    bool all_hi = true;
    for (const auto& [sym, delta] : counter_parts(y))
      if (sym != kMarkHi) all_hi = false;
    if (all_hi) return halt_bare_;
  }
  // (2) a control state starts the next column
  if (y == blank_ && is_control(x)) return bare(control_parts(x).first);
  // (3) blank stays blank otherwise
  if (y == blank_) return blank_;
  // (4) a control state next to anything but blank walls off
  if (is_control(x)) return wall_;
  // (5) marker sweep against the wall
  if (x == wall_ && is_counter_tuple(y)) {
    auto parts = counter_parts(y);
    bool all_markers = true;
    for (const auto& [sym, delta] : parts)
      if (sym == kRun) all_markers = false;
    if (all_markers) {
      for (auto& [sym, delta] : parts) sym = std::min(kMarkHi, sym + 1);
      return counter_tuple(parts);
    }
  }
  // (6) counter update from the previous column
  if (is_counter_tuple(y) && is_counter_tuple(x)) {
    auto parts = counter_parts(y);
    auto left = counter_parts(x);
    for (int i = 0; i < k_; ++i) {
      auto& [sym, delta] = parts[static_cast<std::size_t>(i)];
      if (sym == kMarkLo)
        sym = kMarkMid;
      else if (sym == kMarkMid)
        sym = kMarkHi;
      else if (sym == kRun &&
               left[static_cast<std::size_t>(i)].first == marker_for_delta(delta))
        sym = kMarkLo;
    }
    return counter_tuple(parts);
  }
  // (7) machine transition: zero tests read the fresh counter column
  if (is_bare(y) && is_counter_tuple(x)) {
    auto left = counter_parts(x);
    std::vector<int> flags(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i)
      flags[static_cast<std::size_t>(i)] =
          left[static_cast<std::size_t>(i)].first == kRun ? 1 : 0;
    auto [q, deltas] = machine_.transition(bare_state(y), flags);
    return control(q, deltas);
  }
  // (8) counter copy, shifted by the chosen operation
  if (is_control(y) && is_counter_tuple(x)) {
    auto deltas = control_parts(y).second;
    auto left = counter_parts(x);
    std::vector<std::pair<int, int>> parts(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      const int c = left[static_cast<std::size_t>(i)].first;
      const int d = deltas[static_cast<std::size_t>(i)];
      int sym = kRun;
      if (c == kMarkLo && d == -1) sym = kMarkLo;
      if (c == kMarkMid && d < 1) sym = kMarkLo;
      parts[static_cast<std::size_t>(i)] = {sym, d};
    }
    return counter_tuple(parts);
  }
  // (9) countdown advances while supported on the left
  if (x == y && y >= first_countdown_ && y < first_countdown_ + K_)
    return static_cast<StateId>(y + 1);
  // (10) the countdown top seeds a computation on empty input
  if (y == countdown(K_) && z == blank_)
    return control(machine_.initial(), std::vector<int>(k_, 0));
  // (11) wall-side counter seed
  if (x == wall_ && is_control(y))
    return counter_tuple(
        std::vector<std::pair<int, int>>(static_cast<std::size_t>(k_), {kMarkLo, 0}));
  // (12) everything else walls off
  return wall_;
}

void CompiledMinskyCA::build_order() {
  const std::size_t n = first_counter_ + n_counter_;
  order_.assign(n, std::vector<bool>(n, false));
  auto lo = [&](StateId a, StateId b) { order_[a][b] = true; }; // a below b
  for (std::size_t s = 0; s < n; ++s) {
    order_[s][s] = true;
    lo(wall_, static_cast<StateId>(s));
  }
  for (std::size_t c = 0; c < n_counter_; ++c)
    lo(halt_bare_, static_cast<StateId>(first_counter_ + c));
  // Component-wise counter order with matching operations.
  static const int kRank[4] = {3, 2, 1, 0}; // run highest, last marker lowest
  for (std::size_t a = 0; a < n_counter_; ++a) {
    const auto pa = counter_parts(static_cast<StateId>(first_counter_ + a));
    for (std::size_t b = 0; b < n_counter_; ++b) {
      const auto pb = counter_parts(static_cast<StateId>(first_counter_ + b));
      bool below = true;
      for (int i = 0; i < k_; ++i) {
        if (pa[static_cast<std::size_t>(i)].second !=
            pb[static_cast<std::size_t>(i)].second)
          below = false;
        else if (kRank[pa[static_cast<std::size_t>(i)].first] >
                 kRank[pb[static_cast<std::size_t>(i)].first])
          below = false;
      }
      if (below)
        lo(static_cast<StateId>(first_counter_ + a),
           static_cast<StateId>(first_counter_ + b));
    }
  }
  for (std::size_t c = 0; c < n_counter_; ++c)
    for (std::size_t s = 0; s < n_control_; ++s)
      lo(static_cast<StateId>(first_counter_ + c),
         static_cast<StateId>(first_control_ + s));
  for (std::size_t s = 0; s < n_control_; ++s)
    for (std::size_t q = 0; q < n_bare_; ++q)
      lo(static_cast<StateId>(first_control_ + s),
         static_cast<StateId>(first_bare_ + q));
  for (std::size_t q = 0; q < n_bare_; ++q)
    lo(static_cast<StateId>(first_bare_ + q), blank_);
  for (int i = 0; i < K_; ++i) lo(countdown(i + 1), countdown(i));
  lo(counter_tuple(std::vector<std::pair<int, int>>(static_cast<std::size_t>(k_),
                                                    {kMarkLo, 0})),
     countdown(K_));
  lo(control(machine_.initial(), std::vector<int>(k_, 0)), countdown(K_));
  // Transitive closure.
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      if (order_[a][m])
        for (std::size_t b = 0; b < n; ++b)
          if (order_[m][b]) order_[a][b] = true;
}

bool CompiledMinskyCA::order(StateId a, StateId b) const { return order_[a][b]; }

CompiledMinskyCA compile_minsky(const MinskyMachine& m) {
  return CompiledMinskyCA(m);
}

EncodedInput encode_input(const CompiledMinskyCA& compiled,
                          const std::vector<std::int64_t>& chis) {
  const int k = compiled.counters();
  if (static_cast<int>(chis.size()) != k)
    fail(ErrorKind::Format, "input arity does not match the counter count");
  std::int64_t l = 0;
  for (auto v : chis) {
    if (v < 0) fail(ErrorKind::Format, "counter inputs must be >= 0");
    l = std::max(l, v);
  }
  EncodedInput out;
  out.pattern = Pattern(1, l + 2, compiled.blank());
  out.pattern.set({-l - 2}, compiled.wall());
  for (std::int64_t j = -l - 1; j < 0; ++j) {
    std::vector<std::pair<int, int>> parts(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const bool running = (-j - 1) < chis[static_cast<std::size_t>(i)];
      parts[static_cast<std::size_t>(i)] =
          running ? std::pair<int, int>{kRun, -1} : std::pair<int, int>{kMarkLo, 0};
    }
    out.pattern.set({j}, compiled.counter_tuple(parts));
  }
  out.pattern.set({0}, compiled.control(compiled.machine().initial(),
                                        std::vector<int>(static_cast<std::size_t>(k), -1)));
  out.canonical = Configuration::uniform(1, compiled.blank());
  for_each_in_ball(1, out.pattern.radius(), [&](const Coord& z) {
    out.canonical.set(z, out.pattern.at(z));
  });
  return out;
}

ColumnReading read_column(const CompiledMinskyCA& compiled, const Configuration& c,
                          std::int64_t z, std::int64_t horizon,
                          std::int64_t confirm_tail) {
  ColumnReading reading;
  reading.cell = {z};
  reading.counter_values.assign(static_cast<std::size_t>(compiled.counters()), {});
  std::vector<int> marker_progress(static_cast<std::size_t>(compiled.counters()), 0);
  bool saw_wall = false;
  std::set<StateId> controls;
  Configuration cur = c;
  StateId prev = cur.at({z});
  std::int64_t last_change = 0;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    if (t > 0) {
      cur = step(compiled.ca(), cur);
      const StateId s = cur.at({z});
      if (s != prev) {
        prev = s;
        last_change = t;
      }
    }
    const StateId s = prev;
    if (s == compiled.wall()) saw_wall = true;
    if (compiled.is_control(s)) controls.insert(s);
    if (compiled.is_counter_tuple(s)) {
      auto parts = compiled.counter_parts(s);
      for (int i = 0; i < compiled.counters(); ++i) {
        const int sym = parts[static_cast<std::size_t>(i)].first;
        auto& prog = marker_progress[static_cast<std::size_t>(i)];
        if (sym == kRun) ++reading.counter_values[static_cast<std::size_t>(i)].count;
        if (sym == kMarkLo && prog == 0) prog = 1;
        if (sym == kMarkMid && prog == 1) prog = 2;
        if (sym == kMarkHi && prog == 2) prog = 3;
      }
    }
  }
  bool all_complete = true;
  for (int i = 0; i < compiled.counters(); ++i) {
    auto& cv = reading.counter_values[static_cast<std::size_t>(i)];
    cv.complete = marker_progress[static_cast<std::size_t>(i)] == 3;
    all_complete = all_complete && cv.complete;
  }
  reading.valid = all_complete && !saw_wall;
  reading.frozen = (horizon - last_change) >= confirm_tail;
  if (controls.size() == 1)
    reading.m_state = compiled.control_parts(*controls.begin()).first;
  return reading;
}

std::int64_t column_horizon(const CompiledMinskyCA& compiled, std::int64_t steps,
                            std::int64_t max_counter) {
  return (steps + 2) * (max_counter + 4) + compiled.K() + 8;
}

SimulationCheck verify_correct_simulation(const CompiledMinskyCA& compiled,
                                          const Configuration& c, std::int64_t z,
                                          std::int64_t horizon) {
  Configuration cur = c;
  std::int64_t t0 = -1;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    if (t > 0) cur = step(compiled.ca(), cur);
    if (compiled.is_control(cur.at({z}))) {
      t0 = t;
      break;
    }
  }
  if (t0 < 0)
    fail(ErrorKind::Precondition, "no control state appears at the cell in time");
  if (cur.at({z + 1}) != compiled.blank())
    fail(ErrorKind::Precondition, "cell right of the control is not blank");

  const std::int64_t budget = horizon - t0;
  ColumnReading at_z = read_column(compiled, cur, z, budget);
  if (!at_z.valid || !at_z.m_state)
    fail(ErrorKind::Precondition, "trace at the control cell is not valid");

  SimulationCheck check;
  std::vector<int> flags(static_cast<std::size_t>(compiled.counters()));
  for (int i = 0; i < compiled.counters(); ++i)
    flags[static_cast<std::size_t>(i)] =
        at_z.counter_values[static_cast<std::size_t>(i)].count > 0 ? 1 : 0;
  auto [q, deltas] = compiled.machine().transition(*at_z.m_state, flags);
  check.expected_state = q;
  for (int i = 0; i < compiled.counters(); ++i)
    check.expected_counters.push_back(std::max<std::int64_t>(
        0, at_z.counter_values[static_cast<std::size_t>(i)].count +
               deltas[static_cast<std::size_t>(i)]));

  ColumnReading at_zp = read_column(compiled, cur, z + 1, budget);
  if (!at_zp.valid) check.violations.push_back("trace right of the control is not valid");
  if (!at_zp.m_state)
    check.violations.push_back("no unique control occurrence right of the cell");
  else {
    check.observed_state = *at_zp.m_state;
    if (*at_zp.m_state != q)
      check.violations.push_back("machine state mismatch at the next column");
  }
  for (int i = 0; i < compiled.counters(); ++i) {
    const auto obs = at_zp.counter_values[static_cast<std::size_t>(i)].count;
    check.observed_counters.push_back(obs);
    if (obs != check.expected_counters[static_cast<std::size_t>(i)])
      check.violations.push_back("counter " + std::to_string(i + 1) +
                                 " mismatch at the next column");
  }
  check.ok = check.violations.empty();
  return check;
}

HaltingWitness halting_witness(const CompiledMinskyCA& compiled,
                               const std::vector<std::int64_t>& chis,
                               std::int64_t t_max) {
  EncodedInput enc = encode_input(compiled, chis);
  Configuration cur = enc.canonical;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    if (t > 0) cur = step(compiled.ca(), cur);
    if (cur.at({0}) == compiled.halt_state()) return HaltsWithH{t};
  }
  return NoHWithinBound{};
}

MaxChangeWitness max_change_witness(const CompiledMinskyCA& compiled,
                                    std::int64_t width_of_countdown,
                                    std::int64_t t_max) {
  if (width_of_countdown < 1)
    fail(ErrorKind::Format, "countdown prefix must have width >= 1");
  Configuration c = Configuration::uniform(1, compiled.blank());
  for (std::int64_t z = -width_of_countdown + 1; z <= 0; ++z)
    c.set({z}, compiled.countdown(0));
  MaxChangeWitness witness;
  Configuration cur = c;
  witness.state_sequence.push_back(cur.at({0}));
  for (std::int64_t t = 1; t <= t_max; ++t) {
    cur = step(compiled.ca(), cur);
    const StateId s = cur.at({0});
    if (s != witness.state_sequence.back()) witness.state_sequence.push_back(s);
  }
  witness.changes = static_cast<std::int64_t>(witness.state_sequence.size()) - 1;
  return witness;
}

} // namespace fca
