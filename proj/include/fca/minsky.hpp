#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/engine.hpp"

namespace fca {

// Deterministic k-counter machine. The transition map is total on
// state x zero-flag vectors; the halting state loops with zero deltas.
class MinskyMachine {
public:
  MinskyMachine(std::vector<std::string> states, const std::string& initial,
                const std::string& halting, int counters,
                std::map<std::pair<int, std::vector<int>>,
                         std::pair<int, std::vector<int>>> rules);

  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int q) const { return states_.at(static_cast<std::size_t>(q)); }
  int state_id(const std::string& name) const;
  int initial() const { return initial_; }
  int halting() const { return halting_; }
  int counters() const { return k_; }

  // (next state, deltas) for (state, zero flags); flags are 0/1, deltas -1/0/1.
  std::pair<int, std::vector<int>> transition(int state,
                                              const std::vector<int>& flags) const;

private:
  std::vector<std::string> states_;
  int initial_ = 0;
  int halting_ = 0;
  int k_ = 1;
  std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>> rules_;
};

struct MinskyConfig {
  int state = 0;
  std::vector<std::int64_t> counters;

  bool operator==(const MinskyConfig& o) const {
    return state == o.state && counters == o.counters;
  }
};

MinskyConfig minsky_step(const MinskyMachine& m, const MinskyConfig& cfg);

struct Halted {
  std::int64_t time = 0;
};
struct Running {
  MinskyConfig config;
};
using MinskyRunResult = std::variant<Halted, Running>;

MinskyRunResult minsky_run(const MinskyMachine& m, const MinskyConfig& cfg,
                           std::int64_t t_max);

// The freezing CA that simulates a counter machine one transition per cell,
// counters in unary as durations between marker states in a cell's trace.
class CompiledMinskyCA {
public:
  explicit CompiledMinskyCA(const MinskyMachine& m);

  const CellularAutomaton& ca() const { return ca_; }
  const MinskyMachine& machine() const { return machine_; }
  int counters() const { return k_; }
  // Countdown length: the alphabet carries countdown states i_0..i_K.
  int K() const { return K_; }

  StateId blank() const { return blank_; }
  StateId wall() const { return wall_; }
  StateId halt_state() const { return halt_bare_; }
  StateId countdown(int n) const; // i_n
  StateId bare(int q) const;      // machine state without operations
  StateId control(int q, const std::vector<int>& deltas) const;
  StateId counter_tuple(const std::vector<std::pair<int, int>>& parts) const;

  bool is_counter_tuple(StateId s) const;
  bool is_control(StateId s) const;
  bool is_bare(StateId s) const;
  // Counter symbols: 0 = run ('1'), 1 = end marker -1, 2 = end marker 0,
  // 3 = end marker +1.
  std::vector<std::pair<int, int>> counter_parts(StateId s) const; // (symbol, delta)
  std::pair<int, std::vector<int>> control_parts(StateId s) const;
  int bare_state(StateId s) const;

  // The freezing preorder of the construction, as a closed relation:
  // order(a, b) means a is below-or-equivalent-to b.
  bool order(StateId lo, StateId hi) const;

private:
  MinskyMachine machine_;
  int k_;
  int K_;
  CellularAutomaton ca_;
  StateId blank_ = 0, wall_ = 0, halt_bare_ = 0;
  StateId first_countdown_ = 0, first_bare_ = 0, first_control_ = 0,
          first_counter_ = 0;
  std::size_t n_bare_ = 0, n_control_ = 0, n_counter_ = 0;
  std::vector<std::vector<bool>> order_;

  StateId local_rule(StateId x, StateId y, StateId z) const;
  void build_order();
};

CompiledMinskyCA compile_minsky(const MinskyMachine& m);

struct EncodedInput {
  Pattern pattern;            // the proof's input window
  Configuration canonical;    // pattern over blank background (wall included)
};

EncodedInput encode_input(const CompiledMinskyCA& compiled,
                          const std::vector<std::int64_t>& chis);

struct CounterReading {
  std::int64_t count = 0; // occurrences of a running counter symbol
  bool complete = false;  // full end-marker subsequence observed
};

struct ColumnReading {
  Coord cell;
  bool valid = false;     // all counters complete, no wall in the trace
  bool frozen = false;    // trace tail constant over the confirm window
  std::optional<int> m_state; // machine state of the unique control occurrence
  std::vector<CounterReading> counter_values;
};

ColumnReading read_column(const CompiledMinskyCA& compiled, const Configuration& c,
                          std::int64_t z, std::int64_t horizon,
                          std::int64_t confirm_tail = 8);

// Horizon that empirically covers the column reading at machine step `steps`
// with counters bounded by `max_counter`.
std::int64_t column_horizon(const CompiledMinskyCA& compiled, std::int64_t steps,
                            std::int64_t max_counter);

struct SimulationCheck {
  bool ok = false;
  std::vector<std::string> violations;
  std::optional<int> observed_state;                 // at z+1
  std::vector<std::int64_t> observed_counters;       // at z+1
  std::optional<int> expected_state;
  std::vector<std::int64_t> expected_counters;
};

// Checks one encoded machine transition: the column right of a control cell
// carries the transitioned state and updated counters.
SimulationCheck verify_correct_simulation(const CompiledMinskyCA& compiled,
                                          const Configuration& c, std::int64_t z,
                                          std::int64_t horizon);

struct HaltsWithH {
  std::int64_t time = 0;
};
struct NoHWithinBound {};
using HaltingWitness = std::variant<HaltsWithH, NoHWithinBound>;

// Simulates the canonical configuration of an encoded input and reports the
// first time the halting state reaches the start cell.
HaltingWitness halting_witness(const CompiledMinskyCA& compiled,
                               const std::vector<std::int64_t>& chis,
                               std::int64_t t_max);

struct MaxChangeWitness {
  std::int64_t changes = 0;
  std::vector<StateId> state_sequence; // distinct successive states at cell 0
};

// Counts state changes at cell 0 of the countdown-prefix configuration:
// K+5 exactly when the machine halts on empty input.
MaxChangeWitness max_change_witness(const CompiledMinskyCA& compiled,
                                    std::int64_t width_of_countdown,
                                    std::int64_t t_max);

} // namespace fca
