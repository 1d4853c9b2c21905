#pragma once

#include <cstdint>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"

namespace fca {

// Run-length encoded temporal column: the whole state history of one cell as
// (state, duration) segments. For a k-change orbit this is at most k+1
// segments, i.e. O(k log t) bits.
struct RleColumn {
  std::vector<std::pair<StateId, std::int64_t>> segments;
  std::int64_t total_height = 0;

  void push(StateId s, std::int64_t duration = 1) {
    if (duration <= 0) return;
    if (!segments.empty() && segments.back().first == s)
      segments.back().second += duration;
    else
      segments.push_back({s, duration});
    total_height += duration;
  }

  StateId at(std::int64_t t) const {
    std::int64_t acc = 0;
    for (const auto& [s, d] : segments) {
      acc += d;
      if (t < acc) return s;
    }
    fail(ErrorKind::Internal, "column index out of range");
  }

  StateId last() const { return segments.back().first; }
  std::int64_t segment_count() const {
    return static_cast<std::int64_t>(segments.size());
  }
};

struct PredictionInstance {
  std::int64_t t = 1;   // steps
  Pattern input;        // 1D pattern of radius exactly r*t
  StateId target = 0;   // queried state

  PredictionInstance(std::int64_t steps, Pattern in, StateId q)
      : t(steps), input(std::move(in)), target(q) {}
};

PredictionInstance make_instance(const CellularAutomaton& ca, std::int64_t t,
                                 Pattern input, StateId target);

// Direct oracle: t pattern steps, center state.
StateId predict_naive(const CellularAutomaton& ca, const PredictionInstance& inst);

struct StreamStats {
  std::int64_t peak_live_columns = 0;
  std::int64_t max_segments = 0;
};

// Deterministic streaming predictor for one-way 1D rules (V within -N or N):
// sweeps positions in dependency order holding a window of RLE columns, so
// working memory stays O(r * k log t) independent of position count.
// Exceeding k+1 segments in any column is a bound violation.
StateId predict_oneway_stream(const CellularAutomaton& ca,
                              const PredictionInstance& inst, std::int64_t k,
                              StreamStats* stats = nullptr);

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t max_segments = 0;
};

// Backtracking column-guess predictor for general bounded-change 1D rules:
// depth-first over candidate RLE columns per position, compatibility checks
// evaluated on segment boundaries. Exponential in the worst case; errors out
// when no (k+1)-segment assembly is consistent.
StateId predict_column_search(const CellularAutomaton& ca,
                              const PredictionInstance& inst, std::int64_t k,
                              SearchStats* stats = nullptr,
                              std::int64_t node_budget = 200000000);

} // namespace fca
