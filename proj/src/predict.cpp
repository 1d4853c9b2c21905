#include "fca/predict.hpp"

#include <algorithm>
#include <deque>

#include "fca/engine.hpp"

namespace fca {

PredictionInstance make_instance(const CellularAutomaton& ca, std::int64_t t,
                                 Pattern input, StateId target) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "prediction instances are 1D");
  if (t < 1) fail(ErrorKind::Format, "prediction horizon must be >= 1");
  if (input.radius() != ca.radius() * t)
    fail(ErrorKind::RadiusTooSmall, "instance pattern radius must be exactly r*t");
  return PredictionInstance(t, std::move(input), target);
}

StateId predict_naive(const CellularAutomaton& ca, const PredictionInstance& inst) {
  if (inst.input.radius() != ca.radius() * inst.t)
    fail(ErrorKind::RadiusTooSmall, "instance pattern radius must be exactly r*t");
  Pattern cur = inst.input;
  for (std::int64_t i = 0; i < inst.t; ++i) cur = apply_to_pattern(ca, cur);
  return cur.at(origin(1));
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct OffsetInfo {
  std::vector<std::int64_t> offsets; // neighborhood order
  std::int64_t min_off = 0, max_off = 0;
};

OffsetInfo offsets_1d(const CellularAutomaton& ca) {
  OffsetInfo info;
  for (const auto& o : ca.neighborhood().offsets()) info.offsets.push_back(o[0]);
  info.min_off = *std::min_element(info.offsets.begin(), info.offsets.end());
  info.max_off = *std::max_element(info.offsets.begin(), info.offsets.end());
  return info;
}

// First segment boundary of the column strictly after time `at` (the column
// height when the tail segment covers it).
std::int64_t boundary_after(const RleColumn& c, std::int64_t at) {
  std::int64_t acc = 0;
  for (const auto& [s, d] : c.segments) {
    acc += d;
    if (acc > at) return acc;
  }
  return acc;
}

} // namespace

StateId predict_oneway_stream(const CellularAutomaton& ca,
                              const PredictionInstance& inst, std::int64_t k,
                              StreamStats* stats) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "streaming predictor is 1D");
  if (inst.input.radius() != ca.radius() * inst.t)
    fail(ErrorKind::RadiusTooSmall, "instance pattern radius must be exactly r*t");
  const auto info = offsets_1d(ca);
  const bool leftward = info.max_off <= 0; // cell depends on itself and the left
  const bool rightward = info.min_off >= 0;
  if (!leftward && !rightward)
    fail(ErrorKind::WrongNeighborhood,
         "streaming prediction needs a one-way neighborhood");
  const std::int64_t r = std::max<std::int64_t>(1, ca.radius());
  const std::int64_t rt = ca.radius() * inst.t;
  const std::int64_t t = inst.t;
  const std::int64_t sweep = leftward ? 1 : -1;

  // Determined column heights on the dependency side of the origin.
  auto height = [&](std::int64_t i) {
    return t + floor_div(sweep * i, r) + 1;
  };

  std::deque<RleColumn> window; // last r processed columns, oldest first
  StreamStats local;
  std::vector<StateId> tuple(info.offsets.size());
  StateId answer = 0;

  for (std::int64_t idx = 0; idx <= rt; ++idx) {
    const std::int64_t i = (leftward ? -rt : rt) + sweep * idx;
    const std::int64_t h = height(i);
    RleColumn col;
    col.push(inst.input.at({i}));
    std::int64_t tau = 1;
    while (tau < h) {
      for (std::size_t j = 0; j < info.offsets.size(); ++j) {
        const std::int64_t off = info.offsets[j];
        const RleColumn& src =
            off == 0 ? col
                     : window[window.size() - static_cast<std::size_t>(
                                                  off < 0 ? -off : off)];
        tuple[j] = src.at(tau - 1);
      }
      const StateId next = ca.apply(tuple);
      if (next != col.last()) {
        if (col.segment_count() + 1 > k + 1)
          fail(ErrorKind::BoundViolation,
               "column exceeded the declared change bound");
        col.push(next);
        ++tau;
        continue;
      }
      // All inputs constant until the next boundary of some other column
      // (self stays constant by construction), so jump there.
      std::int64_t next_event = h;
      for (std::size_t j = 0; j < info.offsets.size(); ++j) {
        const std::int64_t off = info.offsets[j];
        if (off == 0) continue;
        const RleColumn& src = window[window.size() - static_cast<std::size_t>(
                                                          off < 0 ? -off : off)];
        next_event = std::min(next_event, boundary_after(src, tau - 1) + 1);
      }
      next_event = std::max(next_event, tau + 1);
      next_event = std::min(next_event, h);
      col.push(next, next_event - tau);
      tau = next_event;
    }
    local.max_segments = std::max(local.max_segments, col.segment_count());
    local.peak_live_columns =
        std::max(local.peak_live_columns,
                 static_cast<std::int64_t>(window.size()) + 1);
    if (i == 0) answer = col.at(t);
    window.push_back(std::move(col));
    if (static_cast<std::int64_t>(window.size()) > r) window.pop_front();
  }
  if (stats) *stats = local;
  return answer;
}

namespace {

// Depth-first assembly of one RLE column per position, positions swept left
// to right. Compatibility of the space-time diagram is enforced on segment
// boundaries as columns grow; a constraint whose right context is still open
// only prunes when no assignment of the open columns could satisfy it.
struct ColumnSearch {
  const CellularAutomaton* ca = nullptr;
  std::int64_t rt = 0, t = 0, k = 0;
  std::vector<std::int64_t> offs;
  std::int64_t min_off = 0, max_off = 0;
  const Pattern* input = nullptr;
  std::vector<RleColumn> columns; // indexed by position + rt
  std::vector<std::int64_t> heights;
  std::int64_t nodes = 0, budget = 0;
  std::int64_t max_segments = 0;

  std::int64_t height(std::int64_t i) const {
    return heights[static_cast<std::size_t>(i + rt)];
  }
  RleColumn& column(std::int64_t i) {
    return columns[static_cast<std::size_t>(i + rt)];
  }

  void bump() {
    if (++nodes > budget)
      fail(ErrorKind::BoundViolation, "column search exceeded its node budget");
  }

  // Constraint centered at j, time tau: column(j).at(tau) must be the local
  // map of the involved columns at tau-1. `partial` is the column being
  // built at position `pos`; positions beyond it are open. False only when
  // no assignment of the open columns can satisfy the constraint.
  bool feasible(std::int64_t j, std::int64_t tau, const RleColumn& partial,
                std::int64_t pos) {
    bump();
    std::vector<StateId> tuple(offs.size());
    std::vector<std::size_t> open;
    for (std::size_t a = 0; a < offs.size(); ++a) {
      const std::int64_t p = j + offs[a];
      if (p == pos)
        tuple[a] = partial.at(tau - 1);
      else if (p < pos)
        tuple[a] = column(p).at(tau - 1);
      else
        open.push_back(a);
    }
    const StateId want = (j == pos ? partial : column(j)).at(tau);
    if (open.empty()) return ca->apply(tuple) == want;
    if (open.size() > 2) return true;
    const std::size_t n = ca->alphabet().size();
    std::vector<StateId> probe(open.size(), 0);
    while (true) {
      for (std::size_t u = 0; u < open.size(); ++u) tuple[open[u]] = probe[u];
      if (ca->apply(tuple) == want) return true;
      std::size_t u = 0;
      for (; u < open.size(); ++u) {
        if (++probe[u] < n) break;
        probe[u] = 0;
      }
      if (u == open.size()) return false;
    }
  }

  // Every constraint check that becomes possible once `col` (at position i)
  // holds times 0..tau: the column's own producibility at time tau, and the
  // placed centers to the left reading col at time tau.
  bool checks_after_push(std::int64_t i, const RleColumn& col, std::int64_t tau) {
    if (tau >= 1 && tau < height(i) && i >= -rt - min_off && i <= rt - max_off) {
      if (!feasible(i, tau, col, i)) return false;
    }
    for (std::int64_t j = i - max_off; j < i; ++j) {
      if (j < -rt - min_off || j > rt - max_off) continue;
      if (j + max_off <= i - 1) continue; // span closed before this column
      if (tau + 1 < 1 || tau + 1 >= height(j)) continue;
      if (!feasible(j, tau + 1, col, i)) return false;
    }
    return true;
  }

  bool dfs(std::int64_t i) {
    if (i > rt) return true;
    RleColumn col;
    col.push(input->at({i}));
    // Constraints reading only time-0 values of this column.
    for (std::int64_t j = i - max_off; j < i; ++j) {
      if (j < -rt - min_off || j > rt - max_off) continue;
      if (j + max_off <= i - 1) continue;
      if (height(j) >= 2 && !feasible(j, 1, col, i)) return false;
    }
    return grow(i, col, 1);
  }

  bool grow(std::int64_t i, RleColumn& col, std::int64_t tau) {
    const std::int64_t h = height(i);
    if (tau == h) {
      max_segments = std::max(max_segments, col.segment_count());
      column(i) = col;
      if (dfs(i + 1)) return true;
      return false;
    }
    const std::size_t n = ca->alphabet().size();
    const StateId cur = col.last();
    auto attempt = [&](StateId s) -> bool {
      if (s != cur && col.segment_count() + 1 > k + 1) return false;
      const std::size_t seg_count = col.segments.size();
      col.push(s);
      bool ok = checks_after_push(i, col, tau);
      if (ok && grow(i, col, tau + 1)) return true;
      // Undo the push.
      if (col.segments.size() > seg_count)
        col.segments.pop_back();
      else
        --col.segments.back().second;
      --col.total_height;
      return false;
    };
    // Earliest-change-first: switching states at this boundary is explored
    // before staying.
    for (StateId s = 0; s < n; ++s)
      if (s != cur && attempt(s)) return true;
    return attempt(cur);
  }
};

} // namespace

StateId predict_column_search(const CellularAutomaton& ca,
                              const PredictionInstance& inst, std::int64_t k,
                              SearchStats* stats, std::int64_t node_budget) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "column search is 1D");
  if (inst.input.radius() != ca.radius() * inst.t)
    fail(ErrorKind::RadiusTooSmall, "instance pattern radius must be exactly r*t");
  ColumnSearch search;
  search.ca = &ca;
  search.rt = ca.radius() * inst.t;
  search.t = inst.t;
  search.k = k;
  search.budget = node_budget;
  const auto info = offsets_1d(ca);
  search.offs = info.offsets;
  search.min_off = info.min_off;
  search.max_off = info.max_off;
  search.input = &inst.input;
  search.columns.assign(static_cast<std::size_t>(2 * search.rt + 1), {});
  search.heights.resize(static_cast<std::size_t>(2 * search.rt + 1));
  for (std::int64_t i = -search.rt; i <= search.rt; ++i)
    search.heights[static_cast<std::size_t>(i + search.rt)] =
        ca.radius() == 0
            ? inst.t + 1 // the cone does not shrink without neighbors
            : floor_div(search.rt - (i < 0 ? -i : i), ca.radius()) + 1;
  if (!search.dfs(-search.rt))
    fail(ErrorKind::NoConsistentAssembly,
         "no column assembly with the declared change bound is consistent");
  if (stats) {
    stats->nodes = search.nodes;
    stats->max_segments = search.max_segments;
  }
  return search.column(0).at(inst.t);
}

} // namespace fca
