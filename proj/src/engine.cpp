#include "fca/engine.hpp"

#include <algorithm>
#include <set>

namespace fca {

namespace {

void check_compatible(const CellularAutomaton& ca, const Configuration& c) {
  if (ca.dim() != c.dim())
    fail(ErrorKind::DimensionMismatch, "rule and configuration dimensions differ");
  const std::size_t n = ca.alphabet().size();
  for (StateId s : c.block())
    if (s >= n) fail(ErrorKind::UnknownState, "configuration state outside alphabet");
  for (auto& [z, s] : c.overrides())
    if (s >= n) fail(ErrorKind::UnknownState, "configuration state outside alphabet");
}

} // namespace

Configuration step(const CellularAutomaton& ca, const Configuration& c) {
  check_compatible(ca, c);
  const auto& offsets = ca.neighborhood().offsets();
  std::vector<StateId> tuple(offsets.size());

  // Background block evolves by translation invariance.
  Configuration next = c;
  {
    std::vector<StateId> block = c.block();
    Coord lo(static_cast<std::size_t>(c.dim()), 0);
    Coord hi(c.periods().begin(), c.periods().end());
    for (auto& v : hi) --v;
    std::size_t idx = 0;
    for_each_in_box(lo, hi, [&](const Coord& z) {
      for (std::size_t j = 0; j < offsets.size(); ++j)
        tuple[j] = c.background_at(add(z, offsets[j]));
      block[idx++] = ca.apply(tuple);
    });
    next = Configuration::periodic(c.dim(), c.periods(), std::move(block));
  }

  // Only cells whose neighborhood meets an override can deviate from the
  // background image.
  std::set<Coord> candidates;
  for (auto& [o, s] : c.overrides())
    for (const auto& v : offsets) candidates.insert(sub(o, v));
  for (const auto& z : candidates) {
    for (std::size_t j = 0; j < offsets.size(); ++j)
      tuple[j] = c.at(add(z, offsets[j]));
    next.set(z, ca.apply(tuple));
  }
  return next;
}

std::vector<Configuration> simulate(const CellularAutomaton& ca,
                                    const Configuration& c, std::int64_t t) {
  if (t < 0) fail(ErrorKind::Format, "step count must be >= 0");
  std::vector<Configuration> orbit;
  orbit.reserve(static_cast<std::size_t>(t) + 1);
  orbit.push_back(c);
  for (std::int64_t i = 0; i < t; ++i) orbit.push_back(step(ca, orbit.back()));
  return orbit;
}

Pattern apply_to_pattern(const CellularAutomaton& ca, const Pattern& u) {
  if (u.dim() != ca.dim())
    fail(ErrorKind::DimensionMismatch, "rule and pattern dimensions differ");
  const std::int64_t r = ca.radius();
  if (u.radius() < r)
    fail(ErrorKind::RadiusTooSmall, "pattern radius smaller than rule radius");
  for (StateId s : u.cells())
    if (s >= ca.alphabet().size())
      fail(ErrorKind::UnknownState, "pattern state outside alphabet");
  Pattern v(u.dim(), u.radius() - r);
  const auto& offsets = ca.neighborhood().offsets();
  std::vector<StateId> tuple(offsets.size());
  for_each_in_ball(u.dim(), v.radius(), [&](const Coord& z) {
    for (std::size_t j = 0; j < offsets.size(); ++j)
      tuple[j] = u.at(add(z, offsets[j]));
    v.set(z, ca.apply(tuple));
  });
  return v;
}

bool in_cylinder(const Configuration& c, const Pattern& u) {
  if (c.dim() != u.dim())
    fail(ErrorKind::DimensionMismatch, "configuration and pattern dimensions differ");
  bool ok = true;
  for_each_in_ball(u.dim(), u.radius(), [&](const Coord& z) {
    if (c.at(z) != u.at(z)) ok = false;
  });
  return ok;
}

Trace trace(const CellularAutomaton& ca, const Configuration& c,
            const std::vector<Coord>& base, std::int64_t horizon) {
  if (base.empty()) fail(ErrorKind::Format, "trace base must be nonempty");
  if (horizon < 0) fail(ErrorKind::Format, "horizon must be >= 0");
  Trace tr;
  tr.base = base;
  Configuration cur = c;
  for (std::int64_t t = 0;; ++t) {
    std::vector<StateId> row(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) row[i] = cur.at(base[i]);
    tr.rows.push_back(std::move(row));
    if (t == horizon) break;
    cur = step(ca, cur);
  }
  // Least t0 whose tail is constant; reported only when the tail actually
  // witnesses stability (at least two equal rows, or the whole trace).
  std::int64_t t0 = horizon;
  while (t0 > 0 && tr.rows[static_cast<std::size_t>(t0) - 1] ==
                       tr.rows[static_cast<std::size_t>(horizon)])
    --t0;
  if (t0 < horizon || t0 == 0) tr.eventually_constant_at = t0;
  return tr;
}

FreezingReport freezing_report(const CellularAutomaton& ca,
                               const Configuration& c, const Coord& z,
                               std::int64_t horizon, std::int64_t confirm_tail) {
  if (horizon < 0) fail(ErrorKind::Format, "horizon must be >= 0");
  FreezingReport rep;
  rep.cell = z;
  Configuration cur = c;
  StateId last = cur.at(z);
  std::int64_t last_change = 0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    cur = step(ca, cur);
    const StateId s = cur.at(z);
    if (s != last) {
      last = s;
      last_change = t;
    }
  }
  if (ca.is_invariant_state(last)) {
    rep.freezing_time = last_change;
    rep.limit_state = last;
    rep.guarantee = FreezeGuarantee::ExactMinimal;
  } else if (horizon - last_change >= confirm_tail) {
    rep.freezing_time = last_change;
    rep.limit_state = last;
    rep.guarantee = FreezeGuarantee::Observed;
  }
  return rep;
}

std::vector<Coord> chi(const Configuration& c, StateId q,
                       std::int64_t window_radius) {
  std::vector<Coord> out;
  for_each_in_ball(c.dim(), window_radius, [&](const Coord& z) {
    if (c.at(z) == q) out.push_back(z);
  });
  return out;
}

LimitWindow limit_window(const CellularAutomaton& ca, const Configuration& c,
                         std::int64_t window_radius, std::int64_t horizon,
                         std::int64_t confirm_tail) {
  std::vector<Coord> cells;
  for_each_in_ball(c.dim(), window_radius, [&](const Coord& z) { cells.push_back(z); });

  // One simulation pass serves every cell of the window.
  std::vector<StateId> last(cells.size());
  std::vector<std::int64_t> last_change(cells.size(), 0);
  Configuration cur = c;
  for (std::size_t i = 0; i < cells.size(); ++i) last[i] = cur.at(cells[i]);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    cur = step(ca, cur);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const StateId s = cur.at(cells[i]);
      if (s != last[i]) {
        last[i] = s;
        last_change[i] = t;
      }
    }
  }

  LimitWindow out;
  out.limit = Pattern(c.dim(), window_radius);
  out.reports.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.limit.set(cells[i], last[i]);
    FreezingReport rep;
    rep.cell = cells[i];
    if (ca.is_invariant_state(last[i])) {
      rep.freezing_time = last_change[i];
      rep.limit_state = last[i];
      rep.guarantee = FreezeGuarantee::ExactMinimal;
    } else if (horizon - last_change[i] >= confirm_tail) {
      rep.freezing_time = last_change[i];
      rep.limit_state = last[i];
      rep.guarantee = FreezeGuarantee::Observed;
    }
    out.reports.push_back(std::move(rep));
  }
  return out;
}

namespace {

// Annulus B(outer) \ B(inner), in deterministic (lexicographic) order.
std::vector<Coord> annulus_cells(int dim, std::int64_t inner, std::int64_t outer) {
  std::vector<Coord> out;
  for_each_in_ball(dim, outer, [&](const Coord& z) {
    if (max_norm(z) > inner) out.push_back(z);
  });
  return out;
}

Configuration make_candidate(const Pattern& u, StateId background,
                             const std::vector<Coord>& ext_cells,
                             const std::vector<StateId>& ext_states) {
  Configuration c = Configuration::uniform(u.dim(), background);
  for_each_in_ball(u.dim(), u.radius(), [&](const Coord& z) { c.set(z, u.at(z)); });
  for (std::size_t i = 0; i < ext_cells.size(); ++i) c.set(ext_cells[i], ext_states[i]);
  return c;
}

} // namespace

CyReachResult cyreach_bounded(const CellularAutomaton& ca, const Pattern& u,
                              const Pattern& v, std::int64_t t_max,
                              std::int64_t extension_radius,
                              const std::vector<StateId>& backgrounds) {
  if (t_max < 0) fail(ErrorKind::Format, "t_max must be >= 0");
  if (u.dim() != ca.dim() || v.dim() != ca.dim())
    fail(ErrorKind::DimensionMismatch, "pattern dimension mismatch");
  for (StateId b : backgrounds) {
    if (b >= ca.alphabet().size())
      fail(ErrorKind::UnknownState, "background state outside alphabet");
    std::vector<StateId> tuple(ca.neighborhood().size(), b);
    if (ca.apply(tuple) != b)
      fail(ErrorKind::Format, "background state " + ca.alphabet().name(b) +
                                  " is not quiescent");
  }

  std::int64_t tried = 0;
  const std::size_t q = ca.alphabet().size();
  for (std::int64_t ext = 0; ext <= extension_radius; ++ext) {
    const auto cells = annulus_cells(u.dim(), u.radius(), u.radius() + ext);
    // Skip duplicate no-extension rounds beyond the first.
    if (ext > 0 && cells.empty()) continue;
    std::vector<StateId> assign(cells.size(), 0);
    for (StateId bg : backgrounds) {
      while (true) {
        Configuration c = make_candidate(u, bg, cells, assign);
        ++tried;
        Configuration cur = c;
        for (std::int64_t t = 0; t <= t_max; ++t) {
          if (t > 0) cur = step(ca, cur);
          if (in_cylinder(cur, v)) {
            // Independent re-verification from a fresh candidate build.
            Configuration check = make_candidate(u, bg, cells, assign);
            auto orbit = simulate(ca, check, t);
            if (!in_cylinder(orbit.back(), v) || !in_cylinder(check, u))
              fail(ErrorKind::Internal, "cyreach witness failed re-verification");
            return Reached{t, std::move(check)};
          }
        }
        // Next assignment in lexicographic order.
        std::size_t j = 0;
        for (; j < assign.size(); ++j) {
          if (++assign[j] < q) break;
          assign[j] = 0;
        }
        if (j == assign.size()) break;
      }
      std::fill(assign.begin(), assign.end(), 0);
    }
  }
  return Unknown{tried};
}

} // namespace fca
