#include "fca/classify.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>

namespace fca {

StateChangeRelation state_change_relation(const CellularAutomaton& ca) {
  StateChangeRelation rel;
  const std::size_t n = ca.alphabet().size();
  const int ci = ca.neighborhood().center_index();
  std::vector<StateId> tuple(ca.neighborhood().size(), 0);
  for (std::size_t idx = 0; idx < ca.table().size(); ++idx) {
    const StateId out = ca.table()[idx];
    if (ci >= 0) {
      const StateId center = tuple[static_cast<std::size_t>(ci)];
      if (center != out) rel.arcs.insert({center, out});
    } else {
      // Without the center offset the cell's own state is free.
      for (StateId q = 0; q < n; ++q)
        if (q != out) rel.arcs.insert({q, out});
    }
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (++tuple[j] < n) break;
      tuple[j] = 0;
    }
  }
  return rel;
}

namespace {

// Shortest cycle through the arc relation, if any.
std::optional<std::vector<StateId>> shortest_cycle(
    const StateChangeRelation& rel, std::size_t n) {
  std::vector<std::vector<StateId>> succ(n);
  for (auto& [a, b] : rel.arcs) succ[a].push_back(b);
  std::optional<std::vector<StateId>> best;
  for (StateId s = 0; s < n; ++s) {
    // BFS from s; first return to s gives the shortest cycle through s.
    std::vector<std::int64_t> dist(n, -1);
    std::vector<StateId> pred(n, 0);
    std::queue<StateId> queue;
    dist[s] = 0;
    queue.push(s);
    std::optional<std::vector<StateId>> found;
    while (!queue.empty() && !found) {
      const StateId cur = queue.front();
      queue.pop();
      for (StateId nx : succ[cur]) {
        if (nx == s) {
          std::vector<StateId> cyc;
          for (StateId at = cur;; at = pred[at]) {
            cyc.push_back(at);
            if (at == s) break;
          }
          std::reverse(cyc.begin(), cyc.end());
          found = cyc;
          break;
        }
        if (dist[nx] < 0) {
          dist[nx] = dist[cur] + 1;
          pred[nx] = cur;
          queue.push(nx);
        }
      }
    }
    if (found && (!best || found->size() < best->size())) best = found;
  }
  return best;
}

} // namespace

FreezingOrder check_freezing(const CellularAutomaton& ca) {
  const auto rel = state_change_relation(ca);
  const std::size_t n = ca.alphabet().size();
  if (auto cyc = shortest_cycle(rel, n)) {
    NotFreezing nf;
    if (cyc->size() == 1) {
      // A self-loop cannot occur (arcs exclude the diagonal); keep the
      // invariant cycle length >= 2 anyway.
      nf.cycle = {(*cyc)[0], (*cyc)[0]};
    } else {
      nf.cycle = *cyc;
    }
    return nf;
  }
  // Reflexive-transitive closure over the acyclic relation.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t q = 0; q < n; ++q) reach[q][q] = true;
  for (auto& [a, b] : rel.arcs) reach[a][b] = true;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      if (reach[a][m])
        for (std::size_t b = 0; b < n; ++b)
          if (reach[m][b]) reach[a][b] = true;
  Freezing fr;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (reach[a][b])
        fr.comparabilities.push_back({static_cast<StateId>(a), static_cast<StateId>(b)});
  return fr;
}

bool is_freezing(const CellularAutomaton& ca) {
  return std::holds_alternative<Freezing>(check_freezing(ca));
}

ChangeProfile change_profile(const CellularAutomaton& ca,
                             const std::vector<Configuration>& configs,
                             std::int64_t window_radius, std::int64_t horizon) {
  if (horizon < 1) fail(ErrorKind::Format, "horizon must be >= 1");
  ChangeProfile prof;
  prof.horizon = horizon;
  prof.sample_count = static_cast<std::int64_t>(configs.size());
  std::vector<Coord> cells;
  for_each_in_ball(ca.dim(), window_radius, [&](const Coord& z) { cells.push_back(z); });
  for (const auto& c0 : configs) {
    std::map<Coord, std::int64_t> counts;
    Configuration cur = c0;
    std::vector<StateId> prev(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) prev[i] = cur.at(cells[i]);
    for (std::int64_t t = 1; t <= horizon; ++t) {
      cur = step(ca, cur);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const StateId s = cur.at(cells[i]);
        if (s != prev[i]) {
          ++counts[cells[i]];
          prev[i] = s;
        }
      }
    }
    for (auto& [z, k] : counts) {
      auto& slot = prof.per_cell[z];
      slot = std::max(slot, k);
      prof.max_changes_observed = std::max(prof.max_changes_observed, k);
    }
  }
  for (const auto& z : cells) prof.per_cell.emplace(z, 0);
  return prof;
}

namespace {

// Evaluates a 1D rule on a full window of radius r (>= rule radius), reading
// only the offsets the rule actually uses.
struct WindowEvaluator {
  const CellularAutomaton* ca;
  std::int64_t r;
  std::vector<std::size_t> pick; // index into window for each offset
  std::vector<StateId> tuple;

  WindowEvaluator(const CellularAutomaton& automaton, std::int64_t radius)
      : ca(&automaton), r(radius), tuple(automaton.neighborhood().size()) {
    for (const auto& off : automaton.neighborhood().offsets())
      pick.push_back(static_cast<std::size_t>(off[0] + r));
  }

  StateId operator()(const std::vector<StateId>& window) {
    for (std::size_t j = 0; j < pick.size(); ++j) tuple[j] = window[pick[j]];
    return ca->apply(tuple);
  }
};

} // namespace

DeBruijnGraph build_debruijn(const CellularAutomaton& ca) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "De Bruijn graph needs a 1D rule");
  const std::int64_t r = std::max<std::int64_t>(1, ca.radius());
  const std::size_t n = ca.alphabet().size();
  DeBruijnGraph g;
  g.r = r;
  g.n_states = n;
  std::size_t vertices = 1;
  for (std::int64_t i = 0; i < 2 * r; ++i) vertices *= n;
  g.vertex_count = vertices;

  WindowEvaluator eval(ca, r);
  const std::size_t wlen = static_cast<std::size_t>(2 * r + 1);
  std::vector<StateId> word(wlen, 0);
  // Word index: word[0] is the lowest digit. Vertex of a 2r-subword uses the
  // same digit convention.
  auto vertex_of = [&](std::size_t start) {
    std::size_t id = 0;
    for (std::size_t j = 2 * static_cast<std::size_t>(r); j-- > 0;)
      id = id * n + word[start + j];
    return id;
  };
  while (true) {
    std::vector<StateId> w(word.begin(), word.end());
    const StateId label = eval(w);
    DeBruijnGraph::Edge e;
    e.from = vertex_of(0);
    e.to = vertex_of(1);
    e.label = label;
    e.consistent = (label == word[static_cast<std::size_t>(r)]);
    g.edges.push_back(e);
    std::size_t j = 0;
    for (; j < wlen; ++j) {
      if (++word[j] < n) break;
      word[j] = 0;
    }
    if (j == wlen) break;
  }
  return g;
}

namespace {

Configuration circuit_to_configuration(const std::vector<StateId>& labels) {
  return Configuration::periodic(1, {static_cast<std::int64_t>(labels.size())},
                                 labels);
}

// Searches the consistent-edge subgraph for a circuit through a given edge.
std::optional<std::vector<StateId>> circuit_through(
    const DeBruijnGraph& g, const DeBruijnGraph::Edge& seed,
    const std::vector<std::vector<const DeBruijnGraph::Edge*>>& out_edges) {
  // BFS from seed.to back to seed.from over consistent edges.
  std::vector<char> visited(g.vertex_count, 0);
  std::vector<const DeBruijnGraph::Edge*> via(g.vertex_count, nullptr);
  std::queue<std::size_t> queue;
  visited[seed.to] = 1;
  queue.push(seed.to);
  std::vector<std::size_t> pred(g.vertex_count, 0);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop();
    if (cur == seed.from) break;
    for (const auto* e : out_edges[cur]) {
      if (!visited[e->to]) {
        visited[e->to] = 1;
        pred[e->to] = cur;
        via[e->to] = e;
        queue.push(e->to);
      }
    }
  }
  if (!visited[seed.from]) return std::nullopt;
  std::vector<StateId> labels;
  labels.push_back(seed.label);
  std::vector<StateId> back;
  for (std::size_t at = seed.from; at != seed.to; at = pred[at])
    back.push_back(via[at]->label);
  std::reverse(back.begin(), back.end());
  for (StateId s : back) labels.push_back(s);
  return labels;
}

} // namespace

FixedPointCensus census_fixed_points(const CellularAutomaton& ca) {
  if (ca.dim() != 1)
    fail(ErrorKind::WrongDimension, "fixed-point census needs a 1D rule");
  const std::size_t n = ca.alphabet().size();
  std::vector<StateId> uniform_fps;
  for (StateId q = 0; q < n; ++q) {
    std::vector<StateId> tuple(ca.neighborhood().size(), q);
    if (ca.apply(tuple) == q) uniform_fps.push_back(q);
  }
  if (uniform_fps.empty()) return NoneFound{};

  auto verify = [&](const Configuration& c) {
    if (step(ca, c) != c)
      fail(ErrorKind::Internal, "fixed-point witness failed verification");
    return c;
  };

  if (uniform_fps.size() >= 2) {
    AtLeastTwo two;
    two.witnesses.push_back(verify(Configuration::uniform(1, uniform_fps[0])));
    two.witnesses.push_back(verify(Configuration::uniform(1, uniform_fps[1])));
    return two;
  }

  const StateId q = uniform_fps[0];
  const DeBruijnGraph g = build_debruijn(ca);
  std::vector<std::vector<const DeBruijnGraph::Edge*>> out_edges(g.vertex_count);
  for (const auto& e : g.edges)
    if (e.consistent) out_edges[e.from].push_back(&e);
  for (const auto& e : g.edges) {
    if (!e.consistent || e.label == q) continue;
    if (auto labels = circuit_through(g, e, out_edges)) {
      AtLeastTwo two;
      two.witnesses.push_back(verify(Configuration::uniform(1, q)));
      two.witnesses.push_back(verify(circuit_to_configuration(*labels)));
      return two;
    }
  }
  return ExactlyOneUniform{q};
}

NilpotencyVerdict decide_nilpotency_1d(const CellularAutomaton& ca,
                                       ConvergenceCertificate certificate) {
  if (ca.dim() != 1)
    fail(ErrorKind::WrongDimension, "nilpotency decision needs a 1D rule");
  if (certificate == ConvergenceCertificate::None)
    fail(ErrorKind::NoCertificate,
         "nilpotency is only decided for convergent rules; supply a certificate");
  if (certificate == ConvergenceCertificate::Freezing && !is_freezing(ca))
    fail(ErrorKind::CertificateViolated, "rule is not freezing");
  auto census = census_fixed_points(ca);
  if (std::holds_alternative<NoneFound>(census))
    fail(ErrorKind::CertificateViolated,
         "no uniform fixed point: the rule cannot be convergent");
  if (auto* two = std::get_if<AtLeastTwo>(&census))
    return NotNilpotent{two->witnesses};
  return Nilpotent{};
}

bool is_spreading_state(const CellularAutomaton& ca, StateId s) {
  const std::size_t n = ca.alphabet().size();
  std::vector<StateId> tuple(ca.neighborhood().size(), 0);
  for (std::size_t idx = 0; idx < ca.table().size(); ++idx) {
    bool has_s = false;
    for (StateId t : tuple)
      if (t == s) has_s = true;
    if (has_s && ca.table()[idx] != s) return false;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (++tuple[j] < n) break;
      tuple[j] = 0;
    }
  }
  return true;
}

CellularAutomaton lift_spreading_product(const CellularAutomaton& ca,
                                         StateId spreading) {
  if (ca.dim() != 1 || ca.radius() != 1)
    fail(ErrorKind::WrongRadius, "spreading-product lift needs a 1D radius-1 rule");
  if (!is_spreading_state(ca, spreading))
    fail(ErrorKind::NotSpreading,
         "state " + ca.alphabet().name(spreading) + " does not spread");
  const std::size_t n = ca.alphabet().size();
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q)
    for (int b = 0; b < 2; ++b)
      names.push_back(ca.alphabet().name(static_cast<StateId>(q)) + "." +
                      (b ? "1" : "0"));
  Alphabet alpha(names);
  Neighborhood nb = line_neighborhood(-1, 1);
  WindowEvaluator eval(ca, 1);
  auto pack = [&](StateId q, int b) {
    return static_cast<StateId>(2 * q + b);
  };
  auto rule = [&](const std::vector<StateId>& t) -> StateId {
    StateId q1 = static_cast<StateId>(t[0] / 2), q2 = static_cast<StateId>(t[1] / 2),
            q3 = static_cast<StateId>(t[2] / 2);
    const int b2 = t[1] % 2;
    if (q1 == spreading || q2 == spreading || q3 == spreading)
      return pack(spreading, 0);
    return pack(eval({q1, q2, q3}), 1 - b2);
  };
  return CellularAutomaton::from_local_rule(alpha, nb, rule,
                                            ca.name() + "+bitflip");
}

CellularAutomaton group_blocks(const CellularAutomaton& ca, std::int64_t b) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "grouping needs a 1D rule");
  if (b < 1) fail(ErrorKind::Format, "block size must be >= 1");
  const std::size_t n = ca.alphabet().size();
  const std::int64_t r = ca.radius();
  const std::int64_t rg = (r + b - 1) / b; // ceil
  std::size_t block_states = 1;
  for (std::int64_t i = 0; i < b; ++i) block_states *= n;
  std::vector<std::string> names;
  names.reserve(block_states);
  for (std::size_t id = 0; id < block_states; ++id) {
    std::string nm;
    std::size_t rest = id;
    for (std::int64_t i = 0; i < b; ++i) {
      if (i) nm += "|";
      nm += ca.alphabet().name(static_cast<StateId>(rest % n));
      rest /= n;
    }
    names.push_back(nm);
  }
  WindowEvaluator eval(ca, r);
  auto rule = [&](const std::vector<StateId>& t) -> StateId {
    // Unpack the grouped window into base cells, then evaluate each block
    // component on its own base window.
    const std::int64_t cells = (2 * rg + 1) * b;
    std::vector<StateId> base(static_cast<std::size_t>(cells));
    for (std::int64_t j = 0; j < 2 * rg + 1; ++j) {
      std::size_t rest = t[static_cast<std::size_t>(j)];
      for (std::int64_t i = 0; i < b; ++i) {
        base[static_cast<std::size_t>(j * b + i)] = static_cast<StateId>(rest % n);
        rest /= n;
      }
    }
    std::size_t out = 0;
    for (std::int64_t i = b; i-- > 0;) {
      // Component i of the center block sits at base index rg*b + i.
      std::vector<StateId> window(static_cast<std::size_t>(2 * r + 1));
      for (std::int64_t o = -r; o <= r; ++o)
        window[static_cast<std::size_t>(o + r)] =
            base[static_cast<std::size_t>(rg * b + i + o)];
      out = out * n + eval(window);
    }
    return static_cast<StateId>(out);
  };
  return CellularAutomaton::from_local_rule(Alphabet(names),
                                            line_neighborhood(-rg, rg), rule,
                                            ca.name() + "^" + std::to_string(b));
}

Configuration group_configuration(const CellularAutomaton& ca, std::int64_t b,
                                  const Configuration& c) {
  if (c.dim() != 1) fail(ErrorKind::WrongDimension, "grouping needs a 1D configuration");
  const std::size_t n = ca.alphabet().size();
  const std::int64_t p = c.periods()[0];
  // Choose a grouped period that unpacks exactly: lcm(p, b) / b.
  std::int64_t g = p, bb = b;
  while (bb) {
    std::int64_t t = g % bb;
    g = bb;
    bb = t;
  }
  const std::int64_t lcm = p / g * b;
  std::vector<StateId> block(static_cast<std::size_t>(lcm / b));
  for (std::int64_t j = 0; j < lcm / b; ++j) {
    std::size_t packed = 0;
    for (std::int64_t i = b; i-- > 0;)
      packed = packed * n + c.background_at({j * b + i});
    block[static_cast<std::size_t>(j)] = static_cast<StateId>(packed);
  }
  Configuration out = Configuration::periodic(1, {lcm / b}, block);
  // Overrides touch only finitely many blocks.
  std::set<std::int64_t> touched;
  for (auto& [z, s] : c.overrides()) {
    std::int64_t j = z[0] >= 0 ? z[0] / b : -((-z[0] + b - 1) / b);
    touched.insert(j);
  }
  for (std::int64_t j : touched) {
    std::size_t packed = 0;
    for (std::int64_t i = b; i-- > 0;)
      packed = packed * n + c.at({j * b + i});
    out.set({j}, static_cast<StateId>(packed));
  }
  return out;
}

std::vector<StateId> limit_segment_with_counts(
    const CellularAutomaton& ca, const Configuration& c, std::int64_t z,
    std::int64_t z_prime, std::int64_t lambda_z, std::int64_t lambda_z_prime,
    std::int64_t k, std::int64_t hard_cap) {
  if (ca.dim() != 1 || ca.radius() > 1)
    fail(ErrorKind::WrongRadius, "limit segment needs a 1D radius-1 rule");
  if (z > z_prime) fail(ErrorKind::Format, "need z <= z'");
  Configuration cur = c;
  StateId prev_z = cur.at({z});
  StateId prev_zp = cur.at({z_prime});
  std::int64_t seen_z = 0, seen_zp = 0;
  std::int64_t t = 0;
  while (seen_z < lambda_z || seen_zp < lambda_z_prime) {
    if (t >= hard_cap)
      fail(ErrorKind::BadOracleCounts,
           "endpoint change counts were not reached within the cap");
    cur = step(ca, cur);
    ++t;
    const StateId sz = cur.at({z});
    const StateId szp = cur.at({z_prime});
    if (sz != prev_z) {
      ++seen_z;
      prev_z = sz;
    }
    if (szp != prev_zp) {
      ++seen_zp;
      prev_zp = szp;
    }
  }
  for (std::int64_t i = 0; i < k * (z_prime - z); ++i) cur = step(ca, cur);
  std::vector<StateId> out;
  for (std::int64_t p = z; p <= z_prime; ++p) out.push_back(cur.at({p}));
  return out;
}

} // namespace fca
