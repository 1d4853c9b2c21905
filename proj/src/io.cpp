#include "fca/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "fca/engine.hpp"

namespace fca {

namespace {

struct LineReader {
  std::istream* in;
  std::string source;
  std::int64_t line_no = 0;

  // Next nonempty, non-comment line split into tokens.
  bool next(std::vector<std::string>* tokens) {
    std::string line;
    while (std::getline(*in, line)) {
      ++line_no;
      std::istringstream ss(line);
      tokens->clear();
      std::string tok;
      while (ss >> tok) {
        if (tok[0] == '#') break;
        tokens->push_back(tok);
      }
      if (!tokens->empty()) return true;
    }
    return false;
  }

  [[noreturn]] void error(const std::string& msg) const {
    std::ostringstream out;
    if (!source.empty()) out << source << ":";
    out << line_no << ": " << msg;
    fail(ErrorKind::Format, out.str());
  }
};

std::int64_t parse_int(const LineReader& rd, const std::string& tok) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) rd.error("not an integer: " + tok);
    return v;
  } catch (const std::exception&) {
    rd.error("not an integer: " + tok);
  }
}

Coord parse_coord(const LineReader& rd, const std::string& tok, int dim) {
  Coord z;
  std::string cur;
  for (char c : tok) {
    if (c == ',') {
      z.push_back(parse_int(rd, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  z.push_back(parse_int(rd, cur));
  if (static_cast<int>(z.size()) != dim)
    rd.error("coordinate has wrong dimension: " + tok);
  return z;
}

std::string coord_to_string(const Coord& z) {
  std::string out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(z[i]);
  }
  return out;
}

} // namespace

CellularAutomaton parse_rule(std::istream& in, const std::string& source) {
  LineReader rd{&in, source};
  std::vector<std::string> tok;
  std::optional<int> dim;
  std::optional<Alphabet> alphabet;
  std::optional<Neighborhood> neighborhood;
  std::map<std::size_t, StateId> entries;
  std::optional<CellularAutomaton> builtin;
  std::string name;

  while (rd.next(&tok)) {
    const std::string& key = tok[0];
    if (key == "dim") {
      if (tok.size() != 2) rd.error("dim wants one value");
      dim = static_cast<int>(parse_int(rd, tok[1]));
    } else if (key == "name") {
      if (tok.size() != 2) rd.error("name wants one token");
      name = tok[1];
    } else if (key == "alphabet") {
      alphabet = Alphabet(std::vector<std::string>(tok.begin() + 1, tok.end()));
    } else if (key == "neighborhood") {
      if (!dim) rd.error("neighborhood needs dim first");
      std::vector<Coord> offs;
      for (std::size_t i = 1; i < tok.size(); ++i)
        offs.push_back(parse_coord(rd, tok[i], *dim));
      neighborhood = Neighborhood(*dim, offs);
    } else if (key == "builtin") {
      if (tok.size() != 2) rd.error("builtin wants a zoo rule name");
      try {
        builtin = zoo_build(tok[1]);
      } catch (const Error& e) {
        rd.error(e.what());
      }
    } else if (key == "entry") {
      if (!alphabet || !neighborhood) rd.error("entry needs alphabet and neighborhood first");
      const std::size_t nv = neighborhood->size();
      if (tok.size() != nv + 3 || tok[nv + 1] != "->")
        rd.error("entry wants " + std::to_string(nv) + " states, '->', output");
      std::vector<StateId> tuple;
      for (std::size_t i = 1; i <= nv; ++i) {
        auto s = alphabet->find(tok[i]);
        if (!s) rd.error("unknown state: " + tok[i]);
        tuple.push_back(*s);
      }
      auto out = alphabet->find(tok[nv + 2]);
      if (!out) rd.error("unknown state: " + tok[nv + 2]);
      std::size_t idx = 0;
      for (std::size_t j = tuple.size(); j-- > 0;)
        idx = idx * alphabet->size() + tuple[j];
      if (!entries.emplace(idx, *out).second) rd.error("duplicate entry");
    } else {
      rd.error("unknown directive: " + key);
    }
  }

  if (builtin) {
    if (dim && builtin->dim() != *dim) rd.error("builtin dimension differs from header");
    if (alphabet && !(builtin->alphabet() == *alphabet))
      rd.error("builtin alphabet differs from header");
    if (neighborhood && !(builtin->neighborhood() == *neighborhood))
      rd.error("builtin neighborhood differs from header");
    return *builtin;
  }
  if (!dim || !alphabet || !neighborhood)
    rd.error("rule needs dim, alphabet and neighborhood");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < neighborhood->size(); ++i) expected *= alphabet->size();
  if (entries.size() != expected)
    rd.error("transition table incomplete: " + std::to_string(entries.size()) +
             " of " + std::to_string(expected) + " entries");
  std::vector<StateId> table(expected);
  for (auto& [idx, out] : entries) table[idx] = out;
  return CellularAutomaton(*alphabet, *neighborhood, table, name);
}

CellularAutomaton load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Format, "cannot open rule file: " + path);
  return parse_rule(in, path);
}

void write_rule(std::ostream& out, const CellularAutomaton& ca) {
  out << "dim " << ca.dim() << "\n";
  if (!ca.name().empty()) out << "name " << ca.name() << "\n";
  out << "alphabet";
  for (const auto& nm : ca.alphabet().names()) out << " " << nm;
  out << "\n";
  out << "neighborhood";
  for (const auto& off : ca.neighborhood().offsets()) out << " " << coord_to_string(off);
  out << "\n";
  const std::size_t n = ca.alphabet().size();
  std::vector<StateId> tuple(ca.neighborhood().size(), 0);
  for (std::size_t idx = 0; idx < ca.table().size(); ++idx) {
    out << "entry";
    for (StateId s : tuple) out << " " << ca.alphabet().name(s);
    out << " -> " << ca.alphabet().name(ca.table()[idx]) << "\n";
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (++tuple[j] < n) break;
      tuple[j] = 0;
    }
  }
}

void save_rule(const std::string& path, const CellularAutomaton& ca) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Format, "cannot write rule file: " + path);
  write_rule(out, ca);
}

Configuration parse_configuration(std::istream& in, const Alphabet& alphabet,
                                  const std::string& source) {
  LineReader rd{&in, source};
  std::vector<std::string> tok;
  std::optional<int> dim;
  std::optional<Configuration> config;
  auto state_of = [&](const std::string& nm) {
    auto s = alphabet.find(nm);
    if (!s) rd.error("unknown state: " + nm);
    return *s;
  };
  while (rd.next(&tok)) {
    const std::string& key = tok[0];
    if (key == "dim") {
      if (tok.size() != 2) rd.error("dim wants one value");
      dim = static_cast<int>(parse_int(rd, tok[1]));
    } else if (key == "background") {
      if (!dim) rd.error("background needs dim first");
      if (tok.size() != 2) rd.error("background wants one state");
      config = Configuration::uniform(*dim, state_of(tok[1]));
    } else if (key == "background-periodic") {
      if (!dim) rd.error("background-periodic needs dim first");
      if (tok.size() < 3) rd.error("background-periodic wants periods and a block");
      Coord periods = parse_coord(rd, tok[1], *dim);
      std::int64_t vol = 1;
      for (auto p : periods) vol *= p;
      if (static_cast<std::int64_t>(tok.size()) - 2 != vol)
        rd.error("block wants " + std::to_string(vol) + " states");
      std::vector<StateId> block;
      for (std::size_t i = 2; i < tok.size(); ++i) block.push_back(state_of(tok[i]));
      config = Configuration::periodic(
          *dim, std::vector<std::int64_t>(periods.begin(), periods.end()), block);
    } else if (key == "cell") {
      if (!config) rd.error("cell needs a background first");
      if (tok.size() != 3) rd.error("cell wants coordinates and a state");
      config->set(parse_coord(rd, tok[1], *dim), state_of(tok[2]));
    } else {
      rd.error("unknown directive: " + key);
    }
  }
  if (!config) rd.error("configuration needs a background");
  return *config;
}

Configuration load_configuration(const std::string& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Format, "cannot open configuration file: " + path);
  return parse_configuration(in, alphabet, path);
}

void write_configuration(std::ostream& out, const Configuration& c,
                         const Alphabet& alphabet) {
  out << "dim " << c.dim() << "\n";
  if (c.uniform_background()) {
    out << "background " << alphabet.name(c.block()[0]) << "\n";
  } else {
    out << "background-periodic ";
    for (std::size_t i = 0; i < c.periods().size(); ++i) {
      if (i) out << ",";
      out << c.periods()[i];
    }
    for (StateId s : c.block()) out << " " << alphabet.name(s);
    out << "\n";
  }
  for (auto& [z, s] : c.overrides())
    out << "cell " << coord_to_string(z) << " " << alphabet.name(s) << "\n";
}

void save_configuration(const std::string& path, const Configuration& c,
                        const Alphabet& alphabet) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Format, "cannot write configuration file: " + path);
  write_configuration(out, c, alphabet);
}

Pattern parse_pattern(std::istream& in, const Alphabet& alphabet,
                      const std::string& source) {
  LineReader rd{&in, source};
  std::vector<std::string> tok;
  std::optional<int> dim;
  std::optional<std::int64_t> radius;
  std::vector<std::string> cells;
  bool in_cells = false;
  while (rd.next(&tok)) {
    const std::string& key = tok[0];
    if (key == "dim" && !in_cells) {
      if (tok.size() != 2) rd.error("dim wants one value");
      dim = static_cast<int>(parse_int(rd, tok[1]));
    } else if (key == "radius" && !in_cells) {
      if (tok.size() != 2) rd.error("radius wants one value");
      radius = parse_int(rd, tok[1]);
    } else if (key == "cells") {
      in_cells = true;
      for (std::size_t i = 1; i < tok.size(); ++i) cells.push_back(tok[i]);
    } else if (in_cells) {
      for (const auto& t : tok) cells.push_back(t);
    } else {
      rd.error("unknown directive: " + key);
    }
  }
  if (!dim || !radius) rd.error("pattern needs dim and radius");
  Pattern p(*dim, *radius);
  if (static_cast<std::int64_t>(cells.size()) != ball_volume(*dim, *radius))
    rd.error("pattern wants " + std::to_string(ball_volume(*dim, *radius)) +
             " cells, got " + std::to_string(cells.size()));
  std::size_t i = 0;
  bool bad = false;
  std::string bad_name;
  for_each_in_ball(*dim, *radius, [&](const Coord& z) {
    auto s = alphabet.find(cells[i++]);
    if (!s) {
      bad = true;
      bad_name = cells[i - 1];
      return;
    }
    p.set(z, *s);
  });
  if (bad) rd.error("unknown state: " + bad_name);
  return p;
}

Pattern load_pattern(const std::string& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Format, "cannot open pattern file: " + path);
  return parse_pattern(in, alphabet, path);
}

void write_pattern(std::ostream& out, const Pattern& p, const Alphabet& alphabet) {
  out << "dim " << p.dim() << "\n";
  out << "radius " << p.radius() << "\n";
  out << "cells";
  for (StateId s : p.cells()) out << " " << alphabet.name(s);
  out << "\n";
}

void save_pattern(const std::string& path, const Pattern& p, const Alphabet& alphabet) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Format, "cannot write pattern file: " + path);
  write_pattern(out, p, alphabet);
}

MinskyMachine parse_machine(std::istream& in, const std::string& source) {
  LineReader rd{&in, source};
  std::vector<std::string> tok;
  std::vector<std::string> states;
  std::string initial, halting;
  int counters = 0;
  std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>> rules;
  auto state_id = [&](const std::string& nm) {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == nm) return static_cast<int>(i);
    rd.error("unknown machine state: " + nm);
    return -1;
  };
  while (rd.next(&tok)) {
    const std::string& key = tok[0];
    if (key == "states") {
      states.assign(tok.begin() + 1, tok.end());
    } else if (key == "initial") {
      if (tok.size() != 2) rd.error("initial wants one state");
      initial = tok[1];
    } else if (key == "halting") {
      if (tok.size() != 2) rd.error("halting wants one state");
      halting = tok[1];
    } else if (key == "counters") {
      if (tok.size() != 2) rd.error("counters wants one value");
      counters = static_cast<int>(parse_int(rd, tok[1]));
    } else if (key == "rule") {
      if (counters < 1) rd.error("rule needs counters first");
      if (states.empty()) rd.error("rule needs states first");
      if (tok.size() != 6 || tok[3] != "->")
        rd.error("rule wants: rule <state> <flags> -> <state> <deltas>");
      const int from = state_id(tok[1]);
      const int to = state_id(tok[4]);
      const std::string& flags = tok[2];
      const std::string& deltas = tok[5];
      if (static_cast<int>(flags.size()) != counters &&
          !(flags == "*" && counters >= 1))
        rd.error("flags want " + std::to_string(counters) + " characters or *");
      if (static_cast<int>(deltas.size()) != counters)
        rd.error("deltas want " + std::to_string(counters) + " characters");
      std::vector<int> dv;
      for (char c : deltas) {
        if (c == '-')
          dv.push_back(-1);
        else if (c == '0')
          dv.push_back(0);
        else if (c == '+')
          dv.push_back(1);
        else
          rd.error("delta characters are -, 0, +");
      }
      // Expand wildcard flag positions.
      std::vector<std::vector<int>> flag_sets;
      flag_sets.push_back({});
      const std::string effective = flags == "*" ? std::string(counters, '*') : flags;
      for (char c : effective) {
        std::vector<std::vector<int>> next;
        for (auto& fs : flag_sets) {
          if (c == '0' || c == '*') {
            auto copy = fs;
            copy.push_back(0);
            next.push_back(copy);
          }
          if (c == '1' || c == '*') {
            auto copy = fs;
            copy.push_back(1);
            next.push_back(copy);
          }
          if (c != '0' && c != '1' && c != '*')
            rd.error("flag characters are 0, 1, *");
        }
        flag_sets = std::move(next);
      }
      for (auto& fs : flag_sets) {
        if (!rules.emplace(std::make_pair(from, fs), std::make_pair(to, dv)).second)
          rd.error("duplicate rule for state " + tok[1]);
      }
    } else {
      rd.error("unknown directive: " + key);
    }
  }
  try {
    return MinskyMachine(states, initial, halting, counters, rules);
  } catch (const Error& e) {
    rd.error(e.what());
  }
}

MinskyMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Format, "cannot open machine file: " + path);
  return parse_machine(in, path);
}

void write_machine(std::ostream& out, const MinskyMachine& m) {
  out << "states";
  for (const auto& s : m.states()) out << " " << s;
  out << "\n";
  out << "initial " << m.state_name(m.initial()) << "\n";
  out << "halting " << m.state_name(m.halting()) << "\n";
  out << "counters " << m.counters() << "\n";
  const std::size_t patterns = static_cast<std::size_t>(1) << m.counters();
  for (int q = 0; q < static_cast<int>(m.states().size()); ++q) {
    if (q == m.halting()) continue;
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      std::vector<int> flags(static_cast<std::size_t>(m.counters()));
      std::string fs;
      for (int i = 0; i < m.counters(); ++i) {
        flags[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        fs += flags[static_cast<std::size_t>(i)] ? '1' : '0';
      }
      auto [to, dv] = m.transition(q, flags);
      std::string ds;
      for (int dvi : dv) ds += dvi < 0 ? '-' : (dvi > 0 ? '+' : '0');
      out << "rule " << m.state_name(q) << " " << fs << " -> " << m.state_name(to)
          << " " << ds << "\n";
    }
  }
}

AtamSystem parse_tileset(std::istream& in, const std::string& source) {
  LineReader rd{&in, source};
  std::vector<std::string> tok;
  int threshold = 2;
  std::string seed;
  std::vector<AtamTile> tiles;
  std::map<std::string, int> colors; // name -> positive id
  auto color_id = [&](const std::string& nm) {
    auto [it, fresh] = colors.emplace(nm, static_cast<int>(colors.size()) + 1);
    return it->second;
  };
  while (rd.next(&tok)) {
    const std::string& key = tok[0];
    if (key == "threshold") {
      if (tok.size() != 2) rd.error("threshold wants one value");
      threshold = static_cast<int>(parse_int(rd, tok[1]));
    } else if (key == "seed") {
      if (tok.size() != 2) rd.error("seed wants one tile name");
      seed = tok[1];
    } else if (key == "tile") {
      // tile <name> <N> <E> <S> <W>, each side color,strength or -
      if (tok.size() != 6) rd.error("tile wants a name and four sides");
      AtamTile tile;
      tile.name = tok[1];
      for (int side = 0; side < 4; ++side) {
        const std::string& spec = tok[static_cast<std::size_t>(side) + 2];
        if (spec == "-") {
          tile.glues[static_cast<std::size_t>(side)] = {0, 0};
          continue;
        }
        auto comma = spec.find(',');
        if (comma == std::string::npos)
          rd.error("glue wants color,strength or -: " + spec);
        tile.glues[static_cast<std::size_t>(side)] = {
            color_id(spec.substr(0, comma)),
            static_cast<int>(parse_int(rd, spec.substr(comma + 1)))};
      }
      tiles.push_back(tile);
    } else {
      rd.error("unknown directive: " + key);
    }
  }
  try {
    return AtamSystem(tiles, seed, threshold);
  } catch (const Error& e) {
    rd.error(e.what());
  }
}

AtamSystem load_tileset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Format, "cannot open tile-set file: " + path);
  return parse_tileset(in, path);
}

void write_pgm_rows(std::ostream& out, const std::vector<std::vector<StateId>>& rows,
                    std::size_t maxval) {
  const std::size_t h = rows.size();
  const std::size_t w = h ? rows[0].size() : 0;
  out << "P2\n" << w << " " << h << "\n" << maxval << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << " ";
      out << row[i];
    }
    out << "\n";
  }
}

void render_space_time(std::ostream& out, const CellularAutomaton& ca,
                       const Configuration& c, std::int64_t steps,
                       std::int64_t window) {
  if (ca.dim() != 1) fail(ErrorKind::WrongDimension, "space-time render is 1D");
  std::vector<std::vector<StateId>> rows;
  Configuration cur = c;
  for (std::int64_t t = 0; t <= steps; ++t) {
    if (t > 0) cur = step(ca, cur);
    std::vector<StateId> row;
    for (std::int64_t z = -window; z <= window; ++z) row.push_back(cur.at({z}));
    rows.push_back(std::move(row));
  }
  write_pgm_rows(out, rows, ca.alphabet().size() - 1);
}

void render_snapshot(std::ostream& out, const CellularAutomaton& ca,
                     const Configuration& c, std::int64_t steps,
                     std::int64_t window) {
  if (ca.dim() != 2) fail(ErrorKind::WrongDimension, "snapshot render is 2D");
  auto orbit = simulate(ca, c, steps);
  const Configuration& last = orbit.back();
  std::vector<std::vector<StateId>> rows;
  for (std::int64_t y = window; y >= -window; --y) {
    std::vector<StateId> row;
    for (std::int64_t x = -window; x <= window; ++x) row.push_back(last.at({x, y}));
    rows.push_back(std::move(row));
  }
  write_pgm_rows(out, rows, ca.alphabet().size() - 1);
}

} // namespace fca
