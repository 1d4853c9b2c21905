#pragma once

#include <iosfwd>
#include <string>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/minsky.hpp"
#include "fca/zoo.hpp"

namespace fca {

// Rule file: `dim`, `alphabet`, `neighborhood` headers, then either
// `builtin <zoo-name> [args...]` or one `entry` line per transition.
CellularAutomaton parse_rule(std::istream& in, const std::string& source = "");
CellularAutomaton load_rule(const std::string& path);
void write_rule(std::ostream& out, const CellularAutomaton& ca);
void save_rule(const std::string& path, const CellularAutomaton& ca);

// Configuration file: `dim`, then `background <state>` or
// `background-periodic <p1,..,pd> <states...>`, then `cell <coords> <state>`.
Configuration parse_configuration(std::istream& in, const Alphabet& alphabet,
                                  const std::string& source = "");
Configuration load_configuration(const std::string& path, const Alphabet& alphabet);
void write_configuration(std::ostream& out, const Configuration& c,
                         const Alphabet& alphabet);
void save_configuration(const std::string& path, const Configuration& c,
                        const Alphabet& alphabet);

// Pattern file: `dim`, `radius`, then states of B(radius) in lexicographic
// position order.
Pattern parse_pattern(std::istream& in, const Alphabet& alphabet,
                      const std::string& source = "");
Pattern load_pattern(const std::string& path, const Alphabet& alphabet);
void write_pattern(std::ostream& out, const Pattern& p, const Alphabet& alphabet);
void save_pattern(const std::string& path, const Pattern& p, const Alphabet& alphabet);

// Machine file: `states`, `initial`, `halting`, `counters`, `rule` lines.
MinskyMachine parse_machine(std::istream& in, const std::string& source = "");
MinskyMachine load_machine(const std::string& path);
void write_machine(std::ostream& out, const MinskyMachine& m);

// Tile-set file: `threshold`, `seed`, `order`, and `tile` lines.
AtamSystem parse_tileset(std::istream& in, const std::string& source = "");
AtamSystem load_tileset(const std::string& path);

// P2 (ASCII) PGM, one gray level per state id, maxval |Q|-1.
void write_pgm_rows(std::ostream& out, const std::vector<std::vector<StateId>>& rows,
                    std::size_t maxval);
// 1D space-time diagram: row t holds F^t(c) on [-window, window].
void render_space_time(std::ostream& out, const CellularAutomaton& ca,
                       const Configuration& c, std::int64_t steps,
                       std::int64_t window);
// 2D snapshot of F^steps(c) on B(window).
void render_snapshot(std::ostream& out, const CellularAutomaton& ca,
                     const Configuration& c, std::int64_t steps,
                     std::int64_t window);

} // namespace fca
