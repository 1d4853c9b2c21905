#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"

namespace fca {

// Ulam's crystal growth rule: a 0 turns 1 exactly when its closed von Neumann
// neighborhood holds a single 1; 1s never change.
CellularAutomaton ulam();

// Bootstrap percolation style growth: a 0 turns 1 when at least `threshold`
// of the given counting offsets hold a 1.
CellularAutomaton threshold_growth(int dim, int threshold,
                                   const std::vector<Coord>& counting_offsets);
CellularAutomaton threshold_growth_2d(int threshold);

// min(current, F(current)) under a total state order given low-to-high.
CellularAutomaton freeze_under_order(const CellularAutomaton& inner,
                                     const std::vector<StateId>& low_to_high);

// Conway's Game of Life (for building life-without-death).
CellularAutomaton game_of_life();
CellularAutomaton life_without_death();

// S -> I when enough infected neighbors, I -> R, R stays. States S, I, R.
CellularAutomaton sir(int infection_threshold = 1);

// 2D: each cell takes the min of itself and the cell above.
CellularAutomaton vertical_min();

// 2D freezing simulation of a 1D rule: settled rows never change, a growing
// cell reads the row below through shifted offsets.
CellularAutomaton line_lift(const CellularAutomaton& inner);

// Abstract tile assembly system over the von Neumann neighborhood.
struct AtamTile {
  std::string name;
  // Glues as (color, strength), color 0 meaning no glue; sides in the order
  // north (0,1), east (1,0), south (0,-1), west (-1,0).
  std::array<std::pair<int, int>, 4> glues;
};

class AtamSystem {
public:
  AtamSystem(std::vector<AtamTile> tiles, const std::string& seed, int threshold);

  const std::vector<AtamTile>& tiles() const { return tiles_; }
  int threshold() const { return threshold_; }
  std::size_t seed() const { return seed_; }
  std::size_t tile_id(const std::string& name) const;

  // Empty-site id in the CA alphabet encoding: tiles get ids 0..|T|-1 in file
  // order (the min-selection order), the empty state is |T|.
  StateId empty_state() const { return static_cast<StateId>(tiles_.size()); }

  // Can tile t attach at a site whose four von Neumann neighbors (N, E, S, W)
  // carry the given states (empty_state() for vacant)?
  bool attaches(std::size_t t, const std::array<StateId, 4>& around) const;

  Configuration seed_configuration() const;

private:
  std::vector<AtamTile> tiles_;
  std::size_t seed_ = 0;
  int threshold_ = 2;
};

// All one-tile successors of c, ordered by position then tile order.
std::vector<Configuration> atam_step(const AtamSystem& sys, const Configuration& c);

// The freezing CA attaching, at every vacant attachable site at once, the
// least attachable tile in tile order.
CellularAutomaton atam_to_ca(const AtamSystem& sys);

// A five-tile strength-2 tree system with a unique terminal assembly; used
// as the stock directed example.
AtamSystem directed_toy_atam();

// All assemblies reachable from the seed (bounded); the terminal ones are
// those with no successor.
struct AtamClosure {
  std::vector<Configuration> terminal;
  std::size_t explored = 0;
};
AtamClosure atam_closure(const AtamSystem& sys, std::size_t max_assemblies = 100000);

struct ZooEntry {
  std::string name;
  std::string expected_class; // freezing | boundedChange | convergent | none
  std::function<CellularAutomaton()> build;
};

const std::vector<ZooEntry>& zoo_entries();
CellularAutomaton zoo_build(const std::string& name);

} // namespace fca
