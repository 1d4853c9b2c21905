#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fca/error.hpp"
#include "fca/geometry.hpp"

namespace fca {

using StateId = std::uint16_t;

// Ordered set of state names; ids are contiguous from 0 in listing order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) fail(ErrorKind::Format, "empty state name");
      auto [it, fresh] = index_.emplace(names_[i], static_cast<StateId>(i));
      if (!fresh) fail(ErrorKind::Format, "duplicate state name: " + names_[i]);
    }
    if (names_.empty()) fail(ErrorKind::Format, "alphabet must be nonempty");
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(StateId s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<StateId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  StateId id(const std::string& name) const {
    auto s = find(name);
    if (!s) fail(ErrorKind::UnknownState, "unknown state: " + name);
    return *s;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, StateId> index_;
};

class Neighborhood {
public:
  Neighborhood() = default;
  Neighborhood(int dim, std::vector<Coord> offsets)
      : dim_(dim), offsets_(std::move(offsets)) {
    if (dim_ < 1) fail(ErrorKind::WrongDimension, "dimension must be >= 1");
    std::map<Coord, int> seen;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      if (static_cast<int>(offsets_[i].size()) != dim_)
        fail(ErrorKind::DimensionMismatch, "offset dimension mismatch");
      if (!seen.emplace(offsets_[i], 1).second)
        fail(ErrorKind::Format, "duplicate neighborhood offset");
      radius_ = std::max(radius_, max_norm(offsets_[i]));
      if (offsets_[i] == origin(dim_)) center_index_ = static_cast<int>(i);
    }
    if (offsets_.empty()) fail(ErrorKind::Format, "neighborhood must be nonempty");
  }

  int dim() const { return dim_; }
  std::int64_t radius() const { return radius_; }
  const std::vector<Coord>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  // Index of the zero offset, or -1 when the neighborhood excludes the center.
  int center_index() const { return center_index_; }

  bool operator==(const Neighborhood& o) const {
    return dim_ == o.dim_ && offsets_ == o.offsets_;
  }

private:
  int dim_ = 1;
  std::vector<Coord> offsets_;
  std::int64_t radius_ = 0;
  int center_index_ = -1;
};

// A cellular automaton given by its complete transition table. Entry index is
// mixed-radix over the neighborhood tuple: offset 0 is the lowest digit.
class CellularAutomaton {
public:
  CellularAutomaton() = default;
  CellularAutomaton(Alphabet alphabet, Neighborhood neighborhood,
                    std::vector<StateId> table, std::string name = "")
      : alphabet_(std::move(alphabet)), neighborhood_(std::move(neighborhood)),
        table_(std::move(table)), name_(std::move(name)) {
    std::size_t expect = 1;
    for (std::size_t i = 0; i < neighborhood_.size(); ++i)
      expect *= alphabet_.size();
    if (table_.size() != expect)
      fail(ErrorKind::Format, "transition table has wrong size");
    for (StateId s : table_)
      if (s >= alphabet_.size()) fail(ErrorKind::UnknownState, "table output out of range");
  }

  static CellularAutomaton from_local_rule(
      Alphabet alphabet, Neighborhood neighborhood,
      const std::function<StateId(const std::vector<StateId>&)>& rule,
      std::string name = "") {
    const std::size_t n = alphabet.size();
    std::size_t entries = 1;
    for (std::size_t i = 0; i < neighborhood.size(); ++i) entries *= n;
    std::vector<StateId> table(entries);
    std::vector<StateId> tuple(neighborhood.size(), 0);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      table[idx] = rule(tuple);
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (++tuple[j] < n) break;
        tuple[j] = 0;
      }
    }
    return CellularAutomaton(std::move(alphabet), std::move(neighborhood),
                             std::move(table), std::move(name));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const Neighborhood& neighborhood() const { return neighborhood_; }
  const std::vector<StateId>& table() const { return table_; }
  const std::string& name() const { return name_; }
  int dim() const { return neighborhood_.dim(); }
  std::int64_t radius() const { return neighborhood_.radius(); }

  std::size_t tuple_index(const std::vector<StateId>& tuple) const {
    std::size_t idx = 0;
    const std::size_t n = alphabet_.size();
    for (std::size_t j = tuple.size(); j-- > 0;) idx = idx * n + tuple[j];
    return idx;
  }

  StateId apply(const std::vector<StateId>& tuple) const {
    return table_[tuple_index(tuple)];
  }

  // True when every context maps state q to itself.
  bool is_invariant_state(StateId q) const {
    const std::size_t n = alphabet_.size();
    const int ci = neighborhood_.center_index();
    std::vector<StateId> tuple(neighborhood_.size(), 0);
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
      if (ci < 0 || tuple[static_cast<std::size_t>(ci)] == q) {
        if (table_[idx] != q) {
          if (ci >= 0) return false;
          // Without a center the cell's own state is unconstrained, so any
          // non-q output is a possible change away from q.
          return false;
        }
      }
      for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (++tuple[j] < n) break;
        tuple[j] = 0;
      }
    }
    return true;
  }

private:
  Alphabet alphabet_;
  Neighborhood neighborhood_;
  std::vector<StateId> table_;
  std::string name_;
};

inline Neighborhood line_neighborhood(std::int64_t lo, std::int64_t hi) {
  std::vector<Coord> offs;
  for (std::int64_t v = lo; v <= hi; ++v) offs.push_back({v});
  return Neighborhood(1, std::move(offs));
}

inline Neighborhood von_neumann(bool include_center = true) {
  std::vector<Coord> offs;
  if (include_center) offs.push_back({0, 0});
  offs.push_back({1, 0});
  offs.push_back({-1, 0});
  offs.push_back({0, 1});
  offs.push_back({0, -1});
  return Neighborhood(2, std::move(offs));
}

inline Neighborhood moore_neighborhood() {
  std::vector<Coord> offs;
  for (std::int64_t x = -1; x <= 1; ++x)
    for (std::int64_t y = -1; y <= 1; ++y) offs.push_back({x, y});
  return Neighborhood(2, std::move(offs));
}

inline Neighborhood ball_neighborhood(int dim, std::int64_t r) {
  std::vector<Coord> offs;
  for_each_in_ball(dim, r, [&](const Coord& z) { offs.push_back(z); });
  return Neighborhood(dim, std::move(offs));
}

} // namespace fca
