#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/error.hpp"
#include "fca/geometry.hpp"

namespace fca {

// A full configuration of Z^d: an axis-periodic background block plus a
// finite set of overrides. A uniform background is a 1x...x1 block. The
// canonical form never stores an override equal to the background value, so
// equality of configurations is plain member equality.
class Configuration {
public:
  Configuration() = default;

  static Configuration uniform(int dim, StateId state) {
    Configuration c;
    c.dim_ = dim;
    c.periods_.assign(static_cast<std::size_t>(dim), 1);
    c.block_.assign(1, state);
    return c;
  }

  static Configuration periodic(int dim, std::vector<std::int64_t> periods,
                                std::vector<StateId> block) {
    Configuration c;
    c.dim_ = dim;
    if (static_cast<int>(periods.size()) != dim)
      fail(ErrorKind::DimensionMismatch, "period vector dimension mismatch");
    std::int64_t vol = 1;
    for (auto p : periods) {
      if (p < 1) fail(ErrorKind::Format, "background periods must be positive");
      vol *= p;
    }
    if (static_cast<std::int64_t>(block.size()) != vol)
      fail(ErrorKind::Format, "background block size does not match periods");
    c.periods_ = std::move(periods);
    c.block_ = std::move(block);
    return c;
  }

  int dim() const { return dim_; }
  const std::vector<std::int64_t>& periods() const { return periods_; }
  const std::vector<StateId>& block() const { return block_; }
  const std::map<Coord, StateId>& overrides() const { return overrides_; }

  bool uniform_background() const { return block_.size() == 1; }

  StateId background_at(const Coord& z) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
      const std::int64_t p = periods_[static_cast<std::size_t>(a)];
      std::int64_t r = z[static_cast<std::size_t>(a)] % p;
      if (r < 0) r += p;
      idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(r);
    }
    return block_[idx];
  }

  StateId at(const Coord& z) const {
    auto it = overrides_.find(z);
    if (it != overrides_.end()) return it->second;
    return background_at(z);
  }

  // Keeps the canonical form: setting a cell to its background value erases
  // the override.
  void set(const Coord& z, StateId s) {
    if (static_cast<int>(z.size()) != dim_)
      fail(ErrorKind::DimensionMismatch, "cell coordinate dimension mismatch");
    if (background_at(z) == s)
      overrides_.erase(z);
    else
      overrides_[z] = s;
  }

  std::size_t max_state() const {
    std::size_t m = 0;
    for (auto s : block_) m = std::max<std::size_t>(m, s);
    for (auto& [z, s] : overrides_) m = std::max<std::size_t>(m, s);
    return m;
  }

  bool operator==(const Configuration& o) const {
    return dim_ == o.dim_ && periods_ == o.periods_ && block_ == o.block_ &&
           overrides_ == o.overrides_;
  }
  bool operator!=(const Configuration& o) const { return !(*this == o); }

private:
  int dim_ = 1;
  std::vector<std::int64_t> periods_{1};
  std::vector<StateId> block_{0};
  std::map<Coord, StateId> overrides_;
};

// A bounded configuration: all states on the ball B(radius).
class Pattern {
public:
  Pattern() = default;
  Pattern(int dim, std::int64_t radius, StateId fill = 0)
      : dim_(dim), radius_(radius),
        cells_(static_cast<std::size_t>(ball_volume(dim, radius)), fill) {
    if (radius < 0) fail(ErrorKind::Format, "pattern radius must be >= 0");
  }

  int dim() const { return dim_; }
  std::int64_t radius() const { return radius_; }
  const std::vector<StateId>& cells() const { return cells_; }
  std::vector<StateId>& cells() { return cells_; }

  std::size_t index(const Coord& z) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
      const std::int64_t v = z[static_cast<std::size_t>(a)];
      if (v < -radius_ || v > radius_)
        fail(ErrorKind::Format, "position outside pattern");
      idx = idx * static_cast<std::size_t>(2 * radius_ + 1) +
            static_cast<std::size_t>(v + radius_);
    }
    return idx;
  }

  StateId at(const Coord& z) const { return cells_[index(z)]; }
  void set(const Coord& z, StateId s) { cells_[index(z)] = s; }

  bool contains(const Coord& z) const {
    for (int a = 0; a < dim_; ++a) {
      const std::int64_t v = z[static_cast<std::size_t>(a)];
      if (v < -radius_ || v > radius_) return false;
    }
    return true;
  }

  bool operator==(const Pattern& o) const {
    return dim_ == o.dim_ && radius_ == o.radius_ && cells_ == o.cells_;
  }
  bool operator!=(const Pattern& o) const { return !(*this == o); }

private:
  int dim_ = 1;
  std::int64_t radius_ = 0;
  std::vector<StateId> cells_{0};
};

} // namespace fca
