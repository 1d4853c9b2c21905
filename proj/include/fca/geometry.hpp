#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace fca {

// A position in Z^d. Kept as a plain vector so the dimension stays dynamic;
// lexicographic operator< makes it usable as an ordered map key, which keeps
// iteration order (and therefore every simulation artifact) deterministic.
using Coord = std::vector<std::int64_t>;

inline Coord add(const Coord& a, const Coord& b) {
  Coord r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Coord sub(const Coord& a, const Coord& b) {
  Coord r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Coord origin(int dim) { return Coord(static_cast<std::size_t>(dim), 0); }

inline std::int64_t max_norm(const Coord& a) {
  std::int64_t m = 0;
  for (auto v : a) m = std::max(m, v < 0 ? -v : v);
  return m;
}

// Iterates the box [lo, hi] (inclusive, per axis) in lexicographic order.
inline void for_each_in_box(const Coord& lo, const Coord& hi,
                            const std::function<void(const Coord&)>& fn) {
  const std::size_t d = lo.size();
  Coord p = lo;
  while (true) {
    fn(p);
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (p[axis] < hi[axis]) {
        ++p[axis];
        for (std::size_t a = axis + 1; a < d; ++a) p[a] = lo[a];
        break;
      }
      if (axis == 0) return;
    }
    if (d == 0) return;
  }
}

// Iterates the centered ball B(n) = {z : |z|_inf <= n}.
inline void for_each_in_ball(int dim, std::int64_t n,
                             const std::function<void(const Coord&)>& fn) {
  Coord lo(static_cast<std::size_t>(dim), -n);
  Coord hi(static_cast<std::size_t>(dim), n);
  for_each_in_box(lo, hi, fn);
}

inline std::int64_t ball_volume(int dim, std::int64_t n) {
  std::int64_t v = 1;
  for (int i = 0; i < dim; ++i) v *= 2 * n + 1;
  return v;
}

} // namespace fca
