#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ionet/extnat.hpp"
#include "ionet/net.hpp"

namespace ionet {

class DimensionMismatchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Per-place interval constraints [lower, upper] with upper in N + {omega}.
/// Denotes the set of markings within all bounds. Empty iff some bound pair
/// crosses.
struct Cube {
  std::vector<Count> lower;
  std::vector<ExtNat> upper;

  Cube() = default;
  Cube(std::vector<Count> lo, std::vector<ExtNat> up)
      : lower(std::move(lo)), upper(std::move(up)) {}

  std::size_t dim() const { return lower.size(); }

  static Cube universe(std::size_t n) {
    return Cube(std::vector<Count>(n, 0), std::vector<ExtNat>(n, ExtNat::omega()));
  }

  static Cube point(const Marking& m) {
    Cube c;
    c.lower = m.counts;
    c.upper.reserve(m.size());
    for (Count v : m.counts) c.upper.push_back(ExtNat(v));
    return c;
  }

  friend bool operator==(const Cube& a, const Cube& b) {
    return a.lower == b.lower && a.upper == b.upper;
  }
  friend bool operator!=(const Cube& a, const Cube& b) { return !(a == b); }
};

inline void check_dim(const Cube& c, std::size_t n) {
  if (c.dim() != n)
    throw DimensionMismatchError("cube dimension " + std::to_string(c.dim()) +
                                 ", expected " + std::to_string(n));
}

inline bool is_empty(const Cube& c) {
  for (std::size_t p = 0; p < c.dim(); ++p)
    if (ExtNat(c.lower[p]) > c.upper[p]) return true;
  return false;
}

inline bool member(const Marking& m, const Cube& c) {
  if (m.size() != c.dim())
    throw DimensionMismatchError("marking/cube dimension mismatch");
  for (std::size_t p = 0; p < c.dim(); ++p)
    if (m[p] < c.lower[p] || ExtNat(m[p]) > c.upper[p]) return false;
  return true;
}

inline Cube intersect(const Cube& a, const Cube& b) {
  check_dim(b, a.dim());
  Cube r = a;
  for (std::size_t p = 0; p < a.dim(); ++p) {
    r.lower[p] = std::max(a.lower[p], b.lower[p]);
    r.upper[p] = min(a.upper[p], b.upper[p]);
  }
  return r;
}

inline bool cubes_intersect(const Cube& a, const Cube& b) {
  for (std::size_t p = 0; p < a.dim(); ++p)
    if (ExtNat(std::max(a.lower[p], b.lower[p])) > min(a.upper[p], b.upper[p]))
      return false;
  return true;
}

/// a subsumes b as a single cube (b's denotation inside a's).
inline bool cube_subsumes(const Cube& a, const Cube& b) {
  for (std::size_t p = 0; p < a.dim(); ++p)
    if (b.lower[p] < a.lower[p] || b.upper[p] > a.upper[p]) return false;
  return true;
}

/// Largest finite constant in the bounds (lowers, and uppers that are not
/// omega). The universal cube has norm 0.
inline Count norm(const Cube& c) {
  Count n = 0;
  for (std::size_t p = 0; p < c.dim(); ++p) {
    n = std::max(n, c.lower[p]);
    if (c.upper[p].is_finite()) n = std::max(n, c.upper[p].value());
  }
  return n;
}

/// c minus r as pairwise-disjoint cubes. At most 2*dim pieces.
inline std::vector<Cube> cube_minus(const Cube& c, const Cube& r) {
  if (is_empty(c)) return {};
  if (is_empty(r) || !cubes_intersect(c, r)) return {c};
  std::vector<Cube> pieces;
  Cube core = c;  // progressively clipped to r, dimension by dimension
  for (std::size_t p = 0; p < c.dim(); ++p) {
    if (r.lower[p] > 0 && core.lower[p] < r.lower[p]) {
      Cube below = core;
      below.upper[p] = min(core.upper[p], ExtNat(r.lower[p] - 1));
      pieces.push_back(std::move(below));
    }
    if (r.upper[p].is_finite() && core.upper[p] > r.upper[p]) {
      Cube above = core;
      above.lower[p] = std::max(core.lower[p], r.upper[p].value() + 1);
      pieces.push_back(std::move(above));
    }
    core.lower[p] = std::max(core.lower[p], r.lower[p]);
    core.upper[p] = min(core.upper[p], r.upper[p]);
  }
  return pieces;
}

/// Finite union of cubes. The representation is not kept minimal or
/// disjoint; all set operations are exact on denotations regardless.
struct CountingSet {
  std::vector<Cube> cubes;

  CountingSet() = default;
  explicit CountingSet(std::vector<Cube> cs) : cubes(std::move(cs)) {}
  explicit CountingSet(Cube c) { cubes.push_back(std::move(c)); }

  static CountingSet empty() { return CountingSet(); }
  static CountingSet universal(std::size_t n) {
    return CountingSet(Cube::universe(n));
  }
};

inline void check_dims(const CountingSet& s, std::size_t n) {
  for (const auto& c : s.cubes) check_dim(c, n);
}

inline bool member(const Marking& m, const CountingSet& s) {
  for (const auto& c : s.cubes)
    if (member(m, c)) return true;
  return false;
}

inline bool is_empty(const CountingSet& s) {
  for (const auto& c : s.cubes)
    if (!is_empty(c)) return false;
  return true;
}

inline Count norm(const CountingSet& s) {
  Count n = 0;
  for (const auto& c : s.cubes)
    if (!is_empty(c)) n = std::max(n, norm(c));
  return n;
}

/// Drops empty cubes and cubes contained in a single other cube of s.
/// Denotation unchanged; order of survivors preserved.
inline CountingSet normalize(const CountingSet& s) {
  std::vector<Cube> kept;
  for (const auto& c : s.cubes) {
    if (is_empty(c)) continue;
    bool dominated = false;
    for (const auto& k : kept)
      if (cube_subsumes(k, c)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    // Remove earlier cubes that the newcomer strictly covers.
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [&](const Cube& k) { return cube_subsumes(c, k); }),
               kept.end());
    kept.push_back(c);
  }
  return CountingSet(std::move(kept));
}

inline CountingSet unite(const CountingSet& a, const CountingSet& b) {
  CountingSet r = a;
  r.cubes.insert(r.cubes.end(), b.cubes.begin(), b.cubes.end());
  return normalize(r);
}

inline CountingSet intersect(const CountingSet& a, const CountingSet& b) {
  CountingSet r;
  for (const auto& ca : a.cubes)
    for (const auto& cb : b.cubes) {
      Cube c = intersect(ca, cb);
      if (!is_empty(c)) r.cubes.push_back(std::move(c));
    }
  return normalize(r);
}

/// a minus b, by subtracting b's cubes one at a time from the pieces of a.
/// Denotationally equal to intersecting a with the complement of b.
inline CountingSet difference(const CountingSet& a, const CountingSet& b) {
  std::vector<Cube> pieces;
  for (const auto& c : a.cubes)
    if (!is_empty(c)) pieces.push_back(c);
  for (const auto& r : b.cubes) {
    if (is_empty(r)) continue;
    std::vector<Cube> next;
    for (const auto& piece : pieces) {
      auto parts = cube_minus(piece, r);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return normalize(CountingSet(std::move(pieces)));
}

/// Spec construction: for each place, one cube below the lower bound
/// (omitted when the bound is 0) and one above a finite upper bound.
/// At most 2*dim cubes; exact complement of the cube's denotation.
inline CountingSet complement(const Cube& c) {
  std::size_t n = c.dim();
  CountingSet r;
  for (std::size_t p = 0; p < n; ++p) {
    if (c.lower[p] > 0) {
      Cube below = Cube::universe(n);
      below.upper[p] = ExtNat(c.lower[p] - 1);
      r.cubes.push_back(std::move(below));
    }
    if (c.upper[p].is_finite()) {
      Cube above = Cube::universe(n);
      above.lower[p] = c.upper[p].value() + 1;
      r.cubes.push_back(std::move(above));
    }
  }
  return r;
}

inline CountingSet complement(const CountingSet& s, std::size_t n) {
  check_dims(s, n);
  return difference(CountingSet::universal(n), s);
}

/// True iff a's denotation contains b's.
inline bool includes(const CountingSet& a, const CountingSet& b) {
  return is_empty(difference(b, a));
}

/// Deterministic ordering used when serializing sets: lexicographic on
/// lowers, then uppers with omega greatest.
inline bool cube_canonical_less(const Cube& a, const Cube& b) {
  if (a.lower != b.lower) return a.lower < b.lower;
  for (std::size_t p = 0; p < a.dim(); ++p) {
    if (a.upper[p] != b.upper[p]) return a.upper[p] < b.upper[p];
  }
  return false;
}

}  // namespace ionet
