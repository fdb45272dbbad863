#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/net.hpp"

namespace ionet {

/// Raised when saturation generates cubes beyond the norm safety cap or the
/// cube budget. This signals a bug or an unaccelerated divergence, never a
/// valid answer.
class SaturationOverflowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exactly { M : M enabled for t and fire(M, t) in c }: shift c by the
/// reverse of the firing effect (src up, dst down), then intersect with the
/// enabledness constraints. Result may be empty.
inline Cube pre_step_t(const IONet& net, const Cube& c, const IOTransition& t) {
  check_dim(c, net.place_count());
  Cube r = c;
  if (t.src != t.dst) {
    r.lower[t.src] += 1;
    r.upper[t.src] = r.upper[t.src].plus(1);
    if (r.upper[t.dst].is_finite() && r.upper[t.dst].value() == 0) {
      // firing always puts a token in dst, so dst <= 0 is unreachable
      r.lower[t.dst] = 1;
      return r;
    }
    r.upper[t.dst] = r.upper[t.dst].minus(1);
    if (r.lower[t.dst] > 0) r.lower[t.dst] -= 1;
  }
  Count need_src = (t.src == t.obs) ? 2 : 1;
  r.lower[t.src] = std::max(r.lower[t.src], need_src);
  r.lower[t.obs] = std::max(r.lower[t.obs], Count{1});
  return r;
}

/// Exactly { fire(M, t) : M in c, M enabled for t }: intersect with
/// enabledness first, then translate (src down, dst up).
inline Cube post_step_t(const IONet& net, const Cube& c, const IOTransition& t) {
  check_dim(c, net.place_count());
  Cube r = c;
  Count need_src = (t.src == t.obs) ? 2 : 1;
  r.lower[t.src] = std::max(r.lower[t.src], need_src);
  r.lower[t.obs] = std::max(r.lower[t.obs], Count{1});
  if (is_empty(r)) return r;
  if (t.src != t.dst) {
    r.lower[t.src] -= 1;                      // >= 1 after enabledness
    r.upper[t.src] = r.upper[t.src].minus(1); // finite upper >= lower >= 1
    r.lower[t.dst] += 1;
    r.upper[t.dst] = r.upper[t.dst].plus(1);
  }
  return r;
}

inline CountingSet pre_step(const IONet& net, const CountingSet& s) {
  CountingSet r;
  for (const auto& c : s.cubes) {
    if (is_empty(c)) continue;
    for (const auto& t : net.transitions) {
      Cube img = pre_step_t(net, c, t);
      if (!is_empty(img)) r.cubes.push_back(std::move(img));
    }
  }
  return normalize(r);
}

inline CountingSet post_step(const IONet& net, const CountingSet& s) {
  CountingSet r;
  for (const auto& c : s.cubes) {
    if (is_empty(c)) continue;
    for (const auto& t : net.transitions) {
      Cube img = post_step_t(net, c, t);
      if (!is_empty(img)) r.cubes.push_back(std::move(img));
    }
  }
  return normalize(r);
}

struct SaturationOptions {
  std::optional<Count> norm_cap;     // default: norm(s) + place count + 1
  std::size_t max_cubes = 100000;    // hard budget on stored cubes
  std::size_t chain_walk_depth = 24; // ancestor window for chain detection
};

struct SaturationStats {
  std::size_t cubes_added = 0;
  std::size_t accelerations = 0;
  std::size_t step_images = 0;
};

namespace detail {

struct CubeHash {
  std::size_t operator()(const Cube& c) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (Count v : c.lower) mix(v);
    for (ExtNat u : c.upper) mix(u.is_omega() ? ~std::size_t{0} : u.value());
    return h;
  }
};

inline Cube shift_up(const Cube& c, std::size_t q, Count s) {
  Cube r = c;
  r.lower[q] += s;
  r.upper[q] = r.upper[q].plus(s);
  return r;
}

/// True iff b equals a except at exactly one place q, where both bounds sit
/// s >= 1 higher and the interval is wide enough that consecutive shifts
/// leave no gap (so the union of the whole chain is an interval).
inline bool single_place_up_shift(const Cube& a, const Cube& b, std::size_t& q,
                                  Count& s) {
  bool found = false;
  for (std::size_t p = 0; p < a.dim(); ++p) {
    bool same = a.lower[p] == b.lower[p] && a.upper[p] == b.upper[p];
    if (same) continue;
    if (found) return false;
    if (b.lower[p] <= a.lower[p]) return false;
    Count step = b.lower[p] - a.lower[p];
    if (a.upper[p].is_omega() || b.upper[p].is_omega()) return false;
    if (b.upper[p].value() != a.upper[p].value() + step) return false;
    if (a.upper[p].value() - a.lower[p] + 1 < step) return false;  // gap
    q = p;
    s = step;
    found = true;
  }
  return found;
}

/// Worklist saturation computing the reflexive-transitive closure of `seed`
/// under one-step images. Terminates because every admitted cube adds
/// denotation within the finite family of cubes of norm <= cap, with
/// divergent shift chains replaced by their exact omega-widened union.
class Saturator {
public:
  Saturator(const IONet& net, bool backward, const SaturationOptions& opts)
      : net_(net), backward_(backward), opts_(opts) {}

  CountingSet run(const CountingSet& seed, SaturationStats* stats) {
    CountingSet start = normalize(seed);
    check_dims(start, net_.place_count());
    cap_ = opts_.norm_cap.value_or(
        norm(start) + static_cast<Count>(net_.place_count()) + 1);
    for (const auto& c : start.cubes) add_node(c, -1, 0);
    while (!work_.empty()) {
      std::uint32_t i = work_.front();
      work_.pop_front();
      for (std::uint32_t ti = 0; ti < net_.transitions.size(); ++ti) {
        Cube img = step(nodes_[i].cube, ti);
        ++stats_.step_images;
        if (is_empty(img) || covered(img)) continue;
        if (auto widened = try_accelerate(i, ti, img)) {
          ++stats_.accelerations;
          add_node(*widened, -1, 0);
        } else {
          if (norm(img) > cap_)
            throw SaturationOverflowError(
                "saturation produced a cube of norm " +
                std::to_string(norm(img)) + " above cap " + std::to_string(cap_));
          add_node(img, static_cast<std::int32_t>(i), ti);
        }
      }
    }
    if (stats) *stats = stats_;
    CountingSet result;
    result.cubes.reserve(nodes_.size());
    for (const auto& nd : nodes_) result.cubes.push_back(nd.cube);
    return normalize(result);
  }

private:
  struct Node {
    Cube cube;
    std::int32_t parent;  // -1 for seeds and widened cubes
    std::uint32_t via;    // transition index from parent, when parent >= 0
  };

  Cube step(const Cube& c, std::uint32_t ti) {
    auto key = std::make_pair(c, ti);
    auto it = step_cache_.find(key);
    if (it != step_cache_.end()) return it->second;
    const IOTransition& t = net_.transitions[ti];
    Cube img = backward_ ? pre_step_t(net_, c, t) : post_step_t(net_, c, t);
    step_cache_.emplace(std::move(key), img);
    return img;
  }

  bool covered(const Cube& c) {
    // cheap single-cube subsumption first
    for (const auto& nd : nodes_)
      if (cube_subsumes(nd.cube, c)) return true;
    std::vector<Cube> pieces{c};
    for (const auto& nd : nodes_) {
      std::vector<Cube> next;
      for (const auto& piece : pieces) {
        auto parts = cube_minus(piece, nd.cube);
        next.insert(next.end(), parts.begin(), parts.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) return true;
    }
    return false;
  }

  /// Detects a derivation chain A -> ... -> img whose composite one-step map
  /// shifted a single place upward, and re-applies the composite once to
  /// confirm the shift repeats. One-step images act on every place
  /// independently as x -> max(x + const, const), so two consecutive equal
  /// shifts pin the composite in its linear regime and the whole infinite
  /// chain is exactly the widened cube with an omega upper bound at that
  /// place.
  std::optional<Cube> try_accelerate(std::uint32_t from, std::uint32_t ti,
                                     const Cube& img) {
    std::deque<std::uint32_t> path{ti};
    std::int32_t anc = static_cast<std::int32_t>(from);
    for (std::size_t depth = 0;
         anc >= 0 && depth < opts_.chain_walk_depth; ++depth) {
      const Node& a = nodes_[static_cast<std::size_t>(anc)];
      std::size_t q = 0;
      Count s = 0;
      if (single_place_up_shift(a.cube, img, q, s)) {
        Cube replay = img;
        for (std::uint32_t step_ti : path) {
          replay = step(replay, step_ti);
          if (is_empty(replay)) break;
        }
        if (replay == detail::shift_up(img, q, s)) {
          Cube widened = a.cube;
          widened.upper[q] = ExtNat::omega();
          return widened;
        }
      }
      if (a.parent < 0) break;
      path.push_front(a.via);
      anc = a.parent;
    }
    return std::nullopt;
  }

  void add_node(const Cube& c, std::int32_t parent, std::uint32_t via) {
    if (nodes_.size() >= opts_.max_cubes)
      throw SaturationOverflowError("saturation exceeded the cube budget");
    nodes_.push_back(Node{c, parent, via});
    work_.push_back(static_cast<std::uint32_t>(nodes_.size() - 1));
    ++stats_.cubes_added;
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<Cube, std::uint32_t>& k) const {
      return CubeHash{}(k.first) * 1000003u + k.second;
    }
  };

  const IONet& net_;
  bool backward_;
  SaturationOptions opts_;
  Count cap_ = 0;
  std::vector<Node> nodes_;
  std::deque<std::uint32_t> work_;
  std::unordered_map<std::pair<Cube, std::uint32_t>, Cube, KeyHash> step_cache_;
  SaturationStats stats_;
};

}  // namespace detail

/// Least fixpoint of s under pre_step: exactly the markings that can reach a
/// member of s.
inline CountingSet pre_star(const IONet& net, const CountingSet& s,
                            const SaturationOptions& opts = {},
                            SaturationStats* stats = nullptr) {
  return detail::Saturator(net, /*backward=*/true, opts).run(s, stats);
}

/// Least fixpoint of s under post_step: exactly the markings reachable from a
/// member of s.
inline CountingSet post_star(const IONet& net, const CountingSet& s,
                             const SaturationOptions& opts = {},
                             SaturationStats* stats = nullptr) {
  return detail::Saturator(net, /*backward=*/false, opts).run(s, stats);
}

}  // namespace ionet
