#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ionet/extnat.hpp"

namespace ionet {

using PlaceIndex = std::uint32_t;

/// Token counts, one entry per place of the owning net.
struct Marking {
  std::vector<Count> counts;

  Marking() = default;
  explicit Marking(std::vector<Count> c) : counts(std::move(c)) {}

  std::size_t size() const { return counts.size(); }
  Count operator[](std::size_t p) const { return counts[p]; }
  Count& operator[](std::size_t p) { return counts[p]; }

  std::uint64_t total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }

  friend bool operator==(const Marking& a, const Marking& b) {
    return a.counts == b.counts;
  }
  friend bool operator!=(const Marking& a, const Marking& b) {
    return !(a == b);
  }
  friend bool operator<(const Marking& a, const Marking& b) {
    return a.counts < b.counts;
  }
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Count c : m.counts) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

/// One-token move src -> dst guarded by a token resting on obs.
/// pre = {src, obs}, post = {dst, obs} as multisets.
struct IOTransition {
  std::string id;
  PlaceIndex src = 0;
  PlaceIndex obs = 0;
  PlaceIndex dst = 0;
};

class NotIOError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotEnabledError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A Petri net whose transitions all have the immediate observation shape.
/// Place names are unique; transitions refer to places by dense index.
struct IONet {
  std::vector<std::string> places;
  std::vector<IOTransition> transitions;

  std::size_t place_count() const { return places.size(); }

  std::optional<PlaceIndex> place_index(const std::string& name) const {
    for (PlaceIndex i = 0; i < places.size(); ++i)
      if (places[i] == name) return i;
    return std::nullopt;
  }

  const IOTransition* find_transition(const std::string& id) const {
    for (const auto& t : transitions)
      if (t.id == id) return &t;
    return nullptr;
  }

  // Throws std::invalid_argument on duplicate names/ids or dangling indices.
  void validate() const {
    std::unordered_map<std::string, int> seen;
    for (const auto& p : places)
      if (++seen[p] > 1)
        throw std::invalid_argument("duplicate place name: " + p);
    std::unordered_map<std::string, int> tids;
    for (const auto& t : transitions) {
      if (++tids[t.id] > 1)
        throw std::invalid_argument("duplicate transition id: " + t.id);
      if (t.src >= places.size() || t.obs >= places.size() ||
          t.dst >= places.size())
        throw std::invalid_argument("transition " + t.id +
                                    " refers to an unknown place");
    }
  }

  /// Net with every transition's src and dst swapped. Reversal preserves the
  /// IO shape, and reachability reverses: M ->* M' here iff M' ->* M there.
  IONet reversed() const {
    IONet r;
    r.places = places;
    r.transitions.reserve(transitions.size());
    for (const auto& t : transitions)
      r.transitions.push_back(IOTransition{t.id, t.dst, t.obs, t.src});
    return r;
  }
};

/// Result of decomposing a size-2 pre/post multiset pair into (src, obs, dst).
struct IOShape {
  PlaceIndex src = 0;
  PlaceIndex obs = 0;
  PlaceIndex dst = 0;
};

/// Decomposes pre = {src, obs}, post = {dst, obs}. Among the (at most two)
/// decompositions, prefers the one with src == dst, then the lowest obs
/// index. Returns nullopt when the pair does not have the IO shape.
inline std::optional<IOShape> classify_io(std::array<PlaceIndex, 2> pre,
                                          std::array<PlaceIndex, 2> post) {
  std::optional<IOShape> best;
  int best_score = -1;
  auto consider = [&](PlaceIndex obs, PlaceIndex src) {
    // post must contain obs; dst is the remaining element.
    PlaceIndex dst;
    if (post[0] == obs)
      dst = post[1];
    else if (post[1] == obs)
      dst = post[0];
    else
      return;
    int score = (src == dst) ? 1 : 0;
    if (score > best_score || (score == best_score && best && obs < best->obs)) {
      best = IOShape{src, obs, dst};
      best_score = score;
    }
  };
  consider(pre[0], pre[1]);
  if (pre[1] != pre[0]) consider(pre[1], pre[0]);
  return best;
}

inline bool enabled(const Marking& m, const IOTransition& t) {
  if (t.src == t.obs) return m[t.src] >= 2;
  return m[t.src] >= 1 && m[t.obs] >= 1;
}

/// Moves one token src -> dst. Total count is conserved.
inline Marking fire(const Marking& m, const IOTransition& t) {
  if (!enabled(m, t)) throw NotEnabledError("transition " + t.id + " not enabled");
  Marking r = m;
  r[t.src] -= 1;
  r[t.dst] += 1;
  return r;
}

/// A start marking plus the ids of the transitions fired, in order.
/// Intermediate markings are recomputed by replay.
struct Trajectory {
  Marking start;
  std::vector<std::string> steps;
};

struct ReplayResult {
  bool ok = false;
  std::size_t failed_step = 0;           // valid when !ok
  std::vector<Marking> markings;         // start plus one entry per valid step
};

/// Universal validity checker for witnesses: replays the steps and reports
/// the first step that is not enabled (or references an unknown id).
inline ReplayResult replay(const IONet& net, const Trajectory& traj) {
  ReplayResult res;
  res.markings.push_back(traj.start);
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const IOTransition* t = net.find_transition(traj.steps[i]);
    if (t == nullptr || !enabled(res.markings.back(), *t)) {
      res.failed_step = i;
      return res;
    }
    res.markings.push_back(fire(res.markings.back(), *t));
  }
  res.ok = true;
  return res;
}

}  // namespace ionet
