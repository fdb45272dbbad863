#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/net.hpp"
#include "ionet/pruning.hpp"
#include "ionet/transformers.hpp"

namespace ionet {

/// Two engines answer symbolic results disagreeing only on bugs.
class EngineDisagreementError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class EngineKind { Symbolic, Explicit, Both };

inline std::string engine_name(EngineKind e) {
  switch (e) {
    case EngineKind::Symbolic: return "symbolic";
    case EngineKind::Explicit: return "explicit";
    default: return "both";
  }
}

struct VerdictStats {
  std::uint64_t saturation_cubes = 0;
  std::uint64_t accelerations = 0;
  std::uint64_t result_cubes = 0;
};

struct Verdict {
  bool answer = false;
  std::string engine;
  std::optional<Trajectory> witness_trajectory;
  std::optional<Marking> witness_marking;
  bool bounded_only = false;  // explicit "no witness" under an overridden bound
  VerdictStats stats;
};

struct DecideOptions {
  EngineKind engine = EngineKind::Symbolic;
  std::optional<std::uint64_t> bound_override;
  bool cross_check = false;  // also run the dual symbolic route and compare
  SaturationOptions saturation;
};

inline CountingSet upward_closure(const CountingSet& s) {
  CountingSet r = s;
  for (auto& c : r.cubes)
    for (auto& u : c.upper) u = ExtNat::omega();
  return normalize(r);
}

namespace detail {

/// Least-total member of a nonempty counting set: the lower-bound vector of
/// the cube whose lowers sum smallest.
inline Marking least_member(const CountingSet& s) {
  const Cube* best = nullptr;
  std::uint64_t best_total = 0;
  for (const auto& c : s.cubes) {
    if (is_empty(c)) continue;
    std::uint64_t tot = lower_sum(c);
    if (best == nullptr || tot < best_total) {
      best = &c;
      best_total = tot;
    }
  }
  if (best == nullptr) throw std::logic_error("least_member of empty set");
  return Marking(best->lower);
}

inline std::optional<Trajectory> explicit_witness(
    const IONet& net, const CountingSet& s_from, const CountingSet& s_to,
    std::optional<std::uint64_t> bound_override) {
  for (const auto& cf : s_from.cubes) {
    if (is_empty(cf)) continue;
    for (const auto& ct : s_to.cubes) {
      if (is_empty(ct)) continue;
      if (auto w = find_small_witness(net, cf, ct, bound_override)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Can some marking of s_from reach some marking of s_to?
inline Verdict cube_reachable(const IONet& net, const CountingSet& s_from,
                              const CountingSet& s_to,
                              const DecideOptions& opts = {}) {
  check_dims(s_from, net.place_count());
  check_dims(s_to, net.place_count());
  Verdict v;
  v.engine = engine_name(opts.engine);

  std::optional<bool> symbolic_answer;
  if (opts.engine != EngineKind::Explicit) {
    SaturationStats sat;
    CountingSet post = post_star(net, s_from, opts.saturation, &sat);
    v.stats.saturation_cubes = sat.cubes_added;
    v.stats.accelerations = sat.accelerations;
    v.stats.result_cubes = post.cubes.size();
    bool ans = !is_empty(intersect(post, s_to));
    if (opts.cross_check) {
      CountingSet pre = pre_star(net, s_to, opts.saturation);
      bool dual = !is_empty(intersect(pre, s_from));
      if (dual != ans)
        throw EngineDisagreementError(
            "pre* and post* routes disagree on cube reachability");
    }
    symbolic_answer = ans;
  }

  std::optional<Trajectory> witness;
  std::optional<bool> explicit_answer;
  if (opts.engine != EngineKind::Symbolic) {
    witness = detail::explicit_witness(net, s_from, s_to, opts.bound_override);
    explicit_answer = witness.has_value();
  } else if (*symbolic_answer) {
    // Symbolic verdicts still attach replayable witnesses, found by the
    // explicit engine on the deciding cubes.
    witness = detail::explicit_witness(net, s_from, s_to, opts.bound_override);
    if (!witness)
      throw EngineDisagreementError(
          "symbolic engine reports reachable but the bounded search found no witness");
  }

  if (symbolic_answer && explicit_answer && *symbolic_answer != *explicit_answer)
    throw EngineDisagreementError("symbolic and explicit engines disagree");

  v.answer = symbolic_answer.value_or(explicit_answer.value_or(false));
  v.witness_trajectory = witness;
  if (opts.engine == EngineKind::Explicit && !v.answer && opts.bound_override)
    v.bounded_only = true;
  return v;
}

/// Can some marking of s_from reach a marking covering some member of s_to?
/// Decided as reachability into the upward closure of s_to.
inline Verdict cube_coverable(const IONet& net, const CountingSet& s_from,
                              const CountingSet& s_to,
                              const DecideOptions& opts = {}) {
  return cube_reachable(net, s_from, upward_closure(s_to), opts);
}

enum class LiveQuantifier { All, Exists };

inline Cube enabled_cube(const IONet& net, const IOTransition& t) {
  Cube c = Cube::universe(net.place_count());
  c.lower[t.src] = (t.src == t.obs) ? 2 : 1;
  c.lower[t.obs] = std::max(c.lower[t.obs], Count{1});
  return c;
}

/// Markings from which some reachable marking has permanently disabled some
/// transition. A marking is live iff it is outside this set.
inline CountingSet not_live_set(const IONet& net,
                                const SaturationOptions& sat = {}) {
  std::size_t n = net.place_count();
  CountingSet not_live;
  for (const auto& t : net.transitions) {
    CountingSet can_enable = pre_star(net, CountingSet(enabled_cube(net, t)), sat);
    CountingSet dead_for_t = complement(can_enable, n);
    if (is_empty(dead_for_t)) continue;
    not_live = unite(not_live, pre_star(net, dead_for_t, sat));
  }
  return not_live;
}

/// quantifier All: every marking of s is live. Exists: some marking is.
inline Verdict cube_live(const IONet& net, const CountingSet& s,
                         LiveQuantifier quantifier,
                         const DecideOptions& opts = {}) {
  check_dims(s, net.place_count());
  Verdict v;
  v.engine = "symbolic";
  CountingSet not_live = not_live_set(net, opts.saturation);
  v.stats.result_cubes = not_live.cubes.size();
  if (quantifier == LiveQuantifier::All) {
    CountingSet bad = intersect(s, not_live);
    v.answer = is_empty(bad);
    if (!v.answer) v.witness_marking = detail::least_member(bad);
  } else {
    CountingSet good = difference(s, not_live);
    v.answer = !is_empty(good);
    if (v.answer) v.witness_marking = detail::least_member(good);
  }
  return v;
}

struct GenLimits {
  std::uint32_t max_places = 5;
  std::uint32_t max_transitions = 8;
  Count max_norm = 3;
};

struct Instance {
  IONet net;
  CountingSet from;
  CountingSet to;
};

/// Deterministic pseudo-random instance. Distribution: place count uniform in
/// [2, max_places], transition count uniform in [1, max_transitions],
/// transitions uniform over place triples, cube lowers uniform in
/// [0, max_norm], uppers omega with probability one half and otherwise
/// uniform in [lower, max_norm]; one or two cubes per set.
inline Instance generate_random_instance(std::uint64_t seed,
                                         const GenLimits& limits = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t k) -> std::uint64_t { return rng() % k; };

  Instance inst;
  std::size_t n = 2 + pick(limits.max_places - 1);
  for (std::size_t p = 0; p < n; ++p)
    inst.net.places.push_back("p" + std::to_string(p));
  std::size_t tcount = 1 + pick(limits.max_transitions);
  for (std::size_t i = 0; i < tcount; ++i) {
    IOTransition t;
    t.id = "t" + std::to_string(i + 1);
    t.src = static_cast<PlaceIndex>(pick(n));
    t.obs = static_cast<PlaceIndex>(pick(n));
    t.dst = static_cast<PlaceIndex>(pick(n));
    inst.net.transitions.push_back(std::move(t));
  }

  auto random_set = [&]() {
    CountingSet s;
    std::size_t cubes = 1 + pick(2);
    for (std::size_t i = 0; i < cubes; ++i) {
      Cube c;
      for (std::size_t p = 0; p < n; ++p) {
        Count lo = static_cast<Count>(pick(limits.max_norm + 1));
        c.lower.push_back(lo);
        if (pick(2) == 0) {
          c.upper.push_back(ExtNat::omega());
        } else {
          c.upper.push_back(ExtNat(lo + static_cast<Count>(
                                            pick(limits.max_norm - lo + 1))));
        }
      }
      s.cubes.push_back(std::move(c));
    }
    return s;
  };
  inst.from = random_set();
  inst.to = random_set();
  return inst;
}

}  // namespace ionet
