#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/net.hpp"
#include "ionet/strata.hpp"

namespace ionet {

class StateLimitExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultStateLimit = 1000000;

/// Explicit marking graph grown by BFS from a start marking. Finite because
/// firing conserves the token total.
struct ReachGraph {
  std::vector<Marking> nodes;
  std::unordered_map<Marking, std::uint32_t, MarkingHash> index;
  std::vector<std::vector<std::uint32_t>> succ;

  bool contains(const Marking& m) const { return index.count(m) > 0; }
};

inline ReachGraph build_reach_graph(const IONet& net, const Marking& start,
                                    std::size_t state_limit = kDefaultStateLimit) {
  ReachGraph g;
  std::deque<std::uint32_t> work;
  g.nodes.push_back(start);
  g.index.emplace(start, 0);
  g.succ.emplace_back();
  work.push_back(0);
  while (!work.empty()) {
    std::uint32_t cur = work.front();
    work.pop_front();
    Marking m = g.nodes[cur];
    for (const auto& t : net.transitions) {
      if (!enabled(m, t)) continue;
      Marking next = fire(m, t);
      auto [it, fresh] = g.index.emplace(next, static_cast<std::uint32_t>(g.nodes.size()));
      if (fresh) {
        if (g.nodes.size() >= state_limit)
          throw StateLimitExceededError("reachability graph exceeds state limit");
        g.nodes.push_back(next);
        g.succ.emplace_back();
        work.push_back(it->second);
      }
      g.succ[cur].push_back(it->second);
    }
  }
  return g;
}

/// BFS closure of m under firing.
inline std::vector<Marking> reach_set(const IONet& net, const Marking& m,
                                      std::size_t state_limit = kDefaultStateLimit) {
  return build_reach_graph(net, m, state_limit).nodes;
}

namespace detail {

inline std::vector<std::vector<std::uint32_t>> reverse_edges(const ReachGraph& g) {
  std::vector<std::vector<std::uint32_t>> pred(g.nodes.size());
  for (std::uint32_t u = 0; u < g.succ.size(); ++u)
    for (std::uint32_t v : g.succ[u]) pred[v].push_back(u);
  return pred;
}

/// Nodes from which some seed node is reachable (seeds included).
inline std::vector<char> backward_closure(
    const ReachGraph& g, const std::vector<std::vector<std::uint32_t>>& pred,
    const std::vector<char>& seeds) {
  std::vector<char> can(g.nodes.size(), 0);
  std::deque<std::uint32_t> work;
  for (std::uint32_t v = 0; v < seeds.size(); ++v)
    if (seeds[v]) {
      can[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    std::uint32_t v = work.front();
    work.pop_front();
    for (std::uint32_t u : pred[v])
      if (!can[u]) {
        can[u] = 1;
        work.push_back(u);
      }
  }
  return can;
}

}  // namespace detail

/// All markings inside the cube with exactly the given total, in
/// lexicographic order. Empty when the total is not compatible.
inline std::vector<Marking> enumerate_cube(const Cube& c, std::uint64_t total) {
  std::vector<Marking> out;
  if (is_empty(c)) return out;
  std::size_t n = c.dim();
  Marking m;
  m.counts.assign(n, 0);
  // Feasible residual totals for suffix starting at p.
  std::vector<std::uint64_t> suffix_min(n + 1, 0);
  std::vector<ExtNat> suffix_max(n + 1, ExtNat(0));
  for (std::size_t p = n; p-- > 0;) {
    suffix_min[p] = suffix_min[p + 1] + c.lower[p];
    suffix_max[p] = c.upper[p].is_omega() ? ExtNat::omega()
                                          : suffix_max[p + 1].is_omega()
                                                ? ExtNat::omega()
                                                : ExtNat(suffix_max[p + 1].value() +
                                                         c.upper[p].value());
  }
  auto rec = [&](auto&& self, std::size_t p, std::uint64_t rest) -> void {
    if (p == n) {
      if (rest == 0) out.push_back(m);
      return;
    }
    Count lo = c.lower[p];
    std::uint64_t hi = c.upper[p].is_omega() ? rest
                                             : std::min<std::uint64_t>(
                                                   rest, c.upper[p].value());
    for (std::uint64_t v = lo; v <= hi; ++v) {
      std::uint64_t rem = rest - v;
      if (rem < suffix_min[p + 1]) break;  // lowers of the suffix unreachable
      if (suffix_max[p + 1].is_finite() && rem > suffix_max[p + 1].value())
        continue;  // too many tokens left for the suffix uppers
      m[p] = static_cast<Count>(v);
      self(self, p + 1, rem);
    }
    m[p] = 0;
  };
  if (total >= suffix_min[0] &&
      (suffix_max[0].is_omega() || total <= suffix_max[0].value()))
    rec(rec, 0, total);
  return out;
}

inline std::vector<Marking> enumerate_markings(std::size_t places,
                                               std::uint64_t total) {
  return enumerate_cube(Cube::universe(places), total);
}

/// True iff from every marking reachable from m, every transition can be
/// re-enabled again.
inline bool marking_live(const IONet& net, const Marking& m,
                         std::size_t state_limit = kDefaultStateLimit) {
  ReachGraph g = build_reach_graph(net, m, state_limit);
  auto pred = detail::reverse_edges(g);
  for (const auto& t : net.transitions) {
    std::vector<char> enabled_here(g.nodes.size(), 0);
    for (std::uint32_t v = 0; v < g.nodes.size(); ++v)
      enabled_here[v] = enabled(g.nodes[v], t) ? 1 : 0;
    auto can_enable = detail::backward_closure(g, pred, enabled_here);
    for (std::uint32_t v = 0; v < g.nodes.size(); ++v)
      if (!can_enable[v]) return false;
  }
  return true;
}

/// Ground truth for fair-run convergence on the finite graph of m: returns b
/// iff every reachable configuration can still reach the set of
/// configurations that are forever locked in consensus b.
inline std::optional<int> fair_stabilization(
    const IONet& net, const Marking& m, const std::vector<int>& consensus_partition,
    std::size_t state_limit = kDefaultStateLimit) {
  // The empty population is vacuously a consensus for both values; report
  // neither rather than an arbitrary one.
  if (m.total() == 0) return std::nullopt;
  ReachGraph g = build_reach_graph(net, m, state_limit);
  auto pred = detail::reverse_edges(g);
  std::optional<int> result;
  for (int b = 0; b <= 1; ++b) {
    // Consensus-b nodes: no tokens on places labeled 1-b.
    std::vector<char> not_consensus(g.nodes.size(), 0);
    for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
      const Marking& node = g.nodes[v];
      for (std::size_t p = 0; p < node.size(); ++p)
        if (consensus_partition[p] != b && node[p] > 0) {
          not_consensus[v] = 1;
          break;
        }
    }
    auto can_leave = detail::backward_closure(g, pred, not_consensus);
    // Stable-b nodes never reach a non-consensus node.
    std::vector<char> stable(g.nodes.size(), 0);
    bool any_stable = false;
    for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
      stable[v] = can_leave[v] ? 0 : 1;
      any_stable |= stable[v] != 0;
    }
    if (!any_stable) continue;
    auto can_stabilize = detail::backward_closure(g, pred, stable);
    bool all = true;
    for (std::uint32_t v = 0; v < g.nodes.size() && all; ++v)
      all = can_stabilize[v] != 0;
    if (all) {
      // Stable-0 and stable-1 sets are disjoint and forward-closed, so at
      // most one value can win from everywhere.
      if (result.has_value())
        throw std::logic_error("fair_stabilization: both consensus values qualify");
      result = b;
    }
  }
  return result;
}

/// Per-stratum closure: flags, for every marking of the given total, whether
/// it is forward-reachable from some marking satisfying `source`. Run on the
/// reversed net this yields "can reach a source" instead.
template <typename SourcePred>
std::vector<char> stratum_forward_closure(const IONet& net, const Stratum& st,
                                          SourcePred&& source) {
  std::vector<char> seen(st.size(), 0);
  std::deque<std::uint64_t> work;
  for (std::uint64_t i = 0; i < st.size(); ++i) {
    if (source(st.unrank(i))) {
      seen[i] = 1;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    std::uint64_t i = work.front();
    work.pop_front();
    Marking m = st.unrank(i);
    for (const auto& t : net.transitions) {
      if (!enabled(m, t)) continue;
      std::uint64_t j = st.rank(fire(m, t));
      if (!seen[j]) {
        seen[j] = 1;
        work.push_back(j);
      }
    }
  }
  return seen;
}

/// Liveness bit for every marking of one stratum at once: a marking is live
/// iff no reachable marking has lost the ability to re-enable some
/// transition.
inline std::vector<char> stratum_live_bits(const IONet& net, const Stratum& st) {
  std::uint64_t sz = st.size();
  std::vector<char> doomed(sz, 0);
  IONet rev = net.reversed();
  for (const auto& t : net.transitions) {
    // Markings that can reach an enabling of t = reversed-closure of the
    // enabled set.
    auto can_enable = stratum_forward_closure(
        rev, st, [&](const Marking& m) { return enabled(m, t); });
    // Markings that can reach a dead-for-t marking.
    std::vector<char> dead(sz, 0);
    for (std::uint64_t i = 0; i < sz; ++i) dead[i] = can_enable[i] ? 0 : 1;
    std::deque<std::uint64_t> work;
    std::vector<char> reach_dead = dead;
    for (std::uint64_t i = 0; i < sz; ++i)
      if (dead[i]) work.push_back(i);
    while (!work.empty()) {
      std::uint64_t i = work.front();
      work.pop_front();
      Marking m = st.unrank(i);
      for (const auto& rt : rev.transitions) {
        if (!enabled(m, rt)) continue;
        std::uint64_t j = st.rank(fire(m, rt));
        if (!reach_dead[j]) {
          reach_dead[j] = 1;
          work.push_back(j);
        }
      }
    }
    for (std::uint64_t i = 0; i < sz; ++i) doomed[i] |= reach_dead[i];
  }
  std::vector<char> live(sz, 0);
  for (std::uint64_t i = 0; i < sz; ++i) live[i] = doomed[i] ? 0 : 1;
  return live;
}

}  // namespace ionet
