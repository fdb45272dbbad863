#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/net.hpp"
#include "ionet/oracle.hpp"
#include "ionet/strata.hpp"

namespace ionet {

class EmptyCubeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Maximum total token count a reachability witness between the two cubes
/// ever needs.
struct WitnessBound {
  std::uint64_t value = 0;
};

namespace detail {

inline std::uint64_t lower_sum(const Cube& c) {
  std::uint64_t s = 0;
  for (Count v : c.lower) s += v;
  return s;
}

inline std::optional<std::uint64_t> upper_sum(const Cube& c) {
  std::uint64_t s = 0;
  for (ExtNat u : c.upper) {
    if (u.is_omega()) return std::nullopt;
    s += u.value();
  }
  return s;
}

}  // namespace detail

/// Sufficient witness size for cube-to-cube reachability: if any marking of
/// c_from reaches any marking of c_to, then some witness pair of total at
/// most this bound exists. The closure of a cube under reachability stays
/// within norm norm(c) + places + 1, so a nonempty intersection with c_to
/// contains the marking formed by the lower bounds of one of its cubes,
/// whose total the formula dominates.
inline WitnessBound witness_bound(const IONet& net, const Cube& c_from,
                                  const Cube& c_to) {
  if (is_empty(c_from) || is_empty(c_to))
    throw EmptyCubeError("witness_bound requires nonempty cubes");
  std::uint64_t n = net.place_count();
  std::uint64_t closure_norm = norm(c_from) + n + 1;
  std::uint64_t b = n * std::max<std::uint64_t>(closure_norm, norm(c_to));
  // a witness must meet both cubes' lower bounds under conservation
  b = std::max(b, detail::lower_sum(c_from));
  b = std::max(b, detail::lower_sum(c_to));
  return WitnessBound{b};
}

/// Bounded-total BFS witness search. Iterates token totals from the smallest
/// compatible with both cubes up to the bound; totals partition the search
/// because firing conserves tokens. Returns the first witness found, or
/// nullopt, which is a sound "unreachable" when the bound was not overridden.
inline std::optional<Trajectory> find_small_witness(
    const IONet& net, const Cube& c_from, const Cube& c_to,
    std::optional<std::uint64_t> bound_override = std::nullopt) {
  if (is_empty(c_from) || is_empty(c_to))
    throw EmptyCubeError("find_small_witness requires nonempty cubes");
  std::size_t n = net.place_count();
  std::uint64_t bound =
      bound_override.value_or(witness_bound(net, c_from, c_to).value);

  std::uint64_t k_min =
      std::max(detail::lower_sum(c_from), detail::lower_sum(c_to));
  std::uint64_t k_max = bound;
  if (auto us = detail::upper_sum(c_from)) k_max = std::min(k_max, *us);
  if (auto us = detail::upper_sum(c_to)) k_max = std::min(k_max, *us);

  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    Stratum st(n, k);
    std::vector<std::int64_t> parent(st.size(), -1);
    std::vector<std::uint32_t> via(st.size(), 0);
    std::vector<char> seen(st.size(), 0);
    std::deque<std::uint64_t> work;

    auto emit = [&](std::uint64_t idx) -> Trajectory {
      std::vector<std::uint32_t> rev;
      std::uint64_t cur = idx;
      while (parent[cur] >= 0) {
        rev.push_back(via[cur]);
        cur = static_cast<std::uint64_t>(parent[cur]);
      }
      Trajectory traj;
      traj.start = st.unrank(cur);
      for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        traj.steps.push_back(net.transitions[*it].id);
      return traj;
    };

    for (const Marking& m : enumerate_cube(c_from, k)) {
      std::uint64_t idx = st.rank(m);
      if (seen[idx]) continue;
      seen[idx] = 1;
      if (member(m, c_to)) return emit(idx);  // zero-step witness
      work.push_back(idx);
    }
    while (!work.empty()) {
      std::uint64_t idx = work.front();
      work.pop_front();
      Marking m = st.unrank(idx);
      for (std::uint32_t ti = 0; ti < net.transitions.size(); ++ti) {
        const IOTransition& t = net.transitions[ti];
        if (!enabled(m, t)) continue;
        Marking next = fire(m, t);
        std::uint64_t j = st.rank(next);
        if (seen[j]) continue;
        seen[j] = 1;
        parent[j] = static_cast<std::int64_t>(idx);
        via[j] = ti;
        if (member(next, c_to)) return emit(j);
        work.push_back(j);
      }
    }
  }
  return std::nullopt;
}

}  // namespace ionet
