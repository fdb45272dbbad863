#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/net.hpp"
#include "ionet/oracle.hpp"
#include "ionet/strata.hpp"

namespace testutil {

using namespace ionet;

inline IONet make_net(
    std::vector<std::string> places,
    std::vector<std::tuple<std::string, PlaceIndex, PlaceIndex, PlaceIndex>> ts) {
  IONet net;
  net.places = std::move(places);
  for (auto& [id, src, obs, dst] : ts)
    net.transitions.push_back(IOTransition{id, src, obs, dst});
  net.validate();
  return net;
}

inline Marking mk(std::vector<Count> counts) { return Marking(std::move(counts)); }

// nullopt = omega
inline Cube cube(std::vector<std::pair<Count, std::optional<Count>>> bounds) {
  Cube c;
  for (auto& [lo, hi] : bounds) {
    c.lower.push_back(lo);
    c.upper.push_back(hi ? ExtNat(*hi) : ExtNat::omega());
  }
  return c;
}

inline CountingSet cset(std::vector<Cube> cubes) {
  return CountingSet(std::move(cubes));
}

/// Denotational equality of two counting sets over all markings with
/// entries small enough to distinguish them (norm + 1 per place suffices,
/// checked per total up to n * (norm + 1)).
inline bool sets_agree(const CountingSet& a, const CountingSet& b, std::size_t n) {
  Count m = std::max(norm(a), norm(b)) + 1;
  std::uint64_t max_total = static_cast<std::uint64_t>(n) * m;
  for (std::uint64_t k = 0; k <= max_total; ++k)
    for (const Marking& p : enumerate_markings(n, k))
      if (member(p, a) != member(p, b)) return false;
  return true;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t operator()(std::uint64_t bound) { return eng() % bound; }
};

inline IONet random_net(Rng& r, std::size_t max_places = 5,
                        std::size_t max_transitions = 8) {
  IONet net;
  std::size_t n = 2 + r(max_places - 1);
  for (std::size_t p = 0; p < n; ++p)
    net.places.push_back("p" + std::to_string(p));
  std::size_t tc = 1 + r(max_transitions);
  for (std::size_t i = 0; i < tc; ++i)
    net.transitions.push_back(IOTransition{"t" + std::to_string(i + 1),
                                           static_cast<PlaceIndex>(r(n)),
                                           static_cast<PlaceIndex>(r(n)),
                                           static_cast<PlaceIndex>(r(n))});
  return net;
}

inline Cube random_cube(Rng& r, std::size_t n, Count max_norm = 3) {
  Cube c;
  for (std::size_t p = 0; p < n; ++p) {
    Count lo = static_cast<Count>(r(max_norm + 1));
    c.lower.push_back(lo);
    if (r(2) == 0)
      c.upper.push_back(ExtNat::omega());
    else
      c.upper.push_back(ExtNat(lo + static_cast<Count>(r(max_norm - lo + 1))));
  }
  return c;
}

inline CountingSet random_set(Rng& r, std::size_t n, Count max_norm = 3,
                              std::size_t max_cubes = 2) {
  CountingSet s;
  std::size_t k = 1 + r(max_cubes);
  for (std::size_t i = 0; i < k; ++i) s.cubes.push_back(random_cube(r, n, max_norm));
  return s;
}

inline Marking random_marking(Rng& r, std::size_t n, Count max_count = 4) {
  std::vector<Count> counts;
  for (std::size_t p = 0; p < n; ++p)
    counts.push_back(static_cast<Count>(r(max_count + 1)));
  return Marking(std::move(counts));
}

/// Ground-truth membership of pre*(s): can m reach a member of s?
inline bool oracle_in_pre_star(const IONet& net, const Marking& m,
                               const CountingSet& s) {
  Stratum st(net.place_count(), m.total());
  auto from_m = stratum_forward_closure(
      net, st, [&](const Marking& x) { return x == m; });
  for (std::uint64_t i = 0; i < st.size(); ++i)
    if (from_m[i] && member(st.unrank(i), s)) return true;
  return false;
}

/// Ground-truth membership of post*(s): is m reachable from a member of s?
inline bool oracle_in_post_star(const IONet& net, const Marking& m,
                                const CountingSet& s) {
  Stratum st(net.place_count(), m.total());
  auto sources = stratum_forward_closure(
      net, st, [&](const Marking& x) { return member(x, s); });
  return sources[st.rank(m)] != 0;
}

}  // namespace testutil
