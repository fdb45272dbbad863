#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ionet/counting.hpp"
#include "ionet/deciders.hpp"
#include "ionet/net.hpp"
#include "ionet/transformers.hpp"

namespace ionet {

class InvalidProtocolError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Immediate observation population protocol: an observer in state q seeing
/// an agent in state o moves to q', leaving the observed agent unchanged.
struct IOProtocol {
  std::vector<std::string> states;
  std::vector<std::uint32_t> initial;  // indices into states
  std::vector<int> output;             // 0 or 1 per state
  struct Rule {
    std::uint32_t observer = 0;
    std::uint32_t observed = 0;
    std::uint32_t successor = 0;
  };
  std::vector<Rule> rules;

  std::optional<std::uint32_t> state_index(const std::string& name) const {
    for (std::uint32_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    return std::nullopt;
  }

  /// Throws on structural violations; returns warnings for suspicious but
  /// admissible shapes (rules that do not move the observer).
  std::vector<std::string> validate() const {
    std::unordered_map<std::string, int> seen;
    for (const auto& s : states)
      if (++seen[s] > 1)
        throw InvalidProtocolError("duplicate state name: " + s);
    if (initial.empty())
      throw InvalidProtocolError("protocol has no initial states");
    for (auto i : initial)
      if (i >= states.size())
        throw InvalidProtocolError("initial state index out of range");
    if (output.size() != states.size())
      throw InvalidProtocolError("output map must cover every state");
    for (int b : output)
      if (b != 0 && b != 1)
        throw InvalidProtocolError("outputs must be 0 or 1");
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const Rule& r = rules[i];
      if (r.observer >= states.size() || r.observed >= states.size() ||
          r.successor >= states.size())
        throw InvalidProtocolError("rule " + std::to_string(i) +
                                   " refers to an unknown state");
      if (r.observer == r.successor)
        warnings.push_back("rule " + std::to_string(i) +
                           " does not move the observer");
    }
    return warnings;
  }
};

/// Predicate over input populations, given extensionally as a counting set
/// whose dimension is the number of initial states.
struct PredicateSpec {
  CountingSet over_initial;
};

/// One place per state, one transition per rule; the place map is the
/// identity on indices.
inline IONet to_net(const IOProtocol& p) {
  p.validate();
  IONet net;
  net.places = p.states;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const auto& r = p.rules[i];
    net.transitions.push_back(IOTransition{"r" + std::to_string(i + 1),
                                           r.observer, r.observed, r.successor});
  }
  net.validate();
  return net;
}

/// Configurations with agents only in initial states and at least min_agents
/// of them: a union of cubes distributing the minimum over initial states.
inline CountingSet initial_set(const IOProtocol& p, Count min_agents) {
  std::size_t n = p.states.size();
  Cube base(std::vector<Count>(n, 0), std::vector<ExtNat>(n, ExtNat(0)));
  for (auto i : p.initial) base.upper[i] = ExtNat::omega();
  if (min_agents == 0) return CountingSet(base);
  CountingSet out;
  std::vector<Count> parts(p.initial.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, Count rest) -> void {
    if (i + 1 == parts.size()) {
      parts[i] = rest;
      Cube c = base;
      for (std::size_t j = 0; j < parts.size(); ++j)
        c.lower[p.initial[j]] = parts[j];
      out.cubes.push_back(std::move(c));
      return;
    }
    for (Count v = 0; v <= rest; ++v) {
      parts[i] = v;
      self(self, i + 1, rest - v);
    }
  };
  rec(rec, 0, min_agents);
  return normalize(out);
}

/// Configurations where every agent outputs b.
inline Cube consensus_cube(const IOProtocol& p, int b) {
  std::size_t n = p.states.size();
  Cube c = Cube::universe(n);
  for (std::size_t q = 0; q < n; ++q)
    if (p.output[q] != b) c.upper[q] = ExtNat(0);
  return c;
}

/// Stable consensus set ST_b: configurations from which every reachable
/// configuration is a b-consensus. Computed as the complement of the
/// backward closure of the non-consensus configurations.
inline CountingSet stable_consensus_set(const IOProtocol& p, int b,
                                        const SaturationOptions& sat = {}) {
  IONet net = to_net(p);
  std::size_t n = net.place_count();
  CountingSet escape = pre_star(net, complement(consensus_cube(p, b)), sat);
  return complement(escape, n);
}

namespace detail {

/// Extends a predicate over initial states to a counting set over all
/// places; non-initial places stay unconstrained (callers intersect with the
/// initial set).
inline CountingSet extend_predicate(const IOProtocol& p,
                                    const PredicateSpec& phi) {
  std::size_t n = p.states.size();
  CountingSet out;
  for (const auto& c : phi.over_initial.cubes) {
    if (c.dim() != p.initial.size())
      throw DimensionMismatchError(
          "predicate dimension must equal the number of initial states");
    Cube e = Cube::universe(n);
    for (std::size_t j = 0; j < p.initial.size(); ++j) {
      e.lower[p.initial[j]] = c.lower[j];
      e.upper[p.initial[j]] = c.upper[j];
    }
    out.cubes.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

/// A protocol computes phi iff from every input, no reachable configuration
/// ever loses the ability to reach the stable consensus set of the expected
/// output. Negative verdicts carry a replayable trajectory from an input to
/// a configuration committed against the expected value.
inline Verdict check_correct(const IOProtocol& p, const PredicateSpec& phi,
                             Count min_agents = 1,
                             const SaturationOptions& sat = {}) {
  IONet net = to_net(p);
  std::size_t n = net.place_count();
  CountingSet init = initial_set(p, min_agents);
  CountingSet phi_ext = detail::extend_predicate(p, phi);

  Verdict v;
  v.engine = "symbolic";
  v.answer = true;
  for (int b = 0; b <= 1; ++b) {
    CountingSet inputs_b =
        (b == 1) ? intersect(init, phi_ext) : difference(init, phi_ext);
    if (is_empty(inputs_b)) continue;
    CountingSet st_b = stable_consensus_set(p, b, sat);
    CountingSet cannot_commit = complement(pre_star(net, st_b, sat), n);
    CountingSet violations =
        intersect(post_star(net, inputs_b, sat), cannot_commit);
    v.stats.result_cubes += violations.cubes.size();
    if (!is_empty(violations)) {
      v.answer = false;
      v.witness_trajectory =
          detail::explicit_witness(net, inputs_b, violations, std::nullopt);
      if (!v.witness_trajectory)
        throw EngineDisagreementError(
            "symbolic counterexample exists but bounded search found no trajectory");
      v.witness_marking = v.witness_trajectory->start;
      break;
    }
  }
  return v;
}

/// Well-specified iff no input can commit to both consensus values and no
/// reachable configuration is stuck away from both stable consensus sets.
inline Verdict check_well_specified(const IOProtocol& p, Count min_agents = 1,
                                    const SaturationOptions& sat = {}) {
  IONet net = to_net(p);
  std::size_t n = net.place_count();
  CountingSet init = initial_set(p, min_agents);
  CountingSet can_commit[2];
  for (int b = 0; b <= 1; ++b)
    can_commit[b] = pre_star(net, stable_consensus_set(p, b, sat), sat);

  Verdict v;
  v.engine = "symbolic";
  v.answer = true;

  CountingSet both = intersect(intersect(init, can_commit[0]), can_commit[1]);
  if (!is_empty(both)) {
    v.answer = false;
    v.witness_marking = detail::least_member(both);
    return v;
  }

  CountingSet stuck = complement(unite(can_commit[0], can_commit[1]), n);
  CountingSet viol = intersect(post_star(net, init, sat), stuck);
  if (!is_empty(viol)) {
    v.answer = false;
    v.witness_trajectory = detail::explicit_witness(net, init, viol, std::nullopt);
    if (!v.witness_trajectory)
      throw EngineDisagreementError(
          "symbolic counterexample exists but bounded search found no trajectory");
    v.witness_marking = v.witness_trajectory->start;
  }
  return v;
}

}  // namespace ionet
