#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionet/counting.hpp"
#include "ionet/deciders.hpp"
#include "ionet/net.hpp"
#include "ionet/protocol.hpp"

namespace ionet::io {

using nlohmann::json;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownPlaceError : public ParseError {
public:
  using ParseError::ParseError;
};

class DuplicateIdError : public ParseError {
public:
  using ParseError::ParseError;
};

inline constexpr const char* kFormatVersion = "1";

namespace detail {

inline void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be a JSON object");
}

/// Rejects unknown fields; "kind" and "version" are accepted everywhere and
/// validated when present.
inline void check_keys(const json& j, const std::string& what,
                       std::initializer_list<const char*> allowed,
                       const char* expected_kind) {
  require_object(j, what);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "kind") {
      if (!it.value().is_string() || it.value() != expected_kind)
        throw ParseError(what + ": kind must be \"" + expected_kind + "\"");
      continue;
    }
    if (key == "version") {
      if (!it.value().is_string() || it.value() != kFormatVersion)
        throw ParseError(what + ": unsupported format version");
      continue;
    }
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(what + ": unknown field \"" + key + "\"");
  }
}

inline Count to_count(const json& j, const std::string& what) {
  if (!j.is_number_unsigned())
    throw ParseError(what + " must be a nonnegative integer");
  return j.get<Count>();
}

inline std::string to_name(const json& j, const std::string& what) {
  if (!j.is_string() || j.get<std::string>().empty())
    throw ParseError(what + " must be a nonempty string");
  return j.get<std::string>();
}

inline PlaceIndex place_of(const IONet& net, const std::string& name,
                           const std::string& what) {
  auto idx = net.place_index(name);
  if (!idx) throw UnknownPlaceError(what + ": unknown place \"" + name + "\"");
  return *idx;
}

}  // namespace detail

// ---------------------------------------------------------------- net

inline json net_to_json(const IONet& net) {
  json j;
  j["kind"] = "net";
  j["version"] = kFormatVersion;
  j["places"] = net.places;
  json ts = json::array();
  for (const auto& t : net.transitions) {
    json tj;
    tj["id"] = t.id;
    tj["src"] = net.places[t.src];
    tj["obs"] = net.places[t.obs];
    tj["dst"] = net.places[t.dst];
    ts.push_back(std::move(tj));
  }
  j["transitions"] = std::move(ts);
  return j;
}

inline IONet net_from_json(const json& j) {
  detail::check_keys(j, "net", {"places", "transitions"}, "net");
  if (!j.contains("places") || !j["places"].is_array())
    throw ParseError("net: \"places\" must be an array of names");
  IONet net;
  for (const auto& p : j["places"])
    net.places.push_back(detail::to_name(p, "net place"));
  if (j.contains("transitions")) {
    if (!j["transitions"].is_array())
      throw ParseError("net: \"transitions\" must be an array");
    for (const auto& tj : j["transitions"]) {
      detail::check_keys(tj, "transition", {"id", "src", "obs", "dst"},
                         "transition");
      for (const char* f : {"id", "src", "obs", "dst"})
        if (!tj.contains(f))
          throw ParseError(std::string("transition: missing field \"") + f + "\"");
      IOTransition t;
      t.id = detail::to_name(tj["id"], "transition id");
      t.src = detail::place_of(net, detail::to_name(tj["src"], "src"), "transition");
      t.obs = detail::place_of(net, detail::to_name(tj["obs"], "obs"), "transition");
      t.dst = detail::place_of(net, detail::to_name(tj["dst"], "dst"), "transition");
      net.transitions.push_back(std::move(t));
    }
  }
  try {
    net.validate();
  } catch (const std::invalid_argument& e) {
    throw DuplicateIdError(std::string("net: ") + e.what());
  }
  return net;
}

// ---------------------------------------------------------------- cubes

inline json cube_bounds_to_json(const Cube& c, const IONet& net) {
  json bounds;
  for (std::size_t p = 0; p < c.dim(); ++p) {
    json pair = json::array();
    pair.push_back(c.lower[p]);
    if (c.upper[p].is_omega())
      pair.push_back(nullptr);
    else
      pair.push_back(c.upper[p].value());
    bounds[net.places[p]] = std::move(pair);
  }
  return bounds;
}

inline json cube_to_json(const Cube& c, const IONet& net) {
  json j;
  j["kind"] = "cube";
  j["version"] = kFormatVersion;
  j["bounds"] = cube_bounds_to_json(c, net);
  return j;
}

/// Bounds default to [0, omega] for places not mentioned; null encodes
/// omega.
inline Cube cube_from_json(const json& j, const IONet& net) {
  detail::check_keys(j, "cube", {"bounds"}, "cube");
  Cube c = Cube::universe(net.place_count());
  if (!j.contains("bounds")) return c;
  detail::require_object(j["bounds"], "cube bounds");
  for (auto it = j["bounds"].begin(); it != j["bounds"].end(); ++it) {
    PlaceIndex p = detail::place_of(net, it.key(), "cube bounds");
    const json& pair = it.value();
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("cube bounds for \"" + it.key() +
                       "\" must be a [lower, upper] pair");
    c.lower[p] = detail::to_count(pair[0], "cube lower bound");
    if (pair[1].is_null())
      c.upper[p] = ExtNat::omega();
    else
      c.upper[p] = ExtNat(detail::to_count(pair[1], "cube upper bound"));
  }
  return c;
}

inline json set_to_json(const CountingSet& s, const IONet& net) {
  std::vector<Cube> sorted = s.cubes;
  std::sort(sorted.begin(), sorted.end(), cube_canonical_less);
  json j;
  j["kind"] = "counting-set";
  j["version"] = kFormatVersion;
  json cubes = json::array();
  for (const auto& c : sorted) {
    json cj;
    cj["bounds"] = cube_bounds_to_json(c, net);
    cubes.push_back(std::move(cj));
  }
  j["cubes"] = std::move(cubes);
  return j;
}

inline CountingSet set_from_json(const json& j, const IONet& net) {
  detail::check_keys(j, "counting-set", {"cubes"}, "counting-set");
  if (!j.contains("cubes") || !j["cubes"].is_array())
    throw ParseError("counting-set: \"cubes\" must be an array");
  CountingSet s;
  for (const auto& cj : j["cubes"]) {
    detail::check_keys(cj, "counting-set cube", {"bounds"}, "cube");
    s.cubes.push_back(cube_from_json(cj, net));
  }
  return s;
}

/// Accepts either a counting-set document or a bare cube document.
inline CountingSet set_or_cube_from_json(const json& j, const IONet& net) {
  detail::require_object(j, "set");
  if (j.contains("cubes")) return set_from_json(j, net);
  return CountingSet(cube_from_json(j, net));
}

// ---------------------------------------------------------------- markings

inline json marking_to_json(const Marking& m, const IONet& net) {
  json j;
  for (std::size_t p = 0; p < m.size(); ++p) j[net.places[p]] = m[p];
  return j;
}

/// Counts default to 0 for places not mentioned.
inline Marking marking_from_json(const json& j, const IONet& net) {
  detail::require_object(j, "marking");
  Marking m(std::vector<Count>(net.place_count(), 0));
  for (auto it = j.begin(); it != j.end(); ++it) {
    PlaceIndex p = detail::place_of(net, it.key(), "marking");
    m[p] = detail::to_count(it.value(), "marking count");
  }
  return m;
}

// ---------------------------------------------------------------- trajectories

inline json trajectory_to_json(const Trajectory& t, const IONet& net) {
  json j;
  j["kind"] = "trajectory";
  j["version"] = kFormatVersion;
  j["start"] = marking_to_json(t.start, net);
  j["steps"] = t.steps;
  return j;
}

inline Trajectory trajectory_from_json(const json& j, const IONet& net) {
  detail::check_keys(j, "trajectory", {"start", "steps"}, "trajectory");
  if (!j.contains("start"))
    throw ParseError("trajectory: missing \"start\" marking");
  Trajectory t;
  t.start = marking_from_json(j["start"], net);
  if (j.contains("steps")) {
    if (!j["steps"].is_array())
      throw ParseError("trajectory: \"steps\" must be an array of transition ids");
    for (const auto& sj : j["steps"]) {
      std::string id = detail::to_name(sj, "trajectory step");
      if (net.find_transition(id) == nullptr)
        throw ParseError("trajectory: unknown transition id \"" + id + "\"");
      t.steps.push_back(std::move(id));
    }
  }
  return t;
}

// ---------------------------------------------------------------- protocols

inline json protocol_to_json(const IOProtocol& p) {
  json j;
  j["kind"] = "protocol";
  j["version"] = kFormatVersion;
  j["states"] = p.states;
  json init = json::array();
  for (auto i : p.initial) init.push_back(p.states[i]);
  j["initial"] = std::move(init);
  json out;
  for (std::size_t q = 0; q < p.states.size(); ++q)
    out[p.states[q]] = p.output[q];
  j["output"] = std::move(out);
  json rules = json::array();
  for (const auto& r : p.rules) {
    json rj;
    rj["observer"] = p.states[r.observer];
    rj["observed"] = p.states[r.observed];
    rj["successor"] = p.states[r.successor];
    rules.push_back(std::move(rj));
  }
  j["rules"] = std::move(rules);
  return j;
}

inline IOProtocol protocol_from_json(const json& j) {
  detail::check_keys(j, "protocol", {"states", "initial", "output", "rules"},
                     "protocol");
  for (const char* f : {"states", "initial", "output"})
    if (!j.contains(f))
      throw ParseError(std::string("protocol: missing field \"") + f + "\"");
  IOProtocol p;
  if (!j["states"].is_array())
    throw ParseError("protocol: \"states\" must be an array");
  for (const auto& s : j["states"])
    p.states.push_back(detail::to_name(s, "protocol state"));
  auto state_of = [&](const std::string& name,
                      const std::string& what) -> std::uint32_t {
    auto idx = p.state_index(name);
    if (!idx)
      throw UnknownPlaceError(what + ": unknown state \"" + name + "\"");
    return *idx;
  };
  if (!j["initial"].is_array())
    throw ParseError("protocol: \"initial\" must be an array");
  for (const auto& s : j["initial"])
    p.initial.push_back(state_of(detail::to_name(s, "initial state"), "initial"));
  detail::require_object(j["output"], "protocol output");
  p.output.assign(p.states.size(), -1);
  for (auto it = j["output"].begin(); it != j["output"].end(); ++it) {
    std::uint32_t q = state_of(it.key(), "output");
    if (!it.value().is_number_unsigned() || it.value().get<int>() > 1)
      throw ParseError("protocol output for \"" + it.key() + "\" must be 0 or 1");
    p.output[q] = it.value().get<int>();
  }
  for (std::size_t q = 0; q < p.states.size(); ++q)
    if (p.output[q] < 0)
      throw ParseError("protocol: missing output for state \"" + p.states[q] + "\"");
  if (j.contains("rules")) {
    if (!j["rules"].is_array())
      throw ParseError("protocol: \"rules\" must be an array");
    for (const auto& rj : j["rules"]) {
      detail::check_keys(rj, "protocol rule",
                         {"observer", "observed", "successor"}, "rule");
      for (const char* f : {"observer", "observed", "successor"})
        if (!rj.contains(f))
          throw ParseError(std::string("rule: missing field \"") + f + "\"");
      IOProtocol::Rule r;
      r.observer = state_of(detail::to_name(rj["observer"], "rule observer"), "rule");
      r.observed = state_of(detail::to_name(rj["observed"], "rule observed"), "rule");
      r.successor =
          state_of(detail::to_name(rj["successor"], "rule successor"), "rule");
      p.rules.push_back(r);
    }
  }
  try {
    p.validate();
  } catch (const InvalidProtocolError& e) {
    throw ParseError(std::string("protocol: ") + e.what());
  }
  return p;
}

/// Predicates are counting sets over the initial states, keyed by state
/// name.
inline json predicate_to_json(const PredicateSpec& phi, const IOProtocol& p) {
  IONet initial_space;
  for (auto i : p.initial) initial_space.places.push_back(p.states[i]);
  json j = set_to_json(phi.over_initial, initial_space);
  j["kind"] = "predicate";
  return j;
}

inline PredicateSpec predicate_from_json(const json& j, const IOProtocol& p) {
  IONet initial_space;
  for (auto i : p.initial) initial_space.places.push_back(p.states[i]);
  detail::check_keys(j, "predicate", {"cubes"}, "predicate");
  PredicateSpec phi;
  if (!j.contains("cubes") || !j["cubes"].is_array())
    throw ParseError("predicate: \"cubes\" must be an array");
  for (const auto& cj : j["cubes"]) {
    detail::check_keys(cj, "predicate cube", {"bounds"}, "cube");
    phi.over_initial.cubes.push_back(cube_from_json(cj, initial_space));
  }
  return phi;
}

// ---------------------------------------------------------------- verdicts

inline json verdict_to_json(const Verdict& v, const IONet& net) {
  json j;
  j["kind"] = "verdict";
  j["version"] = kFormatVersion;
  j["answer"] = v.answer;
  j["engine"] = v.engine;
  if (v.witness_trajectory) {
    json w;
    w["start"] = marking_to_json(v.witness_trajectory->start, net);
    w["steps"] = v.witness_trajectory->steps;
    j["witness"] = std::move(w);
  } else if (v.witness_marking) {
    json w;
    w["marking"] = marking_to_json(*v.witness_marking, net);
    j["witness"] = std::move(w);
  }
  if (v.bounded_only) j["bounded_only"] = true;
  json stats;
  stats["accelerations"] = v.stats.accelerations;
  stats["result_cubes"] = v.stats.result_cubes;
  stats["saturation_cubes"] = v.stats.saturation_cubes;
  j["stats"] = std::move(stats);
  return j;
}

inline Verdict verdict_from_json(const json& j, const IONet& net) {
  detail::check_keys(j, "verdict",
                     {"answer", "engine", "witness", "bounded_only", "stats"},
                     "verdict");
  for (const char* f : {"answer", "engine"})
    if (!j.contains(f))
      throw ParseError(std::string("verdict: missing field \"") + f + "\"");
  Verdict v;
  if (!j["answer"].is_boolean()) throw ParseError("verdict: answer must be a boolean");
  v.answer = j["answer"].get<bool>();
  v.engine = detail::to_name(j["engine"], "verdict engine");
  if (v.engine != "symbolic" && v.engine != "explicit" && v.engine != "both" &&
      v.engine != "oracle")
    throw ParseError("verdict: unknown engine \"" + v.engine + "\"");
  if (j.contains("witness")) {
    const json& w = j["witness"];
    detail::require_object(w, "verdict witness");
    if (w.contains("steps") || w.contains("start")) {
      detail::check_keys(w, "witness", {"start", "steps"}, "trajectory");
      v.witness_trajectory = trajectory_from_json(w, net);
    } else {
      detail::check_keys(w, "witness", {"marking"}, "marking");
      if (!w.contains("marking"))
        throw ParseError("verdict witness: expected a trajectory or a marking");
      v.witness_marking = marking_from_json(w["marking"], net);
    }
  }
  if (j.contains("bounded_only")) {
    if (!j["bounded_only"].is_boolean())
      throw ParseError("verdict: bounded_only must be a boolean");
    v.bounded_only = j["bounded_only"].get<bool>();
  }
  if (j.contains("stats")) {
    detail::check_keys(j["stats"], "verdict stats",
                       {"accelerations", "result_cubes", "saturation_cubes"},
                       "stats");
    const json& s = j["stats"];
    if (s.contains("accelerations"))
      v.stats.accelerations = s["accelerations"].get<std::uint64_t>();
    if (s.contains("result_cubes"))
      v.stats.result_cubes = s["result_cubes"].get<std::uint64_t>();
    if (s.contains("saturation_cubes"))
      v.stats.saturation_cubes = s["saturation_cubes"].get<std::uint64_t>();
  }
  return v;
}

/// Strict JSON parse wrapping syntax errors (with byte position) in
/// ParseError.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON syntax error: ") + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ionet::io
