#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionet/deciders.hpp"
#include "ionet/io.hpp"
#include "ionet/oracle.hpp"
#include "ionet/protocol.hpp"

namespace ionet::cli {

// Exit codes: 0 decided true / success, 1 decided false, 2 usage or parse
// error, 3 internal invariant violation.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::json load(const std::string& path) {
  return io::parse_text(read_file(path));
}

inline EngineKind engine_from_string(const std::string& s) {
  if (s == "symbolic") return EngineKind::Symbolic;
  if (s == "explicit") return EngineKind::Explicit;
  if (s == "both") return EngineKind::Both;
  throw io::ParseError("unknown engine: " + s);
}

inline int verdict_exit(const Verdict& v) {
  return v.answer ? kExitTrue : kExitFalse;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Parameterized analysis of immediate observation Petri nets"};
  app.require_subcommand(1);

  std::string net_path, from_path, to_path, set_path, protocol_path,
      predicate_path, marking_path, target_path;
  std::string engine_str = "symbolic";
  std::string quantifier_str = "all";
  std::optional<std::uint64_t> bound;
  bool cross_check = false;
  Count min_agents = 1;
  std::uint64_t state_limit = kDefaultStateLimit;
  std::uint64_t seed = 0;
  std::uint32_t gen_places = 5, gen_transitions = 8;
  Count gen_norm = 3;

  auto add_engine = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_str, "symbolic, explicit, or both")
        ->check(CLI::IsMember({"symbolic", "explicit", "both"}));
    cmd->add_option("--bound", bound,
                    "override the witness-size bound of the explicit engine");
    cmd->add_flag("--cross-check", cross_check,
                  "also decide via the dual symbolic route and compare");
  };

  CLI::App* reach = app.add_subcommand("reach", "cube-to-cube reachability");
  reach->add_option("--net", net_path)->required();
  reach->add_option("--from", from_path)->required();
  reach->add_option("--to", to_path)->required();
  add_engine(reach);

  CLI::App* cover = app.add_subcommand("cover", "cube-to-cube coverability");
  cover->add_option("--net", net_path)->required();
  cover->add_option("--from", from_path)->required();
  cover->add_option("--to", to_path)->required();
  add_engine(cover);

  CLI::App* live = app.add_subcommand("live", "parameterized liveness");
  live->add_option("--net", net_path)->required();
  live->add_option("--set", set_path)->required();
  live->add_option("--quantifier", quantifier_str, "all or exists")
      ->check(CLI::IsMember({"all", "exists"}));

  CLI::App* prestar = app.add_subcommand("prestar", "markings that can reach the set");
  prestar->add_option("--net", net_path)->required();
  prestar->add_option("--set", set_path)->required();

  CLI::App* poststar =
      app.add_subcommand("poststar", "markings reachable from the set");
  poststar->add_option("--net", net_path)->required();
  poststar->add_option("--set", set_path)->required();

  CLI::App* witness =
      app.add_subcommand("witness", "search for a small reachability witness");
  witness->add_option("--net", net_path)->required();
  witness->add_option("--from", from_path)->required();
  witness->add_option("--to", to_path)->required();
  witness->add_option("--bound", bound, "override the witness-size bound");

  CLI::App* protocol = app.add_subcommand("protocol", "population protocol checks");
  protocol->require_subcommand(1);
  CLI::App* pcheck =
      protocol->add_subcommand("check", "does the protocol compute the predicate");
  pcheck->add_option("--protocol", protocol_path)->required();
  pcheck->add_option("--predicate", predicate_path)->required();
  pcheck->add_option("--min-agents", min_agents);
  CLI::App* pws = protocol->add_subcommand(
      "well-specified", "does every fair run stabilize to a consensus");
  pws->add_option("--protocol", protocol_path)->required();
  pws->add_option("--min-agents", min_agents);

  CLI::App* oracle = app.add_subcommand("oracle", "explicit-state ground truth");
  oracle->require_subcommand(1);
  CLI::App* oreach = oracle->add_subcommand("reach", "explicit reachability");
  oreach->add_option("--net", net_path)->required();
  oreach->add_option("--marking", marking_path)->required();
  oreach->add_option("--to", target_path, "counting set to test for reachability");
  oreach->add_option("--limit", state_limit);
  CLI::App* olive = oracle->add_subcommand("live", "explicit liveness of one marking");
  olive->add_option("--net", net_path)->required();
  olive->add_option("--marking", marking_path)->required();
  olive->add_option("--limit", state_limit);
  CLI::App* ostab =
      oracle->add_subcommand("stabilize", "fair stabilization of one configuration");
  ostab->add_option("--protocol", protocol_path)->required();
  ostab->add_option("--marking", marking_path)->required();
  ostab->add_option("--limit", state_limit);

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--places", gen_places);
  gen->add_option("--transitions", gen_transitions);
  gen->add_option("--norm", gen_norm);

  std::vector<std::string> argv_like = args;
  argv_like.insert(argv_like.begin(), "ionet");
  std::vector<const char*> argv;
  argv.reserve(argv_like.size());
  for (const auto& a : argv_like) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitTrue : kExitUsage;
  }

  try {
    if (reach->parsed() || cover->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      CountingSet s_from = io::set_or_cube_from_json(detail::load(from_path), net);
      CountingSet s_to = io::set_or_cube_from_json(detail::load(to_path), net);
      DecideOptions opts;
      opts.engine = detail::engine_from_string(engine_str);
      opts.bound_override = bound;
      opts.cross_check = cross_check;
      Verdict v = reach->parsed() ? cube_reachable(net, s_from, s_to, opts)
                                  : cube_coverable(net, s_from, s_to, opts);
      out << io::dump(io::verdict_to_json(v, net));
      err << (reach->parsed() ? "reach: " : "cover: ")
          << (v.answer ? "true" : "false") << " (engine " << v.engine << ")\n";
      return detail::verdict_exit(v);
    }

    if (live->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      CountingSet s = io::set_or_cube_from_json(detail::load(set_path), net);
      LiveQuantifier q = quantifier_str == "all" ? LiveQuantifier::All
                                                 : LiveQuantifier::Exists;
      Verdict v = cube_live(net, s, q);
      out << io::dump(io::verdict_to_json(v, net));
      err << "live(" << quantifier_str << "): " << (v.answer ? "true" : "false")
          << "\n";
      return detail::verdict_exit(v);
    }

    if (prestar->parsed() || poststar->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      CountingSet s = io::set_or_cube_from_json(detail::load(set_path), net);
      CountingSet r = prestar->parsed() ? pre_star(net, s) : post_star(net, s);
      out << io::dump(io::set_to_json(r, net));
      err << (prestar->parsed() ? "prestar" : "poststar") << ": "
          << r.cubes.size() << " cubes\n";
      return kExitTrue;
    }

    if (witness->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      CountingSet s_from = io::set_or_cube_from_json(detail::load(from_path), net);
      CountingSet s_to = io::set_or_cube_from_json(detail::load(to_path), net);
      auto traj = ionet::detail::explicit_witness(net, s_from, s_to, bound);
      if (traj) {
        out << io::dump(io::trajectory_to_json(*traj, net));
        err << "witness: found, " << traj->steps.size() << " steps\n";
        return kExitTrue;
      }
      Verdict v;
      v.answer = false;
      v.engine = "explicit";
      v.bounded_only = bound.has_value();
      out << io::dump(io::verdict_to_json(v, net));
      err << (bound ? "witness: none up to the overridden bound\n"
                    : "witness: none, cubes are unreachable\n");
      return kExitFalse;
    }

    if (pcheck->parsed()) {
      IOProtocol p = io::protocol_from_json(detail::load(protocol_path));
      PredicateSpec phi = io::predicate_from_json(detail::load(predicate_path), p);
      Verdict v = check_correct(p, phi, min_agents);
      IONet net = to_net(p);
      out << io::dump(io::verdict_to_json(v, net));
      err << "protocol check: " << (v.answer ? "correct" : "incorrect") << "\n";
      return detail::verdict_exit(v);
    }

    if (pws->parsed()) {
      IOProtocol p = io::protocol_from_json(detail::load(protocol_path));
      Verdict v = check_well_specified(p, min_agents);
      IONet net = to_net(p);
      out << io::dump(io::verdict_to_json(v, net));
      err << "protocol well-specified: " << (v.answer ? "yes" : "no") << "\n";
      return detail::verdict_exit(v);
    }

    if (oreach->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      Marking m = io::marking_from_json(detail::load(marking_path), net);
      auto reached = reach_set(net, m, state_limit);
      if (!target_path.empty()) {
        CountingSet target =
            io::set_or_cube_from_json(detail::load(target_path), net);
        Verdict v;
        v.engine = "oracle";
        for (const auto& r : reached)
          if (member(r, target)) {
            v.answer = true;
            break;
          }
        out << io::dump(io::verdict_to_json(v, net));
        err << "oracle reach: " << (v.answer ? "true" : "false") << "\n";
        return detail::verdict_exit(v);
      }
      std::sort(reached.begin(), reached.end());
      io::json j;
      j["kind"] = "reach-set";
      j["version"] = io::kFormatVersion;
      io::json ms = io::json::array();
      for (const auto& r : reached) ms.push_back(io::marking_to_json(r, net));
      j["markings"] = std::move(ms);
      j["size"] = reached.size();
      out << io::dump(j);
      err << "oracle reach: " << reached.size() << " markings\n";
      return kExitTrue;
    }

    if (olive->parsed()) {
      IONet net = io::net_from_json(detail::load(net_path));
      Marking m = io::marking_from_json(detail::load(marking_path), net);
      Verdict v;
      v.engine = "oracle";
      v.answer = marking_live(net, m, state_limit);
      out << io::dump(io::verdict_to_json(v, net));
      err << "oracle live: " << (v.answer ? "true" : "false") << "\n";
      return detail::verdict_exit(v);
    }

    if (ostab->parsed()) {
      IOProtocol p = io::protocol_from_json(detail::load(protocol_path));
      IONet net = to_net(p);
      Marking m = io::marking_from_json(detail::load(marking_path), net);
      auto b = fair_stabilization(net, m, p.output, state_limit);
      io::json j;
      j["kind"] = "verdict";
      j["version"] = io::kFormatVersion;
      j["answer"] = b.has_value();
      j["engine"] = "oracle";
      if (b) j["consensus"] = *b;
      out << io::dump(j);
      err << "oracle stabilize: "
          << (b ? "consensus " + std::to_string(*b) : "no consensus") << "\n";
      return b ? kExitTrue : kExitFalse;
    }

    if (gen->parsed()) {
      GenLimits limits{gen_places, gen_transitions, gen_norm};
      Instance inst = generate_random_instance(seed, limits);
      io::json j;
      j["kind"] = "instance";
      j["version"] = io::kFormatVersion;
      j["net"] = io::net_to_json(inst.net);
      j["from"] = io::set_to_json(inst.from, inst.net);
      j["to"] = io::set_to_json(inst.to, inst.net);
      out << io::dump(j);
      err << "gen: seed " << seed << ", " << inst.net.places.size()
          << " places, " << inst.net.transitions.size() << " transitions\n";
      return kExitTrue;
    }
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidProtocolError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptyCubeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SaturationOverflowError& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  } catch (const EngineDisagreementError& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  }

  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace ionet::cli
