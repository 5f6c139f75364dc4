#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "resolvekit/constructions.hpp"
#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/io.hpp"
#include "resolvekit/limits.hpp"
#include "resolvekit/textile.hpp"

using namespace resolvekit;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInvariant = 4;
constexpr int kDefaultMaxPower = 6;

json meta(const std::string& command) {
  return {{"tool", "resolvekit"}, {"version", "0.1.0"}, {"command", command}};
}

Endomorphism load_endo(const std::string& path) {
  return make_endomorphism(read_rule_file(path));
}

Endomorphism load_onto(const std::string& path) {
  Endomorphism e = load_endo(path);
  if (!e.onto) throw PreconditionError("rule in '" + path + "' is not onto");
  return e;
}

int max_power_default() {
  const char* env = std::getenv("RESOLVEKIT_MAX_POWER");
  if (!env) return kDefaultMaxPower;
  try {
    int v = std::stoi(env);
    if (v < 1) throw InputError("RESOLVEKIT_MAX_POWER must be positive");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("RESOLVEKIT_MAX_POWER is not an integer");
  }
}

json situation_json(const SituationReport& sr, int s) {
  json out = {{"shift", s},
              {"situation", to_string(sr.situation)},
              {"branch", sr.branch},
              {"xi_injective", sr.xi_injective},
              {"eta_injective", sr.eta_injective}};
  return out;
}

// Picks the graph carried by any of the artifacts this tool reads or writes.
Graph graph_of_artifact(const json& j, const std::string& part) {
  if (j.contains("source_graph")) return graph_from_json(j.at("source_graph"));
  if (j.contains("upper") && j.contains("base")) {
    if (part == "base") return graph_from_json(j.at("base"));
    return graph_from_json(j.at("upper"));
  }
  if (j.contains("rule") && j.at("rule").is_object()) return graph_of_artifact(j.at("rule"), part);
  if (j.contains("textile") && j.at("textile").is_object()) return graph_of_artifact(j.at("textile"), part);
  return graph_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolving degrees, textile constructions and limits for endomorphisms of Markov shifts"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the result to this file instead of stdout");

  std::string rule_path;
  auto* degrees_cmd = app.add_subcommand("degrees", "Strict degrees of a rule with witnesses");
  degrees_cmd->add_option("rule", rule_path, "Rule JSON file")->required();

  int max_power = 0;
  auto* limits_cmd = app.add_subcommand("limits", "Estimate the four limits over powers up to S");
  limits_cmd->add_option("rule", rule_path, "Rule JSON file")->required();
  limits_cmd->add_option("--max-power", max_power, "Largest power scanned (default 6 or RESOLVEKIT_MAX_POWER)");

  int shift = 0;
  auto* exp_cmd = app.add_subcommand("expansiveness", "Expansiveness situation of phi sigma^s");
  exp_cmd->add_option("rule", rule_path, "Rule JSON file")->required();
  exp_cmd->add_option("--shift", shift, "Shift exponent s")->required();

  std::string kind;
  auto* construct_cmd = app.add_subcommand("construct", "Build an LR, RL or q-biresolving textile");
  construct_cmd->add_option("rule", rule_path, "Rule JSON file")->required();
  construct_cmd->add_option("--kind", kind, "lr, rl or qbi")->required()->check(CLI::IsMember({"lr", "rl", "qbi"}));
  construct_cmd->add_option("--shift", shift, "Shift exponent s (qbi only)");

  std::string f_path, fprime_path, pi_path;
  int t = 0;
  auto* bip_cmd = app.add_subcommand("bipermute", "Combine a right-closing and a left-closing rule");
  bip_cmd->add_option("f", f_path, "Right-closing rule JSON file")->required();
  bip_cmd->add_option("fprime", fprime_path, "Left-closing rule JSON file")->required();
  bip_cmd->add_option("--t", t, "Overlap parameter")->required();
  bip_cmd->add_option("--pi", pi_path, "Bipermutation JSON file")->required();

  int order = 1;
  auto* dual_cmd = app.add_subcommand("dualblock", "Transport to the shift of orbit columns");
  dual_cmd->add_option("rule", rule_path, "Rule JSON file")->required();
  dual_cmd->add_option("--order", order, "Number of rows s")->required();

  std::string artifact_path, part = "upper";
  auto* dot_cmd = app.add_subcommand("export-dot", "DOT text of the graph inside a JSON artifact");
  dot_cmd->add_option("artifact", artifact_path, "Graph, rule or textile JSON file")->required();
  dot_cmd->add_option("--part", part, "For textiles: upper or base")->check(CLI::IsMember({"upper", "base"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    std::string text;
    if (degrees_cmd->parsed()) {
      Endomorphism e = load_onto(rule_path);
      json out = degree_report_to_json(degrees(e), e.rule);
      out["meta"] = meta("degrees");
      text = out.dump(2);
    } else if (limits_cmd->parsed()) {
      int s = max_power > 0 ? max_power : max_power_default();
      json out = limit_report_to_json(limit_estimates(load_onto(rule_path), s));
      out["meta"] = meta("limits");
      text = out.dump(2);
    } else if (exp_cmd->parsed()) {
      json out = situation_json(expansiveness_situation(load_onto(rule_path), shift), shift);
      out["meta"] = meta("expansiveness");
      text = out.dump(2);
    } else if (construct_cmd->parsed()) {
      Endomorphism e = load_onto(rule_path);
      BuiltTextile bt = kind == "lr"   ? build_lr_textile(e)
                        : kind == "rl" ? build_rl_textile(e)
                                       : build_qbiresolving_textile(e, shift);
      json out = {{"kind", kind},
                  {"order", bt.order},
                  {"shift", bt.shift},
                  {"left", bt.left},
                  {"right", bt.right},
                  {"textile", textile_to_json(bt.textile)},
                  {"dual", textile_to_json(dual(bt.textile))},
                  {"meta", meta("construct")}};
      text = out.dump(2);
    } else if (bip_cmd->parsed()) {
      LocalRule f = read_rule_file(f_path);
      LocalRule fprime = read_rule_file(fprime_path);
      Bipermutation pi = bipermutation_from_json(read_json_file(pi_path), f.source());
      Bipermuted res = bipermutation_construct(fprime, f, t, pi);
      json out = rule_to_json(res.endo.rule);
      out["fiber_count"] = res.fiber_count;
      out["certificate"] = {{"right_mergibility", res.right_merge},
                            {"left_mergibility", res.left_merge},
                            {"degree_sum", res.degree_sum},
                            {"right_multiplier", res.multipliers.right},
                            {"left_multiplier", res.multipliers.left},
                            {"fiber_count_verified", verify_fiber_count(res.endo, res.fiber_count)}};
      out["meta"] = meta("bipermute");
      text = out.dump(2);
    } else if (dual_cmd->parsed()) {
      DualBlockEndo db = dual_block_endo(load_endo(rule_path), order);
      json out = rule_to_json(db.endo.rule);
      out["order"] = db.order;
      out["word_length"] = db.word_length;
      out["meta"] = meta("dualblock");
      text = out.dump(2);
    } else if (dot_cmd->parsed()) {
      text = to_dot(graph_of_artifact(read_json_file(artifact_path), part));
    }
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(out_path);
      if (!os) throw InputError("cannot write '" + out_path + "'");
      os << text;
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
}
