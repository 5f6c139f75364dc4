#include "resolvekit/io.hpp"

#include <fstream>

#include "resolvekit/error.hpp"

namespace resolvekit {

namespace {

std::string string_field(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Graph graph_from_json(const json& j) {
  if (!j.is_object()) throw InputError("graph must be a JSON object");
  if (j.contains("full_alphabet")) {
    const json& alpha = j.at("full_alphabet");
    if (!alpha.is_array()) throw InputError("full_alphabet must be an array");
    std::vector<std::string> symbols;
    for (const auto& s : alpha) symbols.push_back(string_field(s, "alphabet symbol"));
    return full_shift_graph(symbols);
  }
  if (!j.contains("vertices") || !j.contains("arcs")) throw InputError("graph needs 'vertices' and 'arcs'");
  if (!j.at("vertices").is_array() || !j.at("arcs").is_array())
    throw InputError("graph 'vertices' and 'arcs' must be arrays");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(string_field(v, "vertex id"));
  std::vector<ArcSpec> arcs;
  for (const auto& a : j.at("arcs")) {
    if (!a.is_object() || !a.contains("id") || !a.contains("from") || !a.contains("to"))
      throw InputError("each arc needs 'id', 'from' and 'to'");
    arcs.push_back({string_field(a.at("id"), "arc id"), string_field(a.at("from"), "arc source"),
                    string_field(a.at("to"), "arc target")});
  }
  return Graph(vertices, arcs);
}

json graph_to_json(const Graph& g) {
  json arcs = json::array();
  for (int a = 0; a < g.num_arcs(); ++a)
    arcs.push_back({{"id", g.arc_id(a)}, {"from", g.vertex_id(g.source(a))}, {"to", g.vertex_id(g.target(a))}});
  return {{"vertices", g.vertex_ids()}, {"arcs", arcs}};
}

LocalRule rule_from_json(const json& j) {
  if (!j.is_object()) throw InputError("rule must be a JSON object");
  if (!j.contains("source_graph")) throw InputError("rule needs 'source_graph'");
  Graph source = graph_from_json(j.at("source_graph"));
  Graph target = j.contains("target_graph") ? graph_from_json(j.at("target_graph")) : source;
  const int m = int_field(j, "memory");
  const int n = int_field(j, "anticipation");
  if (m < 0 || n < 0) throw InputError("memory and anticipation must be nonnegative");
  if (!source.nondegenerate()) throw InputError("source graph must be nondegenerate");
  if (!j.contains("map") || !j.at("map").is_object()) throw InputError("rule needs a 'map' object");

  auto sp = std::make_shared<const Graph>(std::move(source));
  auto tp = j.contains("target_graph") ? std::make_shared<const Graph>(std::move(target)) : sp;
  BlockGraph windows = higher_block(*sp, m + n + 1);
  const json& map = j.at("map");
  std::vector<int> table(windows.graph.num_arcs(), -1);
  for (auto it = map.begin(); it != map.end(); ++it) {
    auto w = windows.graph.find_arc(it.key());
    if (!w) throw InputError("map key '" + it.key() + "' is not a window of the source graph");
    auto img = tp->find_arc(string_field(it.value(), "map value"));
    if (!img) throw InputError("map value for '" + it.key() + "' is not a target arc");
    table[*w] = *img;
  }
  for (int w = 0; w < windows.graph.num_arcs(); ++w)
    if (table[w] < 0) throw InputError("map has no entry for window '" + windows.graph.arc_id(w) + "'");
  return LocalRule::from_table(sp, tp, m, n, std::move(table));
}

json rule_to_json(const LocalRule& r) {
  json map = json::object();
  const Graph& wg = r.windows().graph;
  for (int w = 0; w < wg.num_arcs(); ++w) map[wg.arc_id(w)] = r.target().arc_id(r.image(w));
  json out = {{"source_graph", graph_to_json(r.source())},
              {"memory", r.memory()},
              {"anticipation", r.anticipation()},
              {"map", map}};
  if (r.source() != r.target()) out["target_graph"] = graph_to_json(r.target());
  return out;
}

json ext_to_json(const ExtInt& v) {
  if (v) return *v;
  return "-inf";
}

json path_to_json(const Graph& g, const Path& p) {
  json out = json::array();
  for (int a : p) out.push_back(g.arc_id(a));
  return out;
}

json degree_report_to_json(const DegreeReport& rep, const LocalRule& rule) {
  CanonicalRule c = canonical_form(rule);
  const Graph& src = c.rule.source();
  const Graph& wg = c.rule.windows().graph;
  auto word = [&](const Path& p) { return src.word_id(p); };
  auto merge_json = [&](const Mergibility& m) {
    json w = {{"finite", m.finite}, {"first", path_to_json(wg, m.first)}, {"second", path_to_json(wg, m.second)}};
    return w;
  };
  return {
      {"memory", rep.memory},
      {"anticipation", rep.anticipation},
      {"I", rep.I},
      {"J", rep.J},
      {"k", ext_to_json(rep.k)},
      {"l", ext_to_json(rep.l)},
      {"P_L", rep.P_L},
      {"P_R", rep.P_R},
      {"Q_R", ext_to_json(rep.Q_R)},
      {"Q_L", ext_to_json(rep.Q_L)},
      {"right_closing", rep.right_closing},
      {"left_closing", rep.left_closing},
      {"witnesses",
       {{"canonical_memory", rep.canonical_memory},
        {"canonical_anticipation", rep.canonical_anticipation},
        {"left_redundancy", {word(rep.left_witness.first), word(rep.left_witness.second)}},
        {"right_redundancy", {word(rep.right_witness.first), word(rep.right_witness.second)}},
        {"right_mergibility", merge_json(rep.right_merge_witness)},
        {"left_mergibility", merge_json(rep.left_merge_witness)}}},
  };
}

json limit_report_to_json(const LimitReport& rep) {
  auto one = [](const LimitEstimate& v) {
    json out = {{"value", to_string(v)}, {"certified", v.certified}, {"certificate", v.certificate}};
    if (!v.minus_infinity) {
      out["numerator"] = v.numerator;
      out["denominator"] = v.denominator;
      out["power"] = v.power;
    }
    return out;
  };
  return {{"max_power", rep.max_power},
          {"p_L", one(rep.p_L)},
          {"p_R", one(rep.p_R)},
          {"q_R", one(rep.q_R)},
          {"q_L", one(rep.q_L)}};
}

json classification_to_json(const TextileClass& c) {
  return {{"p_left_resolving", c.p_left},
          {"p_right_resolving", c.p_right},
          {"q_left_resolving", c.q_left},
          {"q_right_resolving", c.q_right},
          {"p_weakly_left_resolving", c.p_weak_left},
          {"p_weakly_right_resolving", c.p_weak_right},
          {"q_weakly_left_resolving", c.q_weak_left},
          {"q_weakly_right_resolving", c.q_weak_right},
          {"nondegenerate", c.nondegenerate},
          {"LR", c.lr()},
          {"RL", c.rl()},
          {"LL", c.ll()},
          {"RR", c.rr()},
          {"q_biresolving", c.q_biresolving()}};
}

json textile_to_json(const TextileSystem& t) {
  auto arc_map = [&t](const GraphHom& h) {
    json out = json::object();
    for (int a = 0; a < t.upper().num_arcs(); ++a) out[t.upper().arc_id(a)] = t.base().arc_id(h(a));
    return out;
  };
  return {{"upper", graph_to_json(t.upper())},
          {"base", graph_to_json(t.base())},
          {"p", arc_map(t.p)},
          {"q", arc_map(t.q)},
          {"classification", classification_to_json(classify(t))}};
}

Bipermutation bipermutation_from_json(const json& j, const Graph& g) {
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("table"))
    throw InputError("bipermutation needs 'alphabet' and 'table'");
  const json& alpha = j.at("alphabet");
  const json& table = j.at("table");
  if (!alpha.is_array() || !table.is_array()) throw InputError("bipermutation 'alphabet' and 'table' must be arrays");
  std::vector<int> index;
  for (const auto& s : alpha) {
    auto a = g.find_arc(string_field(s, "alphabet symbol"));
    if (!a) throw InputError("bipermutation symbol is not a symbol of the shift");
    index.push_back(*a);
  }
  if (static_cast<int>(index.size()) != g.num_arcs()) throw InputError("bipermutation alphabet must list every symbol");
  if (table.size() != index.size()) throw InputError("bipermutation table must have one row per symbol");
  Bipermutation pi;
  pi.table.assign(index.size(), std::vector<int>(index.size(), -1));
  for (size_t r = 0; r < index.size(); ++r) {
    if (!table[r].is_array() || table[r].size() != index.size()) throw InputError("bipermutation table must be square");
    for (size_t c = 0; c < index.size(); ++c) {
      auto v = g.find_arc(string_field(table[r][c], "bipermutation entry"));
      if (!v) throw InputError("bipermutation entry is not a symbol of the shift");
      pi.table[index[r]][index[c]] = *v;
    }
  }
  check_bipermutation(pi, g.num_arcs());
  return pi;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

LocalRule read_rule_file(const std::string& path) { return rule_from_json(read_json_file(path)); }

}  // namespace resolvekit
