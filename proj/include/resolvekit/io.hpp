#pragma once

#include <string>

#include "json.hpp"
#include "resolvekit/constructions.hpp"
#include "resolvekit/degrees.hpp"
#include "resolvekit/graph.hpp"
#include "resolvekit/limits.hpp"
#include "resolvekit/rule.hpp"
#include "resolvekit/textile.hpp"

namespace resolvekit {

using json = nlohmann::json;

// {"vertices": [...], "arcs": [{"id", "from", "to"}, ...]} or the one-vertex
// shorthand {"full_alphabet": [...]}.
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);

// {"source_graph", "target_graph" (optional), "memory", "anticipation",
//  "map": {"a.b": "c", ...}} with windows spelled as dot-joined arc ids.
LocalRule rule_from_json(const json& j);
json rule_to_json(const LocalRule& r);

json ext_to_json(const ExtInt& v);
json path_to_json(const Graph& g, const Path& p);
json degree_report_to_json(const DegreeReport& rep, const LocalRule& rule);

json limit_report_to_json(const LimitReport& rep);

// {"upper", "base", "p": {arc: arc}, "q": {arc: arc}, "classification"}.
json textile_to_json(const TextileSystem& t);
json classification_to_json(const TextileClass& c);

// {"alphabet": [...], "table": [[...], ...]} with symbols spelled as arc ids
// of the full shift graph `g`.
Bipermutation bipermutation_from_json(const json& j, const Graph& g);

json read_json_file(const std::string& path);
LocalRule read_rule_file(const std::string& path);

}  // namespace resolvekit
