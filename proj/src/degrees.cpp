#include "resolvekit/degrees.hpp"

#include <algorithm>
#include <map>

#include "resolvekit/error.hpp"

namespace resolvekit {

Redundancy left_redundancy(const LocalRule& r) {
  const int n_span = r.span();
  const auto& words = r.windows().arc_words;
  const Graph& g = r.source();

  // Levels up to N: windows sharing their last N+1-I arcs.
  for (int level = 1; level <= n_span; ++level) {
    std::map<Path, int> seen;
    for (size_t i = 0; i < words.size(); ++i) {
      Path key(words[i].begin() + level, words[i].end());
      auto [it, fresh] = seen.emplace(std::move(key), static_cast<int>(i));
      if (!fresh && r.image(it->second) != r.image(static_cast<int>(i)))
        return Redundancy{level - 1, words[it->second], words[i]};
    }
  }

  // Beyond N: windows ending at x and y whose futures meet after d steps.
  const int nv = g.num_vertices();
  std::vector<std::vector<int>> ending(nv);  // windows with distinct images, per terminal vertex
  for (size_t i = 0; i < words.size(); ++i) {
    auto& list = ending[g.target(words[i].back())];
    bool known = false;
    for (int j : list) known = known || r.image(j) == r.image(static_cast<int>(i));
    if (!known) list.push_back(static_cast<int>(i));
  }
  std::vector<char> meet(static_cast<size_t>(nv) * nv, 0);
  for (int v = 0; v < nv; ++v) meet[static_cast<size_t>(v) * nv + v] = 1;
  const int cap = n_span + 1 + nv * nv;
  for (int level = n_span + 1; level <= cap; ++level) {
    for (int x = 0; x < nv; ++x)
      for (int y = 0; y < nv; ++y) {
        if (!meet[static_cast<size_t>(x) * nv + y]) continue;
        std::vector<int> both = ending[x];
        both.insert(both.end(), ending[y].begin(), ending[y].end());
        for (size_t i = 1; i < both.size(); ++i)
          if (r.image(both[i]) != r.image(both[0])) return Redundancy{level - 1, words[both[0]], words[both[i]]};
      }
    std::vector<char> next(meet.size(), 0);
    for (int a = 0; a < g.num_arcs(); ++a)
      for (int b = 0; b < g.num_arcs(); ++b)
        if (meet[static_cast<size_t>(g.target(a)) * nv + g.target(b)])
          next[static_cast<size_t>(g.source(a)) * nv + g.source(b)] = 1;
    meet.swap(next);
  }
  throw PreconditionError("degenerate rule: left redundancy exceeds " + std::to_string(cap));
}

Redundancy right_redundancy(const LocalRule& r) {
  Redundancy red = left_redundancy(reverse_rule(r));
  std::reverse(red.first.begin(), red.first.end());
  std::reverse(red.second.begin(), red.second.end());
  return red;
}

int strict_left_redundancy(const LocalRule& r) { return left_redundancy(r).value; }
int strict_right_redundancy(const LocalRule& r) { return right_redundancy(r).value; }

Mergibility strict_right_mergibility(const LocalRule& r) { return right_mergibility(as_graph_hom(r)); }
Mergibility strict_left_mergibility(const LocalRule& r) { return left_mergibility(as_graph_hom(r)); }
bool decide_right_closing(const LocalRule& r) { return strict_right_mergibility(r).finite; }
bool decide_left_closing(const LocalRule& r) { return strict_left_mergibility(r).finite; }

DegreeReport degrees(const LocalRule& r) {
  CanonicalRule c = canonical_form(r);
  DegreeReport rep;
  rep.memory = r.memory();
  rep.anticipation = r.anticipation();
  rep.canonical_memory = c.rule.memory();
  rep.canonical_anticipation = c.rule.anticipation();

  rep.left_witness = left_redundancy(c.rule);
  rep.right_witness = right_redundancy(c.rule);
  GraphHom h = as_graph_hom(c.rule);
  rep.right_merge_witness = right_mergibility(h);
  rep.left_merge_witness = left_mergibility(h);

  // Padding by t coordinates raises redundancy and mergibility by t.
  rep.I = rep.left_witness.value + c.left;
  rep.J = rep.right_witness.value + c.right;
  rep.right_closing = rep.right_merge_witness.finite;
  rep.left_closing = rep.left_merge_witness.finite;
  if (rep.right_closing) rep.k = rep.right_merge_witness.value + c.right;
  if (rep.left_closing) rep.l = rep.left_merge_witness.value + c.left;

  rep.P_L = rep.I - rep.memory;
  rep.P_R = rep.J - rep.anticipation;
  if (rep.k) rep.Q_R = rep.anticipation - *rep.k;
  if (rep.l) rep.Q_L = rep.memory - *rep.l;
  return rep;
}

DegreeReport degrees(const Endomorphism& e) {
  if (!e.onto) throw PreconditionError("degrees are defined for onto endomorphisms only");
  return degrees(e.rule);
}

}  // namespace resolvekit
