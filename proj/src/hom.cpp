#include "resolvekit/hom.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "resolvekit/error.hpp"

namespace resolvekit {

Path GraphHom::image(const Path& p) const {
  Path out;
  out.reserve(p.size());
  for (int a : p) out.push_back(arc_map[a]);
  return out;
}

namespace {

std::optional<std::string> hom_violation(const GraphHom& h) {
  if (static_cast<int>(h.arc_map.size()) != h.source.num_arcs()) return "arc map has wrong size";
  if (static_cast<int>(h.vertex_map.size()) != h.source.num_vertices()) return "vertex map has wrong size";
  for (int v : h.vertex_map)
    if (v < 0 || v >= h.target.num_vertices()) return "vertex map out of range";
  for (int a = 0; a < h.source.num_arcs(); ++a) {
    int b = h.arc_map[a];
    if (b < 0 || b >= h.target.num_arcs()) return "arc map out of range at '" + h.source.arc_id(a) + "'";
    if (h.target.source(b) != h.vertex_map[h.source.source(a)] ||
        h.target.target(b) != h.vertex_map[h.source.target(a)])
      return "arc '" + h.source.arc_id(a) + "' maps to '" + h.target.arc_id(b) + "' with mismatched endpoints";
  }
  return std::nullopt;
}

}  // namespace

GraphHom make_hom(Graph source, Graph target, std::vector<int> arc_map, std::vector<int> vertex_map) {
  GraphHom h{std::move(source), std::move(target), std::move(arc_map), std::move(vertex_map)};
  if (static_cast<int>(h.arc_map.size()) != h.source.num_arcs()) throw InputError("arc map has wrong size");
  if (h.vertex_map.empty() && h.source.num_vertices() > 0) {
    h.vertex_map.assign(h.source.num_vertices(), -1);
    for (int u = 0; u < h.source.num_vertices(); ++u) {
      const auto& outs = h.source.out_arcs(u);
      const auto& ins = h.source.in_arcs(u);
      int b;
      if (!outs.empty()) {
        b = h.arc_map[outs.front()];
        if (b < 0 || b >= h.target.num_arcs()) throw InputError("arc map out of range");
        h.vertex_map[u] = h.target.source(b);
      } else if (!ins.empty()) {
        b = h.arc_map[ins.front()];
        if (b < 0 || b >= h.target.num_arcs()) throw InputError("arc map out of range");
        h.vertex_map[u] = h.target.target(b);
      } else {
        throw InputError("cannot infer the image of isolated vertex '" + h.source.vertex_id(u) + "'");
      }
    }
  }
  if (auto err = hom_violation(h)) throw InputError("invalid graph homomorphism: " + *err);
  return h;
}

GraphHom identity_hom(const Graph& g) {
  std::vector<int> arcs(g.num_arcs()), verts(g.num_vertices());
  for (int a = 0; a < g.num_arcs(); ++a) arcs[a] = a;
  for (int v = 0; v < g.num_vertices(); ++v) verts[v] = v;
  return GraphHom{g, g, std::move(arcs), std::move(verts)};
}

void check_hom(const GraphHom& h) {
  if (auto err = hom_violation(h)) throw InvariantError("graph homomorphism violated: " + *err);
}

GraphHom reverse_hom(const GraphHom& h) {
  return GraphHom{reverse_graph(h.source), reverse_graph(h.target), h.arc_map, h.vertex_map};
}

GraphHom trim_source(const GraphHom& h, std::vector<int>* arc_origin) {
  Subgraph sub = trim_with_origin(h.source);
  GraphHom out;
  out.source = std::move(sub.graph);
  out.target = h.target;
  for (int a : sub.arc_origin) out.arc_map.push_back(h.arc_map[a]);
  for (int v : sub.vertex_origin) out.vertex_map.push_back(h.vertex_map[v]);
  if (arc_origin) *arc_origin = std::move(sub.arc_origin);
  return out;
}

namespace {

// For each source vertex, how many out-arcs (or in-arcs) carry each label.
bool resolving(const GraphHom& h, bool right, bool weak) {
  std::vector<int> count(h.target.num_arcs(), 0);
  for (int u = 0; u < h.source.num_vertices(); ++u) {
    const auto& arcs = right ? h.source.out_arcs(u) : h.source.in_arcs(u);
    for (int a : arcs) ++count[h.arc_map[a]];
    bool ok = true;
    for (int a : arcs)
      if (count[h.arc_map[a]] > 1) ok = false;
    if (ok && !weak) {
      int v = h.vertex_map[u];
      const auto& targets = right ? h.target.out_arcs(v) : h.target.in_arcs(v);
      for (int b : targets)
        if (count[b] != 1) ok = false;
    }
    for (int a : arcs) count[h.arc_map[a]] = 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_right_resolving(const GraphHom& h) { return resolving(h, true, false); }
bool is_left_resolving(const GraphHom& h) { return resolving(h, false, false); }
bool is_weakly_right_resolving(const GraphHom& h) { return resolving(h, true, true); }
bool is_weakly_left_resolving(const GraphHom& h) { return resolving(h, false, true); }

PairGraph fiber_pair_graph(const GraphHom& h1, const GraphHom& h2) {
  if (h1.target != h2.target) throw PreconditionError("fiber product of homs with different targets");
  PairGraph pg;
  GraphBuilder b;
  std::map<std::pair<int, int>, int> index;
  for (int u = 0; u < h1.source.num_vertices(); ++u)
    for (int v = 0; v < h2.source.num_vertices(); ++v) {
      if (h1.vertex_map[u] != h2.vertex_map[v]) continue;
      index[{u, v}] = b.add_vertex("(" + h1.source.vertex_id(u) + "," + h2.source.vertex_id(v) + ")");
      pg.vertex_pairs.push_back({u, v});
    }
  std::vector<std::vector<int>> by_label(h1.target.num_arcs());
  for (int a = 0; a < h2.source.num_arcs(); ++a) by_label[h2.arc_map[a]].push_back(a);
  for (int a = 0; a < h1.source.num_arcs(); ++a)
    for (int c : by_label[h1.arc_map[a]]) {
      int from = index.at({h1.source.source(a), h2.source.source(c)});
      int to = index.at({h1.source.target(a), h2.source.target(c)});
      b.add_arc("(" + h1.source.arc_id(a) + "," + h2.source.arc_id(c) + ")", from, to);
      pg.arc_pairs.push_back({a, c});
    }
  pg.graph = std::move(b).build();
  return pg;
}

std::string set_id(const Graph& g, const VertexSet& s) {
  std::vector<std::string> names;
  names.reserve(s.size());
  for (int v : s) names.push_back(g.vertex_id(v));
  std::sort(names.begin(), names.end());
  return "{" + join_ids(names, ",") + "}";
}

VertexSet successor_set(const GraphHom& h, const VertexSet& u, int target_arc) {
  VertexSet out;
  for (int v : u)
    for (int a : h.source.out_arcs(v))
      if (h.arc_map[a] == target_arc) out.push_back(h.source.target(a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet predecessor_set(const GraphHom& h, const VertexSet& u, int target_arc) {
  VertexSet out;
  for (int v : u)
    for (int a : h.source.in_arcs(v))
      if (h.arc_map[a] == target_arc) out.push_back(h.source.source(a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Closure of `seeds` under nonempty successors, in discovery order.
std::vector<VertexSet> successor_closure(const GraphHom& h, const std::vector<VertexSet>& seeds) {
  std::set<VertexSet> seen;
  std::vector<VertexSet> order;
  std::deque<VertexSet> work;
  for (const auto& s : seeds)
    if (seen.insert(s).second) {
      order.push_back(s);
      work.push_back(s);
    }
  while (!work.empty()) {
    VertexSet u = std::move(work.front());
    work.pop_front();
    int v = h.vertex_map[u.front()];
    for (int a : h.target.out_arcs(v)) {
      VertexSet next = successor_set(h, u, a);
      if (!next.empty() && seen.insert(next).second) {
        order.push_back(next);
        work.push_back(std::move(next));
      }
    }
  }
  return order;
}

}  // namespace

CompatibleFamily right_compatible_family(const GraphHom& h) {
  CompatibleFamily fam;
  std::vector<VertexSet> singletons;
  for (int u = 0; u < h.source.num_vertices(); ++u) singletons.push_back({u});
  fam.compatible = successor_closure(h, singletons);
  std::sort(fam.compatible.begin(), fam.compatible.end());

  std::vector<const VertexSet*> by_size;
  for (const auto& s : fam.compatible) by_size.push_back(&s);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const VertexSet* a, const VertexSet* b) { return a->size() > b->size(); });
  for (const auto& s : fam.compatible) {
    bool maximal = true;
    for (const VertexSet* t : by_size) {
      if (t->size() <= s.size()) break;
      if (std::includes(t->begin(), t->end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) fam.maximal.push_back(s);
  }
  fam.closure = successor_closure(h, fam.maximal);
  std::sort(fam.closure.begin(), fam.closure.end());
  return fam;
}

CompatibleFamily left_compatible_family(const GraphHom& h) { return right_compatible_family(reverse_hom(h)); }

namespace {

Resolver build_resolver(const GraphHom& h, bool left_naming) {
  CompatibleFamily fam = right_compatible_family(h);
  std::vector<std::pair<std::string, VertexSet>> named;
  for (auto& s : fam.closure) named.push_back({set_id(h.source, s), std::move(s)});
  std::sort(named.begin(), named.end());

  Resolver r;
  GraphBuilder b;
  std::map<VertexSet, int> index;
  for (auto& [id, s] : named) {
    index[s] = b.add_vertex(id);
    r.vertex_sets.push_back(s);
    r.hom.vertex_map.push_back(h.vertex_map[s.front()]);
  }
  for (size_t i = 0; i < named.size(); ++i) {
    const VertexSet& u = r.vertex_sets[i];
    for (int a : h.target.out_arcs(r.hom.vertex_map[i])) {
      VertexSet next = successor_set(h, u, a);
      if (next.empty()) continue;
      const std::string& uid = named[i].first;
      const std::string& aid = h.target.arc_id(a);
      b.add_arc(left_naming ? "(" + aid + "," + uid + ")" : "(" + uid + "," + aid + ")", static_cast<int>(i),
                index.at(next));
      r.hom.arc_map.push_back(a);
    }
  }
  r.hom.source = std::move(b).build();
  r.hom.target = h.target;
  check_hom(r.hom);
  return r;
}

}  // namespace

Resolver induced_right_resolver(const GraphHom& h) {
  Resolver r = build_resolver(h, false);
  ensure(is_weakly_right_resolving(r.hom), "induced right resolver is not weakly right-resolving");
  return r;
}

Resolver induced_left_resolver(const GraphHom& h) {
  Resolver r = build_resolver(reverse_hom(h), true);
  r.hom = reverse_hom(r.hom);
  ensure(is_weakly_left_resolving(r.hom), "induced left resolver is not weakly left-resolving");
  return r;
}

bool decide_code_onto(const GraphHom& h, Path* missing) {
  GraphHom ht = trim_source(h);
  Subgraph tt = trim_with_origin(h.target);
  std::vector<int> target_alive(h.target.num_arcs(), 0);
  for (int a : tt.arc_origin) target_alive[a] = 1;

  std::map<VertexSet, int> index;
  std::vector<VertexSet> sets;
  std::vector<int> parent, via;
  std::deque<int> work;
  auto visit = [&](VertexSet s, int from, int arc) -> bool {
    if (index.count(s)) return true;
    int id = static_cast<int>(sets.size());
    index[s] = id;
    sets.push_back(std::move(s));
    parent.push_back(from);
    via.push_back(arc);
    work.push_back(id);
    return !sets.back().empty();
  };
  auto report = [&](int id, int start_vertex) {
    if (!missing) return;
    missing->clear();
    for (int x = id; x >= 0 && via[x] >= 0; x = parent[x]) missing->push_back(via[x]);
    std::reverse(missing->begin(), missing->end());
    if (missing->empty() && start_vertex >= 0) {
      // An uncovered vertex: report any arc leaving it.
      const auto& outs = h.target.out_arcs(start_vertex);
      for (int a : outs)
        if (target_alive[a]) {
          missing->push_back(a);
          break;
        }
    }
  };

  for (int vi : tt.vertex_origin) {
    VertexSet start;
    for (int u = 0; u < ht.source.num_vertices(); ++u)
      if (ht.vertex_map[u] == vi) start.push_back(u);
    if (start.empty()) {
      report(-1, vi);
      return false;
    }
    visit(std::move(start), -1, -1);
  }
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    int v = ht.vertex_map[sets[id].front()];
    for (int a : h.target.out_arcs(v)) {
      if (!target_alive[a]) continue;
      VertexSet next = successor_set(ht, sets[id], a);
      if (!visit(std::move(next), id, a)) {
        report(index.at(VertexSet{}), -1);
        return false;
      }
    }
  }
  return true;
}

InjectivityResult decide_code_injective(const GraphHom& h) {
  PairGraph pg = fiber_pair_graph(h, h);
  Subgraph live = trim_with_origin(pg.graph);
  InjectivityResult res;
  int start = -1;
  for (int e = 0; e < live.graph.num_arcs(); ++e) {
    auto [a, b] = pg.arc_pairs[live.arc_origin[e]];
    if (a != b) {
      start = e;
      break;
    }
  }
  if (start < 0) return res;
  res.injective = false;
  // Walk forward from the off-diagonal arc until a pair state repeats.
  std::vector<char> seen(live.graph.num_vertices(), 0);
  int e = start;
  while (true) {
    auto [a, b] = pg.arc_pairs[live.arc_origin[e]];
    res.first.push_back(a);
    res.second.push_back(b);
    int v = live.graph.target(e);
    if (seen[v]) break;
    seen[v] = 1;
    e = live.graph.out_arcs(v).front();
  }
  return res;
}

namespace {

constexpr int kInfinite = -1;

struct PairState {
  char color = 0;  // 0 new, 1 on stack, 2 done
  int depth = 0;   // longest continuation, kInfinite if unbounded
  int next_a = -1;
  int next_b = -1;
};

}  // namespace

Mergibility right_mergibility(const GraphHom& h) {
  std::vector<int> origin;
  GraphHom ht = trim_source(h, &origin);
  const Graph& g = ht.source;
  const std::int64_t nv = g.num_vertices();

  // Out-arcs of each vertex sorted by label, so pair successors come from a merge.
  std::vector<std::vector<std::pair<int, int>>> outs(nv);
  for (int v = 0; v < nv; ++v) {
    for (int a : g.out_arcs(v)) outs[v].push_back({ht.arc_map[a], a});
    std::sort(outs[v].begin(), outs[v].end());
  }
  auto successors = [&](int x, int y) {
    std::vector<std::pair<int, int>> out;
    const auto& ox = outs[x];
    const auto& oy = outs[y];
    size_t i = 0, j = 0;
    while (i < ox.size() && j < oy.size()) {
      if (ox[i].first < oy[j].first) {
        ++i;
      } else if (oy[j].first < ox[i].first) {
        ++j;
      } else {
        int label = ox[i].first;
        size_t j0 = j;
        for (; i < ox.size() && ox[i].first == label; ++i)
          for (j = j0; j < oy.size() && oy[j].first == label; ++j) out.push_back({ox[i].second, oy[j].second});
      }
    }
    return out;
  };

  std::unordered_map<std::int64_t, PairState> memo;
  auto key = [&](int x, int y) { return static_cast<std::int64_t>(x) * nv + y; };

  // Returns true as soon as an unbounded continuation is found; the stack
  // then records the witness path.  A pair that reaches the diagonal
  // continues forever since the source is trimmed.
  auto evaluate = [&](int x0, int y0) -> bool {
    struct Frame {
      int x, y;
      std::vector<std::pair<int, int>> succ;
      size_t pos = 0;
    };
    std::vector<Frame> stack;
    auto push = [&](int x, int y) {
      memo[key(x, y)].color = 1;
      stack.push_back({x, y, successors(x, y)});
    };
    if (memo[key(x0, y0)].color == 2) return memo[key(x0, y0)].depth == kInfinite;
    auto unbounded = [&](int a, int b) {
      for (Frame& fr : stack) {
        PairState& s = memo[key(fr.x, fr.y)];
        s.color = 2;
        s.depth = kInfinite;
        s.next_a = fr.succ[fr.pos - 1].first;
        s.next_b = fr.succ[fr.pos - 1].second;
      }
      PairState& last = memo[key(stack.back().x, stack.back().y)];
      last.next_a = a;
      last.next_b = b;
      return true;
    };
    if (x0 == y0) {
      memo[key(x0, y0)] = PairState{2, kInfinite, -1, -1};
      return true;
    }
    push(x0, y0);
    while (!stack.empty()) {
      Frame& f = stack.back();
      PairState& st = memo[key(f.x, f.y)];
      if (f.pos < f.succ.size()) {
        auto [a, b] = f.succ[f.pos++];
        int nx = g.target(a), ny = g.target(b);
        if (nx == ny) return unbounded(a, b);
        PairState& child = memo[key(nx, ny)];
        if (child.color == 1 || (child.color == 2 && child.depth == kInfinite)) return unbounded(a, b);
        if (child.color == 0) {
          push(nx, ny);
          continue;
        }
        if (child.depth + 1 > st.depth) {
          st.depth = child.depth + 1;
          st.next_a = a;
          st.next_b = b;
        }
        continue;
      }
      // Element references of an unordered_map survive rehashing.
      st.color = 2;
      int d = st.depth;
      stack.pop_back();
      if (stack.empty()) break;
      Frame& p = stack.back();
      PairState& parent = memo[key(p.x, p.y)];
      auto [a, b] = p.succ[p.pos - 1];
      if (d + 1 > parent.depth) {
        parent.depth = d + 1;
        parent.next_a = a;
        parent.next_b = b;
      }
    }
    return false;
  };

  Mergibility res;
  int best_a = -1, best_b = -1, best_depth = -2;
  for (int x = 0; x < nv; ++x) {
    const auto& ox = outs[x];
    for (size_t i = 0; i < ox.size(); ++i)
      for (size_t j = i + 1; j < ox.size() && ox[j].first == ox[i].first; ++j) {
        int a = ox[i].second, b = ox[j].second;
        int tx = g.target(a), ty = g.target(b);
        if (evaluate(tx, ty)) {
          best_a = a;
          best_b = b;
          best_depth = kInfinite;
          goto done;
        }
        if (int d = memo[key(tx, ty)].depth; d > best_depth) {
          best_depth = d;
          best_a = a;
          best_b = b;
        }
      }
  }
done:
  if (best_a < 0) return res;  // no branching: 0 right-mergible
  res.finite = best_depth != kInfinite;
  if (res.finite) res.value = best_depth + 1;
  ensure(!res.finite || res.value <= nv * nv, "mergibility exceeds the pair-state bound");

  // Rebuild the witness along the recorded best successors.
  std::set<std::int64_t> visited;
  int a = best_a, b = best_b;
  while (true) {
    res.first.push_back(origin[a]);
    res.second.push_back(origin[b]);
    int x = g.target(a), y = g.target(b);
    const PairState& st = memo[key(x, y)];
    if (st.next_a < 0 || !visited.insert(key(x, y)).second) break;
    a = st.next_a;
    b = st.next_b;
  }
  return res;
}

Mergibility left_mergibility(const GraphHom& h) {
  Mergibility m = right_mergibility(reverse_hom(h));
  std::reverse(m.first.begin(), m.first.end());
  std::reverse(m.second.begin(), m.second.end());
  return m;
}

}  // namespace resolvekit
