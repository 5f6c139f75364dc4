#include "resolvekit/textile.hpp"

#include <cmath>

#include "resolvekit/constructions.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/kitchens.hpp"

namespace resolvekit {

TextileSystem make_textile(GraphHom p, GraphHom q) {
  if (p.source != q.source) throw InputError("textile homs must share their source graph");
  if (p.target != q.target) throw InputError("textile homs must share their target graph");
  return {std::move(p), std::move(q)};
}

TextileSystem dual(const TextileSystem& t) {
  const Graph& up = t.upper();
  const Graph& base = t.base();
  GraphBuilder warp;
  for (int a = 0; a < base.num_arcs(); ++a) warp.add_vertex(base.arc_id(a));
  for (int a = 0; a < up.num_arcs(); ++a) warp.add_arc(up.arc_id(a), t.p(a), t.q(a));
  GraphBuilder woof;
  for (int v = 0; v < base.num_vertices(); ++v) woof.add_vertex(base.vertex_id(v));
  for (int v = 0; v < up.num_vertices(); ++v) woof.add_arc(up.vertex_id(v), t.p.vertex_map[v], t.q.vertex_map[v]);
  Graph upper = std::move(warp).build();
  Graph lower = std::move(woof).build();

  std::vector<int> p_arcs(up.num_arcs()), q_arcs(up.num_arcs());
  for (int a = 0; a < up.num_arcs(); ++a) {
    p_arcs[a] = up.source(a);
    q_arcs[a] = up.target(a);
  }
  std::vector<int> p_vertices(base.num_arcs()), q_vertices(base.num_arcs());
  for (int a = 0; a < base.num_arcs(); ++a) {
    p_vertices[a] = base.source(a);
    q_vertices[a] = base.target(a);
  }
  return {make_hom(upper, lower, std::move(p_arcs), std::move(p_vertices)),
          make_hom(upper, lower, std::move(q_arcs), std::move(q_vertices))};
}

InjectivityResult decide_xi_injective(const TextileSystem& t) { return decide_code_injective(t.p); }
InjectivityResult decide_eta_injective(const TextileSystem& t) { return decide_code_injective(t.q); }

TextileClass classify(const TextileSystem& t) {
  TextileClass c;
  c.p_left = is_left_resolving(t.p);
  c.p_right = is_right_resolving(t.p);
  c.q_left = is_left_resolving(t.q);
  c.q_right = is_right_resolving(t.q);
  c.p_weak_left = is_weakly_left_resolving(t.p);
  c.p_weak_right = is_weakly_right_resolving(t.p);
  c.q_weak_left = is_weakly_left_resolving(t.q);
  c.q_weak_right = is_weakly_right_resolving(t.q);
  c.nondegenerate = decide_code_onto(t.p) && decide_code_onto(t.q);
  return c;
}

namespace {

std::string show(const ExtInt& v) { return v ? std::to_string(*v) : "-inf"; }

void require_irreducible_or_injective(const LocalRule& r) {
  if (is_irreducible(r.source())) return;
  if (decide_code_injective(as_graph_hom(r)).injective) return;
  throw PreconditionError("graph is reducible and the map is not injective");
}

// Hom from the merged graph to the order-`len` block graph reading each arc
// class at a fixed offset of its words.
GraphHom read_subpath(const KitchensGraph& kg, const Graph& g, int offset, int len) {
  BlockGraph blocks = higher_block(g, len);
  std::vector<int> arc_map;
  for (const auto& cls : kg.arc_classes) {
    const Path& w = cls.front();
    int a = blocks.arc_of(Path(w.begin() + offset, w.begin() + offset + len));
    ensure(a >= 0, "subpath of a merged arc is not a block arc");
    for (const Path& other : cls)
      ensure(Path(other.begin() + offset, other.begin() + offset + len) ==
                 Path(w.begin() + offset, w.begin() + offset + len),
             "subpath is not constant on a merged arc class");
    arc_map.push_back(a);
  }
  return make_hom(kg.hom.source, blocks.graph, std::move(arc_map));
}

}  // namespace

BuiltTextile build_lr_textile(const Endomorphism& e) {
  DegreeReport d = degrees(e);
  if (d.P_L < 0 || !d.Q_R || *d.Q_R < 0)
    throw PreconditionError("construction needs P_L >= 0 and Q_R >= 0, got P_L=" + std::to_string(d.P_L) +
                            " Q_R=" + show(d.Q_R));
  require_irreducible_or_injective(e.rule);
  LocalRule f = e.rule;
  for (int i = 0; i < e.rule.memory(); ++i) {
    ensure(left_strippable(f), "memory coordinate expected to be redundant");
    f = strip_left(f);
  }
  Mergibility mg = strict_right_mergibility(f);
  ensure(mg.finite && mg.value <= f.anticipation(), "stripped rule lost its mergibility bound");
  const int k = mg.value;
  KitchensGraph kg = kitchens_plus(f, k);
  TextileSystem t = make_textile(read_subpath(kg, f.source(), 0, k + 1), kg.hom);
  TextileClass c = classify(t);
  if (!c.lr()) throw InvariantError("constructed textile is not LR");
  return {std::move(t), k + 1, k, 0, k, 0, std::move(f)};
}

BuiltTextile build_rl_textile(const Endomorphism& e) {
  DegreeReport d = degrees(e);
  if (d.P_R < 0 || !d.Q_L || *d.Q_L < 0)
    throw PreconditionError("construction needs P_R >= 0 and Q_L >= 0, got P_R=" + std::to_string(d.P_R) +
                            " Q_L=" + show(d.Q_L));
  require_irreducible_or_injective(e.rule);
  LocalRule f = e.rule;
  for (int i = 0; i < e.rule.anticipation(); ++i) {
    ensure(right_strippable(f), "anticipation coordinate expected to be redundant");
    f = strip_right(f);
  }
  Mergibility mg = strict_left_mergibility(f);
  ensure(mg.finite && mg.value <= f.memory(), "stripped rule lost its mergibility bound");
  const int l = mg.value;
  KitchensGraph kg = kitchens_minus(f, l);
  TextileSystem t = make_textile(read_subpath(kg, f.source(), f.memory(), l + 1), kg.hom);
  TextileClass c = classify(t);
  if (!c.rl()) throw InvariantError("constructed textile is not RL");
  return {std::move(t), l + 1, l, l, 0, 0, std::move(f)};
}

BuiltTextile build_qbiresolving_textile(const Endomorphism& e, int s) {
  DegreeReport d = degrees(e);
  if (!d.Q_R || !d.Q_L || *d.Q_R + *d.Q_L < 0)
    throw PreconditionError("construction needs Q_R + Q_L >= 0, got Q_R=" + show(d.Q_R) + " Q_L=" + show(d.Q_L));
  if (s < -*d.Q_R || s > *d.Q_L)
    throw PreconditionError("shift " + std::to_string(s) + " is outside [" + std::to_string(-*d.Q_R) + ", " +
                            std::to_string(*d.Q_L) + "]");
  if (!is_irreducible(e.rule.source())) throw PreconditionError("construction needs an irreducible graph");
  const LocalRule& r = e.rule;
  const int k = *d.k;
  const int l = *d.l;
  KitchensGraph kg = kitchens(r, l, k);
  TextileSystem t = make_textile(read_subpath(kg, r.source(), r.memory() - s, k + l + 1), kg.hom);
  TextileClass c = classify(t);
  if (!c.q_biresolving()) throw InvariantError("constructed textile is not q-biresolving");
  if (!classify(dual(t)).ll()) throw InvariantError("dual of the q-biresolving textile is not LL");
  return {std::move(t), k + l + 1, k, l, k, s, r};
}

std::string to_string(Situation s) {
  switch (s) {
    case Situation::expansive:
      return "expansive";
    case Situation::left_only:
      return "left_only";
    case Situation::right_only:
      return "right_only";
    case Situation::neither:
      return "neither";
  }
  return "neither";
}

SituationReport expansiveness_situation(const Endomorphism& e, int s) {
  DegreeReport d = degrees(e);
  auto decide = [](const BuiltTextile& bt, std::string branch) {
    TextileSystem ds = dual(bt.textile);
    SituationReport rep;
    rep.branch = std::move(branch);
    rep.xi_witness = decide_xi_injective(ds);
    rep.eta_witness = decide_eta_injective(ds);
    rep.xi_injective = rep.xi_witness.injective;
    rep.eta_injective = rep.eta_witness.injective;
    if (rep.xi_injective && rep.eta_injective)
      rep.situation = Situation::expansive;
    else if (rep.xi_injective)
      rep.situation = Situation::left_only;
    else if (rep.eta_injective)
      rep.situation = Situation::right_only;
    else
      rep.situation = Situation::neither;
    return rep;
  };
  if (d.Q_R && s >= std::max(-d.P_L, -*d.Q_R)) return decide(build_lr_textile(shift_compose(e, s)), "lr");
  if (d.Q_L && s <= std::min(d.P_R, *d.Q_L)) return decide(build_rl_textile(shift_compose(e, s)), "rl");
  if (d.Q_R && d.Q_L && -*d.Q_R <= s && s <= *d.Q_L) return decide(build_qbiresolving_textile(e, s), "qbi");
  throw PreconditionError("shift " + std::to_string(s) + " admits no resolving construction; undecided");
}

namespace {

// Matrix of h reindexed by the vertex order of `order`.
IntMatrix reindexed_adjacency(const Graph& h, const std::vector<std::string>& order) {
  IntMatrix m(static_cast<int>(order.size()), static_cast<int>(order.size()));
  std::vector<int> pos(h.num_vertices(), -1);
  for (size_t i = 0; i < order.size(); ++i) {
    auto v = h.find_vertex(order[i]);
    if (!v) throw PreconditionError("vertex '" + order[i] + "' missing from the commuting graph");
    pos[*v] = static_cast<int>(i);
  }
  if (h.num_vertices() != static_cast<int>(order.size()))
    throw PreconditionError("commuting graph has extra vertices");
  for (int a = 0; a < h.num_arcs(); ++a) m(pos[h.source(a)], pos[h.target(a)]) += 1;
  return m;
}

// One collapse step: from a matrix on the arcs of b to one on its vertices.
IntMatrix collapse(const Graph& b, const IntMatrix& h) {
  IntMatrix left = left_incidence(b);
  IntMatrix right = right_incidence(b);
  IntMatrix prod = h * (right * left);
  const int nv = b.num_vertices();
  IntMatrix k(nv, nv);
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) {
      bool first = true;
      for (int a : b.in_arcs(u))
        for (int c : b.out_arcs(v)) {
          if (first) {
            k(u, v) = prod(a, c);
            first = false;
          } else if (k(u, v) != prod(a, c)) {
            throw InvariantError("row and column classes of the commuting product disagree");
          }
        }
      ensure(!first, "collapse needs a nondegenerate graph");
    }
  ensure(left * h == k * left, "left rectangle identity fails after collapse");
  ensure(h * right == right * k, "right rectangle identity fails after collapse");
  return k;
}

}  // namespace

Graph commuting_graph_K(const Graph& g, const Graph& h, int t) {
  if (t < 1) throw PreconditionError("block order must be positive");
  Graph top = higher_block_graph(g, t);
  IntMatrix current = reindexed_adjacency(h, top.vertex_ids());
  IntMatrix mt = adjacency_matrix(top);
  if (current * mt != mt * current) throw PreconditionError("matrix does not commute with the block graph");
  for (int level = t; level > 1; --level) {
    Graph below = higher_block_graph(g, level - 1);
    // Vertices of below^[2] are the arcs of below, spelled with the same ids
    // as the vertices of g^[level].
    Graph here = higher_block_graph(g, level);
    IntMatrix by_arc(below.num_arcs(), below.num_arcs());
    for (int a = 0; a < below.num_arcs(); ++a)
      for (int c = 0; c < below.num_arcs(); ++c) {
        int i = *here.find_vertex(below.arc_id(a));
        int j = *here.find_vertex(below.arc_id(c));
        by_arc(a, c) = current(i, j);
      }
    current = collapse(below, by_arc);
  }
  Graph k = graph_from_matrix(current, g.vertex_ids());
  IntMatrix mg = adjacency_matrix(g);
  ensure(current * mg == mg * current, "collapsed graph does not commute with the base graph");
  return k;
}

EntropyReport entropy_checks(const Endomorphism& e) {
  DegreeReport d = degrees(e);
  EntropyReport rep;
  const Graph& g = e.rule.source();
  auto fail = [&rep](const std::string& what) {
    rep.holds = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += what;
  };
  const bool two_sided = d.Q_R && d.Q_L && *d.Q_R + *d.Q_L >= 0;
  const bool lr = d.P_L >= 0 && d.Q_R && *d.Q_R >= 0 && is_full_shift(g);
  if (!two_sided && !lr)
    throw PreconditionError("entropy identities need Q_R + Q_L >= 0, or P_L >= 0 and Q_R >= 0 on a full shift");
  if (two_sided) {
    BuiltTextile bt = build_qbiresolving_textile(e, -*d.Q_R);
    rep.qbi_entropy = std::log(spectral_radius(adjacency_matrix(dual(bt.textile).base())));
    if (is_full_shift(g)) {
      rep.fiber_count = fiber_count_formula(e.rule, hedlund_multipliers(e.rule));
      if (std::abs(*rep.qbi_entropy - std::log(static_cast<double>(*rep.fiber_count))) > 1e-6)
        fail("entropy " + std::to_string(*rep.qbi_entropy) + " differs from log " + std::to_string(*rep.fiber_count));
    }
  }
  if (lr) {
    BuiltTextile bt = build_lr_textile(e);
    Graph lower = dual(bt.textile).base();
    rep.lr_entropy = std::log(spectral_radius(adjacency_matrix(lower)));
    rep.loops = commuting_graph_K(g, lower, bt.order).num_arcs();
    if (std::abs(*rep.lr_entropy - std::log(static_cast<double>(*rep.loops))) > 1e-6)
      fail("entropy " + std::to_string(*rep.lr_entropy) + " differs from log " + std::to_string(*rep.loops));
  }
  return rep;
}

}  // namespace resolvekit
