#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "resolvekit/constructions.hpp"
#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/textile.hpp"

using namespace resolvekit;
using rktest::full_shift;
using rktest::load_endo;
using rktest::load_rule;

namespace {

bool same_textile(const TextileSystem& a, const TextileSystem& b) {
  return a.upper() == b.upper() && a.base() == b.base() && a.p.arc_map == b.p.arc_map && a.q.arc_map == b.q.arc_map &&
         a.p.vertex_map == b.p.vertex_map && a.q.vertex_map == b.q.vertex_map;
}

TextileSystem identity_textile(const Graph& g) { return make_textile(identity_hom(g), identity_hom(g)); }

// Closed paths of the upper graph with length 1..max_len.
void for_each_cycle(const Graph& g, int max_len, const std::function<void(const Path&)>& fn) {
  Path path;
  std::function<void(int, int)> walk = [&](int start, int v) {
    for (int a : g.out_arcs(v)) {
      path.push_back(a);
      if (g.target(a) == start) fn(path);
      if (static_cast<int>(path.size()) < max_len) walk(start, g.target(a));
      path.pop_back();
    }
  };
  for (int v = 0; v < g.num_vertices(); ++v) walk(v, v);
}

// The endomorphism a built textile carries, written on the block graph.
LocalRule transported(const BuiltTextile& bt) {
  return higher_block_rule(shift_compose(Endomorphism{bt.rule, true}, bt.shift).rule, bt.order);
}

// On every periodic point of the upper graph with period <= max_len, the
// q-image equals the transported map applied to the p-image.
bool transport_holds(const BuiltTextile& bt, int max_len) {
  LocalRule f = transported(bt);
  bool ok = true;
  int checked = 0;
  for_each_cycle(bt.textile.upper(), max_len, [&](const Path& c) {
    if (!ok) return;
    ++checked;
    Path x = bt.textile.p.image(c), y = bt.textile.q.image(c);
    if (rktest::periodic_image(f, x) != y) ok = false;
  });
  return ok && checked > 0;
}

IntMatrix square(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Endomorphism double_xor() {
  Graph g = full_shift(2);
  return make_endomorphism(LocalRule::from_function(g, g, 0, 2, [](const int* w) { return w[0] ^ w[2]; }));
}

}  // namespace

TEST_CASE("textile homs must share their graphs") {
  Graph g2 = full_shift(2), g3 = full_shift(3);
  CHECK_THROWS_AS(make_textile(identity_hom(g2), identity_hom(g3)), InputError);
}

TEST_CASE("dual of the identity textile on a full shift") {
  TextileSystem t = identity_textile(full_shift(2));
  TextileSystem d = dual(t);
  CHECK(d.base().num_vertices() == 1);
  CHECK(d.base().num_arcs() == 1);
  CHECK(d.upper().num_vertices() == 2);
  CHECK(d.upper().num_arcs() == 2);
  CHECK(same_textile(dual(d), t));
}

TEST_CASE("injectivity decisions on small textiles") {
  TextileSystem t = identity_textile(full_shift(2));
  CHECK(decide_xi_injective(t).injective);
  CHECK(decide_eta_injective(t).injective);

  Graph two = full_shift(2);
  Graph one({"*"}, {{"x", "*", "*"}});
  Graph upper({"*"}, {{"a", "*", "*"}, {"b", "*", "*"}});
  Graph base({"*"}, {{"a", "*", "*"}, {"b", "*", "*"}});
  TextileSystem collapse = make_textile(make_hom(upper, base, {0, 1}), make_hom(upper, base, {0, 0}));
  CHECK(decide_xi_injective(collapse).injective);
  InjectivityResult eta = decide_eta_injective(collapse);
  CHECK_FALSE(eta.injective);
  CHECK(eta.first != eta.second);
}

TEST_CASE("LR textile of the identity") {
  BuiltTextile bt = build_lr_textile(load_endo("identity.json"));
  CHECK(bt.order == 1);
  CHECK(bt.textile.upper().num_arcs() == bt.textile.base().num_arcs());
  for (int a = 0; a < bt.textile.upper().num_arcs(); ++a) CHECK(bt.textile.p(a) == bt.textile.q(a));
  CHECK(classify(bt.textile).lr());
}

TEST_CASE("LR textile of the five-arc example") {
  BuiltTextile bt = build_lr_textile(load_endo("five_arc.json"));
  CHECK(bt.order == 2);
  TextileClass c = classify(bt.textile);
  CHECK(c.lr());
  CHECK(c.nondegenerate);
  CHECK(is_left_resolving(bt.textile.p));
  CHECK(is_right_resolving(bt.textile.q));
  CHECK(bt.textile.base().num_arcs() == 13);
  CHECK(transport_holds(bt, 6));
}

TEST_CASE("LR textile of Hedlund's map shifted twice") {
  Endomorphism e = shift_compose(load_endo("hedlund.json"), 2);
  BuiltTextile bt = build_lr_textile(e);
  CHECK(classify(bt.textile).lr());
  TextileSystem d = dual(bt.textile);
  CHECK_FALSE(decide_xi_injective(d).injective);
  CHECK(decide_eta_injective(d).injective);
  CHECK(transport_holds(bt, 5));
}

TEST_CASE("LR construction checks its degree preconditions") {
  CHECK_THROWS_AS(build_lr_textile(load_endo("hedlund.json")), PreconditionError);
  CHECK_THROWS_AS(build_rl_textile(load_endo("five_arc.json")), PreconditionError);
}

TEST_CASE("RL textiles") {
  BuiltTextile id = build_rl_textile(load_endo("identity.json"));
  CHECK(classify(id.textile).rl());
  BuiltTextile ex = build_rl_textile(shift_compose(load_endo("five_arc.json"), -1));
  CHECK(classify(ex.textile).rl());
  CHECK(transport_holds(ex, 6));
  // Reversing time turns the LR construction into the RL one.
  Endomorphism h = shift_compose(load_endo("hedlund.json"), 2);
  BuiltTextile lr = build_lr_textile(h);
  BuiltTextile rl = build_rl_textile(reverse_endomorphism(h));
  CHECK(rl.order == lr.order);
  CHECK(rl.textile.upper().num_vertices() == lr.textile.upper().num_vertices());
  CHECK(rl.textile.upper().num_arcs() == lr.textile.upper().num_arcs());
}

TEST_CASE("q-biresolving textiles") {
  BuiltTextile id = build_qbiresolving_textile(load_endo("identity.json"), 0);
  CHECK(classify(id.textile).q_biresolving());

  Endomorphism g = double_xor();
  DegreeReport d = degrees(g);
  CHECK(d.Q_R == 2);
  CHECK(d.Q_L == 0);
  for (int s = -2; s <= 0; ++s) {
    BuiltTextile bt = build_qbiresolving_textile(g, s);
    TextileClass c = classify(bt.textile);
    CHECK(c.q_biresolving());
    CHECK(c.nondegenerate);
    CHECK(classify(dual(bt.textile)).ll());
    CHECK(transport_holds(bt, 5));
  }
  CHECK_THROWS_AS(build_qbiresolving_textile(g, 1), PreconditionError);
  CHECK_THROWS_AS(build_qbiresolving_textile(load_endo("five_arc.json"), 0), PreconditionError);
}

TEST_CASE("expansiveness situations") {
  CHECK(expansiveness_situation(load_endo("shift.json"), 0).situation == Situation::expansive);
  SituationReport ex = expansiveness_situation(load_endo("five_arc.json"), 0);
  CHECK(ex.situation == Situation::neither);
  CHECK_FALSE(ex.xi_injective);
  CHECK_FALSE(ex.eta_injective);
  SituationReport h = expansiveness_situation(load_endo("hedlund.json"), 2);
  CHECK_FALSE(h.xi_injective);
  CHECK(h.situation == Situation::right_only);
  CHECK(to_string(h.situation) == "right_only");
  // Between the two one-sided branches and outside the two-sided window.
  CHECK_THROWS_AS(expansiveness_situation(load_endo("hedlund.json"), 0), PreconditionError);
}

TEST_CASE("commuting graph examples") {
  Graph g = load_rule("five_arc.json").source();
  Graph k = commuting_graph_K(g, g, 1);
  CHECK(adjacency_matrix(k) == adjacency_matrix(g));

  Graph two = full_shift(2);
  Graph h = graph_from_matrix(square({{2, 1}, {1, 2}}), {"0", "1"});
  Graph k2 = commuting_graph_K(two, h, 2);
  CHECK(k2.num_vertices() == 1);
  CHECK(k2.num_arcs() == 3);

  for (int t = 1; t <= 3; ++t) CHECK(adjacency_matrix(commuting_graph_K(g, higher_block_graph(g, t), t)) == adjacency_matrix(g));

  Graph bad = graph_from_matrix(square({{1, 0}, {0, 0}}), {"0", "1"});
  CHECK_THROWS_AS(commuting_graph_K(two, bad, 2), PreconditionError);
}

TEST_CASE("entropy identities") {
  EntropyReport id = entropy_checks(load_endo("identity.json"));
  CHECK(id.holds);
  REQUIRE(id.qbi_entropy);
  CHECK(std::abs(*id.qbi_entropy) < 1e-9);

  EntropyReport x = entropy_checks(load_endo("xor.json"));
  CHECK(x.holds);
  CHECK(x.fiber_count == 2);
  CHECK(std::abs(*x.qbi_entropy - std::log(2.0)) <= 1e-6);

  EntropyReport g = entropy_checks(double_xor());
  CHECK(g.holds);
  CHECK(g.fiber_count == 4);
  CHECK(std::abs(*g.qbi_entropy - std::log(4.0)) <= 1e-6);
  CHECK(g.loops == 4);
  CHECK(std::abs(*g.lr_entropy - std::log(4.0)) <= 1e-6);

  CHECK_THROWS_AS(entropy_checks(load_endo("hedlund.json")), PreconditionError);
}

TEST_CASE("property: constructions on random rules") {
  std::mt19937 rng(51);
  int built = 0;
  for (int iter = 0; iter < 30; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2, 1 + iter % 2);
    DegreeReport d = degrees(e);
    if (d.Q_R) {
      int s = std::max(-d.P_L, -*d.Q_R);
      BuiltTextile bt = build_lr_textile(shift_compose(e, s));
      CHECK(is_left_resolving(bt.textile.p));
      CHECK(is_right_resolving(bt.textile.q));
      CHECK(same_textile(dual(dual(bt.textile)), bt.textile));
      CHECK(transport_holds(bt, 4));
      ++built;
    }
    if (d.Q_R && d.Q_L && *d.Q_R + *d.Q_L >= 0) {
      BuiltTextile bt = build_qbiresolving_textile(e, -*d.Q_R);
      CHECK(classify(dual(bt.textile)).ll());
      CHECK(same_textile(dual(dual(bt.textile)), bt.textile));
      CHECK(transport_holds(bt, 4));
      ++built;
    }
  }
  CHECK(built > 10);
}
