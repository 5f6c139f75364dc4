#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/rule.hpp"

using namespace resolvekit;
using rktest::full_shift;
using rktest::load_endo;
using rktest::load_rule;
using rktest::same_on_periodic_points;

namespace {

LocalRule and_xor_rule() {
  // a0 xor (a1 and a2)
  Graph g = full_shift(2);
  return LocalRule::from_function(g, g, 0, 2, [](const int* w) { return w[0] ^ (w[1] & w[2]); });
}

// Every word of length `len` in the image language, found by applying r to
// all source words of length len+N.
std::set<std::vector<int>> image_words(const LocalRule& r, int len) {
  std::set<std::vector<int>> out;
  rktest::for_each_word(r.source().num_arcs(), len + r.span(), [&](const std::vector<int>& w) {
    std::vector<int> img(len);
    for (int i = 0; i < len; ++i) img[i] = r.apply(std::vector<int>(w.begin() + i, w.begin() + i + r.window()));
    out.insert(img);
  });
  return out;
}

void check_same_degrees(const DegreeReport& a, const DegreeReport& b) {
  CHECK(a.P_L == b.P_L);
  CHECK(a.P_R == b.P_R);
  CHECK(a.Q_R == b.Q_R);
  CHECK(a.Q_L == b.Q_L);
}

}  // namespace

TEST_CASE("rule tables are validated") {
  Graph g = full_shift(2);
  CHECK_THROWS_AS(LocalRule(g, g, 0, 0, {0}), InputError);
  CHECK_THROWS_AS(LocalRule(g, g, 0, 0, {0, 5}), InputError);
  // Images of consecutive windows must be consecutive in the target.
  Graph line({"u", "v"}, {{"a", "u", "v"}, {"b", "v", "u"}});
  CHECK_THROWS_AS(LocalRule(g, line, 0, 0, {0, 0}), InputError);
}

TEST_CASE("window homs") {
  GraphHom id = as_graph_hom(load_rule("identity.json"));
  for (int a = 0; a < id.source.num_arcs(); ++a) CHECK(id.arc_map[a] == a);

  LocalRule sh = load_rule("shift.json");
  GraphHom q = as_graph_hom(sh);
  for (int a = 0; a < q.source.num_arcs(); ++a) {
    const std::string& word = q.source.arc_id(a);
    CHECK(q.target.arc_id(q.arc_map[a]) == word.substr(word.size() - 1));
  }

  GraphHom ex = as_graph_hom(load_rule("five_arc.json"));
  auto label = [&](const char* w) { return ex.target.arc_id(ex.arc_map[*ex.source.find_arc(w)]); };
  CHECK(label("a.a") == "b");
  CHECK(label("a.b") == "c");
  CHECK(label("a.c") == "b");
}

TEST_CASE("composition examples") {
  LocalRule id = load_rule("identity.json");
  LocalRule x = load_rule("xor.json");
  CHECK(compose(id, x) == x);

  LocalRule sh = load_rule("shift.json");
  LocalRule twice = compose(sh, sh);
  CHECK(twice.memory() == 0);
  CHECK(twice.anticipation() == 2);
  for (int w = 0; w < 8; ++w) {
    std::vector<int> word{(w >> 2) & 1, (w >> 1) & 1, w & 1};
    CHECK(twice.apply(word) == word[2]);
  }

  LocalRule f0 = load_rule("hedlund_f0.json");
  LocalRule sq = compose(f0, f0);
  CHECK(sq.memory() == 2);
  CHECK(sq.anticipation() == 4);
  CHECK(same_block_map(sq, id));
  CHECK(same_on_periodic_points(sq, id, 8));
}

TEST_CASE("shift composition examples") {
  Endomorphism h = load_endo("hedlund.json");
  CHECK(shift_compose(h, 0).rule == h.rule);

  Endomorphism back = shift_compose(load_endo("shift.json"), -1);
  CHECK(back.rule.memory() == 1);
  CHECK(back.rule.anticipation() == 0);
  CHECK(same_block_map(back.rule, load_rule("identity.json")));

  Endomorphism h2 = shift_compose(h, 2);
  CHECK(h2.rule.memory() == 0);
  CHECK(h2.rule.anticipation() == 4);
  // phi sigma^2 evaluated directly on periodic points.
  LocalRule sh = load_rule("shift.json");
  CHECK(same_on_periodic_points(h2.rule, compose(compose(sh, sh), h.rule), 7));
}

TEST_CASE("power examples") {
  Endomorphism x = load_endo("xor.json");
  CHECK(power(x, 1).rule == x.rule);
  CHECK(same_block_map(power(load_endo("hedlund_f0.json"), 2).rule, load_rule("identity.json")));
  LocalRule x2 = power(x, 2).rule;
  CHECK(x2.window() == 3);
  for (int w = 0; w < 8; ++w) {
    std::vector<int> word{(w >> 2) & 1, (w >> 1) & 1, w & 1};
    CHECK(x2.apply(word) == (word[0] ^ word[2]));
  }
  CHECK(same_block_map(canonical_power(x, 3).rule, power(x, 3).rule));
}

TEST_CASE("higher block rule examples") {
  LocalRule ex = load_rule("five_arc.json");
  CHECK(higher_block_rule(ex, 1) == ex);
  LocalRule idb = higher_block_rule(load_rule("identity.json"), 2);
  CHECK(idb.source().num_arcs() == 4);
  for (int a = 0; a < idb.source().num_arcs(); ++a) CHECK(idb.image(a) == a);
  check_same_degrees(degrees(make_endomorphism(higher_block_rule(ex, 2))), degrees(make_endomorphism(ex)));
}

TEST_CASE("power system examples") {
  Endomorphism sh = load_endo("shift.json");
  CHECK(power_system_rule(sh, 1).rule == sh.rule);
  LocalRule ps = power_system_rule(sh, 2).rule;
  CHECK(ps.memory() == 0);
  CHECK(ps.anticipation() == 1);
  // (c0 c1) -> (second symbol of c0, first symbol of c1)
  for (int a = 0; a < ps.windows().graph.num_arcs(); ++a) {
    const Path& cols = ps.windows().arc_words[a];
    std::string c0 = ps.source().arc_id(cols[0]), c1 = ps.source().arc_id(cols[1]);
    CHECK(ps.target().arc_id(ps.image(a)) == c0.substr(2, 1) + "." + c1.substr(0, 1));
  }
  Endomorphism h = load_endo("hedlund.json");
  DegreeReport d1 = degrees(h), d2 = degrees(power_system_rule(h, 2));
  REQUIRE(d1.Q_R);
  REQUIRE(d2.Q_R);
  CHECK(*d1.Q_R >= 2 * *d2.Q_R);
}

TEST_CASE("surjectivity examples") {
  CHECK(decide_onto(load_rule("identity.json")));
  Graph g = full_shift(2);
  CHECK_FALSE(decide_onto(LocalRule::from_function(g, g, 0, 0, [](const int*) { return 0; })));
  LocalRule ax = and_xor_rule();
  CHECK(decide_onto(ax));
  CHECK(image_words(ax, 8).size() == 256u);
}

TEST_CASE("property: surjectivity agrees with image enumeration") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> bit(0, 1);
  Graph g = full_shift(2);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<int> table(8);
    for (int& v : table) v = bit(rng);
    LocalRule r = rktest::table_rule(2, 1, 1, table);
    bool onto = image_words(r, 12).size() == 4096u;
    CHECK(decide_onto(r) == onto);
    CHECK(decide_code_onto(as_graph_hom(r)) == onto);
  }
}

TEST_CASE("property: shift composition is additive") {
  std::mt19937 rng(32);
  for (int iter = 0; iter < 40; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2, 1 + iter % 3);
    for (int s = -2; s <= 2; ++s)
      for (int t = -2; t <= 2; ++t) {
        LocalRule a = shift_compose(shift_compose(e, s), t).rule;
        LocalRule b = shift_compose(e, s + t).rule;
        CHECK(same_block_map(a, b));
      }
    CHECK(same_on_periodic_points(shift_compose(e, 1).rule, compose(load_rule("shift.json"), e.rule), 6));
  }
}

TEST_CASE("property: composition is associative") {
  std::mt19937 rng(33);
  for (int iter = 0; iter < 30; ++iter) {
    LocalRule a = rktest::random_onto_rule(rng, 2, iter % 3).rule;
    LocalRule b = rktest::random_onto_rule(rng, 2, (iter + 1) % 3).rule;
    LocalRule c = rktest::random_onto_rule(rng, 2, 1).rule;
    LocalRule left = compose(compose(a, b), c), right = compose(a, compose(b, c));
    CHECK(same_block_map(left, right));
    CHECK(same_on_periodic_points(left, right, 6));
  }
}

TEST_CASE("property: canonical form keeps the map") {
  std::mt19937 rng(34);
  for (int iter = 0; iter < 40; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2 + iter % 2, 2);
    LocalRule padded = pad(e.rule, iter % 2, (iter / 2) % 3);
    CanonicalRule c = canonical_form(padded);
    CHECK(same_on_periodic_points(padded, c.rule, 5));
    CHECK(same_block_map(padded, e.rule));
  }
}

TEST_CASE("property: block presentations keep all four degrees") {
  std::mt19937 rng(35);
  for (int iter = 0; iter < 25; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2, 1 + iter % 2);
    DegreeReport base = degrees(e);
    for (int s = 2; s <= 3; ++s) check_same_degrees(degrees(make_endomorphism(higher_block_rule(e.rule, s))), base);
  }
}

TEST_CASE("property: power systems bound the closing degrees") {
  std::mt19937 rng(36);
  for (int iter = 0; iter < 25; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2, 1 + iter % 2);
    DegreeReport base = degrees(e);
    for (int s = 1; s <= 3; ++s) {
      DegreeReport d = degrees(power_system_rule(e, s));
      if (d.Q_R) CHECK((base.Q_R && *base.Q_R >= s * *d.Q_R));
      if (d.Q_L) CHECK((base.Q_L && *base.Q_L >= s * *d.Q_L));
      // Closing is a property of the map, so infinities match.
      CHECK(base.Q_R.has_value() == d.Q_R.has_value());
      CHECK(base.Q_L.has_value() == d.Q_L.has_value());
    }
  }
}
