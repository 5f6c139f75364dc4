#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "laws.hpp"
#include "oracles.hpp"
#include "resolvekit/constructions.hpp"
#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"
#include "resolvekit/io.hpp"

using namespace resolvekit;
using rktest::full_shift;
using rktest::load_endo;
using rktest::load_rule;

namespace {

Bipermutation xor_pi() { return Bipermutation{{{0, 1}, {1, 0}}}; }

// Preimages of the periodic point y when every point has c preimages: the
// shift by |y| permutes them, so all have period dividing |y| * lcm(1..c)
// and they are counted among words of that length.
int preimage_count(const LocalRule& r, const std::vector<int>& y, int c) {
  int l = 1;
  for (int i = 2; i <= c; ++i) l = std::lcm(l, i);
  const int len = static_cast<int>(y.size()) * l;
  std::vector<int> target(len);
  for (int i = 0; i < len; ++i) target[i] = y[i % y.size()];
  int count = 0;
  rktest::for_each_word(r.source().num_arcs(), len, [&](const std::vector<int>& x) {
    if (rktest::periodic_image(r, x) == target) ++count;
  });
  return count;
}

// The column word of (x, phi x, ..., phi^{s-1} x) for a periodic x, as a
// periodic path of the dual block graph.
Path column_path(const DualBlockEndo& db, const LocalRule& r, const std::vector<int>& x) {
  const int len = static_cast<int>(x.size());
  std::vector<std::vector<int>> rows{x};
  for (int i = 1; i < db.order; ++i) rows.push_back(rktest::periodic_image(r, rows.back()));
  const Graph& g = r.source();
  Path out;
  for (int j = 0; j < len; ++j) {
    std::vector<std::string> cols;
    for (int c = 0; c < db.word_length; ++c) {
      std::vector<std::string> parts;
      for (int i = 0; i < db.order; ++i) parts.push_back(g.arc_id(rows[i][(j + c) % len]));
      cols.push_back(join_ids(parts, "|"));
    }
    std::optional<int> arc = db.endo.rule.source().find_arc(join_ids(cols, ";"));
    REQUIRE(arc);
    out.push_back(*arc);
  }
  return out;
}

}  // namespace

TEST_CASE("multipliers") {
  Multipliers id = hedlund_multipliers(load_rule("identity.json"));
  CHECK(id.right == 1);
  CHECK(id.left == 1);
  Multipliers x = hedlund_multipliers(load_rule("xor.json"));
  CHECK(x.right == 1);
  CHECK(x.left == 1);
  Multipliers f0 = hedlund_multipliers(load_rule("hedlund_f0.json"));
  CHECK(f0.right * f0.left == 8);
  CHECK(fiber_count_formula(load_rule("hedlund_f0.json"), f0) == 1);
  CHECK(fiber_count_formula(load_rule("xor.json"), x) == 2);
  CHECK_THROWS_AS(hedlund_multipliers(load_rule("five_arc.json")), PreconditionError);
}

TEST_CASE("bipermutation tables are validated") {
  CHECK_NOTHROW(check_bipermutation(xor_pi(), 2));
  CHECK_THROWS_AS(check_bipermutation(Bipermutation{{{0, 0}, {1, 0}}}, 2), InputError);
  CHECK_THROWS_AS(check_bipermutation(Bipermutation{{{0, 1}}}, 2), InputError);
  json bad = {{"alphabet", {"0", "1"}}, {"table", {{"0", "1"}, {"0", "1"}}}};
  CHECK_THROWS_AS(bipermutation_from_json(bad, full_shift(2)), InputError);
  json good = read_json_file(rktest::data_path("xor_pi.json"));
  CHECK(bipermutation_from_json(good, full_shift(2)).table == xor_pi().table);
}

TEST_CASE("bipermuting XOR with itself") {
  LocalRule x = load_rule("xor.json");
  Bipermuted res = bipermutation_construct(x, x, 0, xor_pi());
  const LocalRule& g = res.endo.rule;
  CHECK(g.memory() == 0);
  CHECK(g.anticipation() == 2);
  for (int w = 0; w < 8; ++w) {
    std::vector<int> word{(w >> 2) & 1, (w >> 1) & 1, w & 1};
    CHECK(g.apply(word) == (word[0] ^ word[2]));
  }
  CHECK(res.degree_sum == 2);
  CHECK(res.multipliers.right == 1);
  CHECK(res.multipliers.left == 1);
  CHECK(res.fiber_count == 4);
  CHECK(res.right_merge == 0);
  CHECK(res.left_merge == 0);
  CHECK(verify_fiber_count(res.endo, 4));
}

TEST_CASE("bipermutation preconditions") {
  LocalRule padded = pad(load_rule("identity.json"), 0, 1);
  CHECK_THROWS_AS(bipermutation_construct(padded, padded, 0, xor_pi()), PreconditionError);
  LocalRule f0 = load_rule("hedlund_f0.json");
  CHECK_THROWS_AS(bipermutation_construct(f0, f0, 0, xor_pi()), PreconditionError);
  LocalRule x = load_rule("xor.json");
  CHECK_THROWS_AS(bipermutation_construct(x, x, 1, xor_pi()), PreconditionError);
}

TEST_CASE("fiber counts") {
  CHECK(verify_fiber_count(load_endo("identity.json"), 1));
  CHECK(verify_fiber_count(load_endo("xor.json"), 2));
  CHECK_FALSE(verify_fiber_count(load_endo("xor.json"), 3));
  CHECK(verify_fiber_count(load_endo("hedlund_f0.json"), 1));
  // Brute force on the periodic points themselves.
  LocalRule x = load_rule("xor.json");
  for (int p = 1; p <= 5; ++p)
    rktest::for_each_word(2, p, [&](const std::vector<int>& y) { CHECK(preimage_count(x, y, 2) == 2); });
  Graph g = full_shift(2);
  LocalRule dx = LocalRule::from_function(g, g, 0, 2, [](const int* w) { return w[0] ^ w[2]; });
  CHECK(verify_fiber_count(make_endomorphism(dx), 4));
  for (const std::vector<int>& y : {std::vector<int>{0}, std::vector<int>{1}}) CHECK(preimage_count(dx, y, 4) == 4);
}

TEST_CASE("dual block endomorphisms") {
  Endomorphism x = load_endo("xor.json");
  DualBlockEndo one = dual_block_endo(x, 1);
  CHECK(one.endo.rule == x.rule);

  DualBlockEndo two = dual_block_endo(x, 2);
  CHECK(two.endo.rule.source().num_vertices() == 4);
  for (const std::string& col : two.endo.rule.source().vertex_ids()) CHECK(col.find('|') != std::string::npos);

  Endomorphism f0 = load_endo("hedlund_f0.json");
  DualBlockEndo inv = dual_block_endo(f0, 2);
  LocalRule sq = power(inv.endo, 2).rule;
  CHECK(same_block_map(sq, identity_rule(inv.endo.rule.source())));
}

TEST_CASE("dual block keeps Hedlund's degrees") {
  Endomorphism h = load_endo("hedlund.json");
  for (int s = 1; s <= 2; ++s) CHECK(rktest::quad(degrees(dual_block_endo(h, s).endo)) == "(-1,-2,-2,-1)");
}

TEST_CASE("property: dual block degree laws") {
  std::mt19937 rng(61);
  rktest::Failures failures;
  for (int iter = 0; iter < 15; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2, 1 + iter % 2);
    rktest::check_dual_block_laws(e, 2, failures);
  }
  std::string all;
  for (const std::string& f : failures) all += f + "\n";
  CHECK_MESSAGE(failures.empty(), all);
}

TEST_CASE("property: dual block rule shifts the rows up by one") {
  std::mt19937 rng(62);
  for (int iter = 0; iter < 12; ++iter) {
    Endomorphism e = rktest::random_onto_rule(rng, 2 + iter % 2, iter % 3);
    for (int s = 2; s <= 3; ++s) {
      DualBlockEndo db = dual_block_endo(e, s);
      for (int p = 1; p <= 4; ++p)
        rktest::for_each_word(e.rule.source().num_arcs(), p, [&](const std::vector<int>& x) {
          Path image = rktest::periodic_image(db.endo.rule, column_path(db, e.rule, x));
          CHECK(image == column_path(db, e.rule, rktest::periodic_image(e.rule, x)));
        });
    }
  }
}
