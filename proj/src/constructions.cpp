#include "resolvekit/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"

namespace resolvekit {

namespace {

void require_full_shift_endo(const LocalRule& r) {
  if (!is_full_shift(r.source()) || r.source() != r.target())
    throw PreconditionError("rule must be an endomorphism of a full shift");
}

int common_size(const std::vector<VertexSet>& sets, const char* side) {
  ensure(!sets.empty(), "window hom has no compatible sets");
  const size_t n = sets.front().size();
  for (const auto& s : sets)
    if (s.size() != n) throw InvariantError(std::string("maximal ") + side + " compatible sets differ in size");
  return static_cast<int>(n);
}

std::int64_t int_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

Multipliers hedlund_multipliers(const LocalRule& r) {
  require_full_shift_endo(r);
  if (!decide_onto(r)) throw PreconditionError("rule is not onto");
  GraphHom h = as_graph_hom(r);
  return {common_size(right_compatible_family(h).maximal, "right"),
          common_size(left_compatible_family(h).maximal, "left")};
}

int fiber_count_formula(const LocalRule& r, const Multipliers& m) {
  std::int64_t words = int_pow(r.source().num_arcs(), r.span());
  std::int64_t denom = static_cast<std::int64_t>(m.right) * m.left;
  if (words % denom != 0) throw InvariantError("multipliers do not divide the window count");
  return static_cast<int>(words / denom);
}

void check_bipermutation(const Bipermutation& pi, int alphabet_size) {
  const auto n = static_cast<size_t>(alphabet_size);
  if (pi.table.size() != n) throw InputError("bipermutation table must have one row per symbol");
  for (size_t a = 0; a < n; ++a) {
    if (pi.table[a].size() != n) throw InputError("bipermutation table must be square");
    std::vector<bool> row(n, false), col(n, false);
    for (size_t b = 0; b < n; ++b) {
      int v = pi.table[a][b];
      int w = pi.table[b].size() == n ? pi.table[b][a] : -1;
      if (v < 0 || v >= alphabet_size || row[v]) throw InputError("bipermutation row is not a permutation");
      if (w < 0 || w >= alphabet_size || col[w]) throw InputError("bipermutation column is not a permutation");
      row[v] = col[w] = true;
    }
  }
}

Bipermuted bipermutation_construct(const LocalRule& fprime, const LocalRule& f, int t, const Bipermutation& pi) {
  require_full_shift_endo(f);
  require_full_shift_endo(fprime);
  if (f.source() != fprime.source()) throw PreconditionError("both rules must act on the same full shift");
  check_bipermutation(pi, f.source().num_arcs());
  Mergibility right = strict_right_mergibility(f);
  Mergibility left = strict_left_mergibility(fprime);
  if (!right.finite) throw PreconditionError("f is not right-closing");
  if (!left.finite) throw PreconditionError("fprime is not left-closing");
  const int n = f.span();
  const int nprime = fprime.span();
  const int bound = std::min(n - right.value, nprime - left.value);
  if (t >= bound)
    throw PreconditionError("t=" + std::to_string(t) + " must be below min(N-k, N'-l')=" + std::to_string(bound));
  Multipliers mf = hedlund_multipliers(f);
  Multipliers mfp = hedlund_multipliers(fprime);

  const int span = n + nprime - t;
  LocalRule g = LocalRule::from_function(f.source_ptr(), f.source_ptr(), 0, span, [&](const int* w) {
    return pi.table[fprime.apply(w)][f.apply(w + span - n)];
  });

  Bipermuted out{make_endomorphism(g), 0, 0, 0, {}, 1};
  ensure(out.endo.onto, "bipermuted rule is not onto");
  Mergibility gr = strict_right_mergibility(g);
  Mergibility gl = strict_left_mergibility(g);
  ensure(gr.finite && gr.value == right.value, "bipermuted rule changed its right mergibility");
  ensure(gl.finite && gl.value == left.value, "bipermuted rule changed its left mergibility");
  out.right_merge = gr.value;
  out.left_merge = gl.value;
  out.multipliers = hedlund_multipliers(g);
  ensure(out.multipliers.right == mf.right, "bipermuted rule changed the right multiplier");
  ensure(out.multipliers.left == mfp.left, "bipermuted rule changed the left multiplier");
  DegreeReport d = degrees(out.endo);
  out.degree_sum = *d.Q_R + *d.Q_L;
  ensure(out.degree_sum == n + nprime - right.value - left.value - t, "degree sum differs from the formula");
  ensure(out.degree_sum > 0, "degree sum is not positive");
  std::int64_t words = int_pow(f.source().num_arcs(), span);
  std::int64_t denom = static_cast<std::int64_t>(mfp.left) * mf.right;
  ensure(words % denom == 0, "multipliers do not divide the window count");
  out.fiber_count = static_cast<int>(words / denom);
  ensure(out.fiber_count == fiber_count_formula(g, out.multipliers), "fiber count formulas disagree");
  return out;
}

namespace {

IntMatrix matrix_power(IntMatrix m, std::int64_t e) {
  IntMatrix out = IntMatrix::identity(m.rows);
  while (e > 0) {
    if (e & 1) out = out * m;
    e >>= 1;
    if (e > 0) m = m * m;
  }
  return out;
}

}  // namespace

bool verify_fiber_count(const Endomorphism& e, int c, int max_period) {
  if (c < 1) return false;
  const LocalRule& r = e.rule;
  const Graph& wg = r.windows().graph;
  const int nv = wg.num_vertices();
  std::vector<IntMatrix> by_label(r.target().num_arcs(), IntMatrix(nv, nv));
  for (int a = 0; a < wg.num_arcs(); ++a) by_label[r.image(a)](wg.source(a), wg.target(a)) += 1;

  // Preimages of a point of period P are permuted by sigma^P in orbits of
  // length at most c, so they all have period dividing P * lcm(1..c).
  std::int64_t orbit = 1;
  for (int i = 2; i <= c; ++i) orbit = std::lcm(orbit, static_cast<std::int64_t>(i));

  const Graph& g = r.target();
  for (int period = 1; period <= max_period; ++period)
    for (const Path& y : paths_of_length(g, period)) {
      if (g.target(y.back()) != g.source(y.front())) continue;
      IntMatrix step = IntMatrix::identity(nv);
      for (int j = 0; j < period; ++j) step = step * by_label[y[(j + r.memory()) % period]];
      IntMatrix full = matrix_power(step, orbit);
      std::int64_t count = 0;
      for (int i = 0; i < nv; ++i) count += full(i, i);
      if (count != c) return false;
    }
  if (is_full_shift(r.source()) && r.source() == r.target()) {
    Multipliers m = hedlund_multipliers(r);
    if (int_pow(r.source().num_arcs(), r.span()) != static_cast<std::int64_t>(c) * m.right * m.left) return false;
  }
  return true;
}

DualBlockEndo dual_block_endo(const Endomorphism& e, int s) {
  if (s < 1) throw PreconditionError("order must be positive");
  if (s == 1) return {e, 1, 1};
  const LocalRule& r = e.rule;
  const Graph& g = r.source();
  const int m = r.memory();
  const int n_span = r.span();
  // Realized column words of N+1 columns already force every row to be the
  // image of the row above, so they present the column shift.
  const int width = std::max(n_span + 1, 2);

  // Rows x, phi x, ... of a source word; row i is shorter by i*N.
  auto rows_of = [&](const Path& x, int count) {
    std::vector<Path> rows{x};
    for (int i = 1; i < count; ++i) {
      const Path& prev = rows.back();
      Path next;
      for (size_t p = 0; p + n_span < prev.size(); ++p) next.push_back(r.apply(prev.data() + p));
      rows.push_back(std::move(next));
    }
    return rows;
  };
  // Column word of `len` columns, flattened column by column.
  auto columns_of = [&](const Path& x, int len) {
    std::vector<Path> rows = rows_of(x, s);
    Path out;
    for (int j = 0; j < len; ++j)
      for (int i = 0; i < s; ++i) out.push_back(rows[i][j + (s - 1 - i) * m]);
    return out;
  };
  auto column_id = [&](const Path& word, int j) {
    std::vector<std::string> parts;
    for (int i = 0; i < s; ++i) parts.push_back(g.arc_id(word[j * s + i]));
    return join_ids(parts, "|");
  };
  auto word_id = [&](const Path& word) {
    std::vector<std::string> cols;
    for (size_t j = 0; j * s < word.size(); ++j) cols.push_back(column_id(word, static_cast<int>(j)));
    return join_ids(cols, ";");
  };

  std::map<Path, int> arc_of;
  std::map<Path, int> vertex_of;
  for (const Path& x : paths_of_length(g, width + (s - 1) * n_span)) {
    Path w = columns_of(x, width);
    arc_of.emplace(w, -1);
    vertex_of.emplace(Path(w.begin(), w.end() - s), -1);
    vertex_of.emplace(Path(w.begin() + s, w.end()), -1);
  }
  GraphBuilder b;
  for (auto& [w, idx] : vertex_of) idx = b.add_vertex(word_id(w));
  for (auto& [w, idx] : arc_of)
    idx = b.add_arc(word_id(w), vertex_of.at(Path(w.begin(), w.end() - s)), vertex_of.at(Path(w.begin() + s, w.end())));
  auto graph = std::make_shared<const Graph>(std::move(b).build());
  std::vector<Path> arc_words(arc_of.size());
  for (const auto& [w, idx] : arc_of) arc_words[idx] = w;

  // Output column j: rows 1..s-1 of input column j, then phi applied to the
  // last row around j.  This is the same block map as phi^s on row 0 with
  // the s*N redundant coordinates dropped.
  auto rule = LocalRule::from_function(graph, graph, m, r.anticipation(), [&](const int* window) {
    Path cols = arc_words[window[0]];
    for (int i = 1; i <= n_span; ++i) {
      const Path& next = arc_words[window[i]];
      cols.insert(cols.end(), next.end() - s, next.end());
    }
    Path out;
    Path last(n_span + 1);
    for (int j = 0; j < width; ++j) {
      const int centre = j + m;
      for (int i = 1; i < s; ++i) out.push_back(cols[centre * s + i]);
      for (int q = 0; q <= n_span; ++q) last[q] = cols[(j + q) * s + s - 1];
      out.push_back(r.apply(last.data()));
    }
    auto it = arc_of.find(out);
    ensure(it != arc_of.end(), "transported column word is not realized");
    return it->second;
  });
  return {Endomorphism{std::move(rule), e.onto}, s, width};
}

}  // namespace resolvekit
