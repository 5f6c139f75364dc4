#include "resolvekit/rule.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "resolvekit/error.hpp"

namespace resolvekit {

namespace {

// Window graphs are shared between rules over the same graph object; rule
// algebra in the tests builds thousands of rules over a handful of graphs.
std::shared_ptr<const BlockGraph> window_graph(const std::shared_ptr<const Graph>& g, int order) {
  static std::mutex mu;
  static std::map<std::pair<const Graph*, int>, std::pair<std::weak_ptr<const Graph>, std::shared_ptr<const BlockGraph>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.get(), order);
  auto it = cache.find(key);
  if (it != cache.end() && it->second.first.lock() == g) return it->second.second;
  if (cache.size() > 512) {
    for (auto jt = cache.begin(); jt != cache.end();) jt = jt->second.first.expired() ? cache.erase(jt) : std::next(jt);
  }
  auto bg = std::make_shared<const BlockGraph>(higher_block(*g, order));
  cache[key] = {g, bg};
  return bg;
}

}  // namespace

LocalRule::LocalRule(Graph source, Graph target, int memory, int anticipation, std::vector<int> table)
    : source_(std::make_shared<const Graph>(std::move(source))),
      target_(std::make_shared<const Graph>(std::move(target))),
      memory_(memory),
      anticipation_(anticipation),
      table_(std::move(table)) {
  if (memory_ < 0 || anticipation_ < 0) throw InputError("memory and anticipation must be nonnegative");
  if (!source_->nondegenerate()) throw InputError("source graph of a rule must be nondegenerate");
  if (!target_->nondegenerate()) throw InputError("target graph of a rule must be nondegenerate");
  windows_ = window_graph(source_, window());
  validate();
}

LocalRule LocalRule::from_function(const Graph& source, const Graph& target, int memory, int anticipation,
                                   const std::function<int(const int*)>& fn) {
  return from_function(std::make_shared<const Graph>(source), std::make_shared<const Graph>(target), memory,
                       anticipation, fn);
}

LocalRule LocalRule::from_function(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
                                   int memory, int anticipation, const std::function<int(const int*)>& fn) {
  if (memory < 0 || anticipation < 0) throw InputError("memory and anticipation must be nonnegative");
  if (!source->nondegenerate()) throw InputError("source graph of a rule must be nondegenerate");
  if (!target->nondegenerate()) throw InputError("target graph of a rule must be nondegenerate");
  LocalRule r;
  r.source_ = std::move(source);
  r.target_ = std::move(target);
  r.memory_ = memory;
  r.anticipation_ = anticipation;
  r.windows_ = window_graph(r.source_, r.window());
  r.table_.reserve(r.windows_->arc_words.size());
  for (const Path& w : r.windows_->arc_words) r.table_.push_back(fn(w.data()));
  r.validate();
  return r;
}

LocalRule LocalRule::from_table(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
                                int memory, int anticipation, std::vector<int> table) {
  if (memory < 0 || anticipation < 0) throw InputError("memory and anticipation must be nonnegative");
  if (!source->nondegenerate()) throw InputError("source graph of a rule must be nondegenerate");
  if (!target->nondegenerate()) throw InputError("target graph of a rule must be nondegenerate");
  LocalRule r;
  r.source_ = std::move(source);
  r.target_ = std::move(target);
  r.memory_ = memory;
  r.anticipation_ = anticipation;
  r.windows_ = window_graph(r.source_, r.window());
  r.table_ = std::move(table);
  r.validate();
  return r;
}

void LocalRule::validate() const {
  const Graph& wg = windows_->graph;
  if (static_cast<int>(table_.size()) != wg.num_arcs())
    throw InputError("rule table has " + std::to_string(table_.size()) + " entries, expected " +
                     std::to_string(wg.num_arcs()));
  for (size_t i = 0; i < table_.size(); ++i)
    if (table_[i] < 0 || table_[i] >= target_->num_arcs())
      throw InputError("rule image of '" + wg.arc_id(static_cast<int>(i)) + "' is not a target arc");
  // Consecutive windows must map to consecutive target arcs.
  for (int v = 0; v < wg.num_vertices(); ++v)
    for (int a : wg.in_arcs(v))
      for (int b : wg.out_arcs(v))
        if (target_->target(table_[a]) != target_->source(table_[b]))
          throw InputError("rule images of '" + wg.arc_id(a) + "' and '" + wg.arc_id(b) +
                           "' are not consecutive in the target graph");
}

int LocalRule::apply(const int* word) const {
  int a = windows_->arc_of(word);
  return a < 0 ? -1 : table_[a];
}

int LocalRule::apply(const Path& word) const {
  if (static_cast<int>(word.size()) != window()) return -1;
  return apply(word.data());
}

bool LocalRule::operator==(const LocalRule& o) const {
  return memory_ == o.memory_ && anticipation_ == o.anticipation_ && table_ == o.table_ &&
         (source_ == o.source_ || *source_ == *o.source_) && (target_ == o.target_ || *target_ == *o.target_);
}

Endomorphism make_endomorphism(LocalRule rule) {
  if (rule.source() != rule.target()) throw InputError("an endomorphism needs equal source and target graphs");
  bool onto = decide_onto(rule);
  return Endomorphism{std::move(rule), onto};
}

LocalRule identity_rule(const Graph& g) {
  auto gp = std::make_shared<const Graph>(g);
  return LocalRule::from_function(gp, gp, 0, 0, [](const int* w) { return w[0]; });
}

LocalRule shift_rule(const Graph& g) {
  auto gp = std::make_shared<const Graph>(g);
  return LocalRule::from_function(gp, gp, 0, 1, [](const int* w) { return w[1]; });
}

LocalRule compose(const LocalRule& f, const LocalRule& g) {
  if (f.target() != g.source()) throw InputError("compose: target of the first rule is not the source of the second");
  const int inner = g.window();
  std::vector<int> mid(inner);
  return LocalRule::from_function(f.source_ptr(), g.target_ptr(), f.memory() + g.memory(),
                                  f.anticipation() + g.anticipation(), [&](const int* w) {
                                    for (int j = 0; j < inner; ++j) mid[j] = f.apply(w + j);
                                    return g.apply(mid.data());
                                  });
}

LocalRule pad(const LocalRule& r, int left, int right) {
  if (left < 0 || right < 0) throw PreconditionError("padding amounts must be nonnegative");
  if (left == 0 && right == 0) return r;
  return LocalRule::from_function(r.source_ptr(), r.target_ptr(), r.memory() + left, r.anticipation() + right,
                                  [&](const int* w) { return r.apply(w + left); });
}

namespace {

// Images grouped by the window with its first (or last) coordinate removed;
// nullopt when two windows in a group disagree.
std::optional<std::map<Path, int>> reduced_table(const LocalRule& r, bool drop_first) {
  std::map<Path, int> out;
  const auto& words = r.windows().arc_words;
  for (size_t i = 0; i < words.size(); ++i) {
    Path key = drop_first ? Path(words[i].begin() + 1, words[i].end()) : Path(words[i].begin(), words[i].end() - 1);
    auto [it, fresh] = out.emplace(std::move(key), r.image(static_cast<int>(i)));
    if (!fresh && it->second != r.image(static_cast<int>(i))) return std::nullopt;
  }
  return out;
}

LocalRule strip(const LocalRule& r, bool drop_first) {
  auto table = reduced_table(r, drop_first);
  if (!table) throw PreconditionError("rule depends on the coordinate being removed");
  const int m = r.memory() - (drop_first ? 1 : 0);
  const int n = r.anticipation() - (drop_first ? 0 : 1);
  const int len = m + n + 1;
  return LocalRule::from_function(r.source_ptr(), r.target_ptr(), m, n,
                                  [&](const int* w) { return table->at(Path(w, w + len)); });
}

}  // namespace

bool left_strippable(const LocalRule& r) { return r.memory() >= 1 && reduced_table(r, true).has_value(); }
bool right_strippable(const LocalRule& r) { return r.anticipation() >= 1 && reduced_table(r, false).has_value(); }

LocalRule strip_left(const LocalRule& r) {
  if (r.memory() < 1) throw PreconditionError("cannot strip a rule without memory");
  return strip(r, true);
}

LocalRule strip_right(const LocalRule& r) {
  if (r.anticipation() < 1) throw PreconditionError("cannot strip a rule without anticipation");
  return strip(r, false);
}

CanonicalRule canonical_form(const LocalRule& r) {
  CanonicalRule c{r, 0, 0};
  while (left_strippable(c.rule)) {
    c.rule = strip(c.rule, true);
    ++c.left;
  }
  while (right_strippable(c.rule)) {
    c.rule = strip(c.rule, false);
    ++c.right;
  }
  return c;
}

bool same_block_map(const LocalRule& a, const LocalRule& b) {
  if (a.source() != b.source() || a.target() != b.target()) return false;
  return canonical_form(a).rule == canonical_form(b).rule;
}

Endomorphism shift_compose(const Endomorphism& e, int s) {
  if (s == 0) return e;
  const LocalRule& r = e.rule;
  const int left = std::max(0, s - r.memory());
  const int right = std::max(0, -(r.anticipation() + s));
  LocalRule padded = pad(r, left, right);
  LocalRule shifted = LocalRule::from_table(padded.source_ptr(), padded.target_ptr(), padded.memory() - s,
                                            padded.anticipation() + s, padded.table());
  return Endomorphism{std::move(shifted), e.onto};
}

Endomorphism power(const Endomorphism& e, int s) {
  if (s < 1) throw PreconditionError("power exponent must be positive");
  LocalRule acc = e.rule;
  for (int i = 1; i < s; ++i) acc = compose(acc, e.rule);
  return Endomorphism{std::move(acc), e.onto};
}

Endomorphism canonical_power(const Endomorphism& e, int s) {
  if (s < 1) throw PreconditionError("power exponent must be positive");
  LocalRule base = canonical_form(e.rule).rule;
  LocalRule acc = base;
  for (int i = 1; i < s; ++i) acc = canonical_form(compose(acc, base)).rule;
  return Endomorphism{std::move(acc), e.onto};
}

LocalRule higher_block_rule(const LocalRule& r, int s) {
  if (s < 1) throw PreconditionError("higher block order must be positive");
  if (s == 1) return r;
  BlockGraph src = higher_block(r.source(), s);
  BlockGraph dst = higher_block(r.target(), s);
  const int len = r.span() + s;
  const int w = r.window();
  std::vector<int> base(len), img(s);
  return LocalRule::from_function(src.graph, dst.graph, r.memory(), r.anticipation(), [&](const int* blocks) {
    // Consecutive blocks overlap in s-1 base arcs.
    const Path& first = src.arc_words[blocks[0]];
    std::copy(first.begin(), first.end(), base.begin());
    for (int j = 1; j < w; ++j) base[s - 1 + j] = src.arc_words[blocks[j]].back();
    for (int j = 0; j < s; ++j) img[j] = r.apply(base.data() + j);
    int a = dst.arc_of(img);
    ensure(a >= 0, "higher block image is not a target path");
    return a;
  });
}

LocalRule power_system_rule(const LocalRule& r, int s) {
  if (s < 1) throw PreconditionError("power must be positive");
  if (s == 1) return r;
  const int left = (s - r.memory() % s) % s;
  const int right = (s - r.anticipation() % s) % s;
  LocalRule padded = pad(r, left, right);
  BlockGraph src = power_graph(padded.source(), s);
  BlockGraph dst = power_graph(padded.target(), s);
  const int m = padded.memory() / s;
  const int n = padded.anticipation() / s;
  const int groups = m + n + 1;
  std::vector<int> base(static_cast<size_t>(groups) * s);
  Path img(s);
  return LocalRule::from_function(src.graph, dst.graph, m, n, [&](const int* cols) {
    for (int j = 0; j < groups; ++j) {
      const Path& word = src.arc_words[cols[j]];
      std::copy(word.begin(), word.end(), base.begin() + static_cast<long>(j) * s);
    }
    for (int j = 0; j < s; ++j) img[j] = padded.apply(base.data() + j);
    int a = dst.arc_of(img);
    ensure(a >= 0, "power system image is not a target path");
    return a;
  });
}

Endomorphism power_system_rule(const Endomorphism& e, int s) {
  return Endomorphism{power_system_rule(e.rule, s), e.onto};
}

LocalRule reverse_rule(const LocalRule& r) {
  Graph src = reverse_graph(r.source());
  Graph dst = r.source() == r.target() ? src : reverse_graph(r.target());
  const int len = r.window();
  Path fwd(len);
  auto sp = std::make_shared<const Graph>(std::move(src));
  auto tp = r.source() == r.target() ? sp : std::make_shared<const Graph>(std::move(dst));
  return LocalRule::from_function(sp, tp, r.anticipation(), r.memory(), [&](const int* w) {
    for (int j = 0; j < len; ++j) fwd[j] = w[len - 1 - j];
    return r.apply(fwd.data());
  });
}

Endomorphism reverse_endomorphism(const Endomorphism& e) { return Endomorphism{reverse_rule(e.rule), e.onto}; }

GraphHom as_graph_hom(const LocalRule& r) { return make_hom(r.windows().graph, r.target(), r.table()); }

namespace {

// Whether two distinct paths of the window graph with equal images share
// both endpoints.  Searched from every pair of equally labelled arcs leaving
// a common vertex, stopping when the two paths meet again.
bool has_diamond(const GraphHom& q) {
  const Graph& g = q.source;
  const std::int64_t nv = g.num_vertices();
  std::vector<std::vector<std::pair<int, int>>> outs(nv);
  for (int v = 0; v < nv; ++v) {
    for (int a : g.out_arcs(v)) outs[v].push_back({q.arc_map[a], g.target(a)});
    std::sort(outs[v].begin(), outs[v].end());
  }
  std::unordered_set<std::int64_t> seen;
  std::vector<std::pair<int, int>> work;
  auto enqueue = [&](int x, int y) {
    if (seen.insert(x * nv + y).second) work.push_back({x, y});
  };
  for (int v = 0; v < nv; ++v) {
    const auto& o = outs[v];
    for (size_t i = 0; i < o.size(); ++i)
      for (size_t j = i + 1; j < o.size() && o[j].first == o[i].first; ++j) {
        if (o[i].second == o[j].second) return true;
        enqueue(o[i].second, o[j].second);
      }
  }
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
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
          for (j = j0; j < oy.size() && oy[j].first == label; ++j) {
            if (ox[i].second == oy[j].second) return true;
            enqueue(ox[i].second, oy[j].second);
          }
      }
    }
  }
  return false;
}

}  // namespace

bool decide_onto(const LocalRule& r) {
  // On an irreducible shift an endomorphism is onto exactly when it is
  // finite-to-one, that is, when its window hom has no diamond.
  if (r.source() == r.target() && is_irreducible(r.source()) && trim(r.source()) == r.source())
    return !has_diamond(as_graph_hom(r));
  return decide_code_onto(as_graph_hom(r));
}

}  // namespace resolvekit
