#include "resolvekit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "resolvekit/error.hpp"

namespace resolvekit {

Graph::Graph(const std::vector<std::string>& vertex_ids, const std::vector<ArcSpec>& arcs) {
  GraphBuilder b;
  std::unordered_map<std::string, int> pos;
  for (const auto& v : vertex_ids) {
    if (pos.count(v)) throw InputError("duplicate vertex id '" + v + "'");
    pos[v] = b.add_vertex(v);
  }
  for (const auto& a : arcs) {
    auto f = pos.find(a.from);
    auto t = pos.find(a.to);
    if (f == pos.end() || t == pos.end())
      throw InputError("arc '" + a.id + "' refers to an undeclared vertex");
    b.add_arc(a.id, f->second, t->second);
  }
  *this = std::move(b).build();
}

void Graph::index() {
  out_.assign(vertex_ids_.size(), {});
  in_.assign(vertex_ids_.size(), {});
  vertex_lookup_.clear();
  arc_lookup_.clear();
  for (int v = 0; v < num_vertices(); ++v) {
    if (!vertex_lookup_.emplace(vertex_ids_[v], v).second)
      throw InputError("duplicate vertex id '" + vertex_ids_[v] + "'");
  }
  for (int a = 0; a < num_arcs(); ++a) {
    if (!arc_lookup_.emplace(arc_ids_[a], a).second)
      throw InputError("duplicate arc id '" + arc_ids_[a] + "'");
    out_[from_[a]].push_back(a);
    in_[to_[a]].push_back(a);
  }
}

std::optional<int> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Graph::find_arc(std::string_view id) const {
  auto it = arc_lookup_.find(std::string(id));
  if (it == arc_lookup_.end()) return std::nullopt;
  return it->second;
}

bool Graph::nondegenerate() const {
  for (int v = 0; v < num_vertices(); ++v)
    if (out_[v].empty() || in_[v].empty()) return false;
  return true;
}

bool Graph::is_path(const Path& p) const {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= num_arcs()) return false;
    if (i > 0 && to_[p[i - 1]] != from_[p[i]]) return false;
  }
  return true;
}

std::string Graph::word_id(const Path& p) const {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += kWordSeparator;
    s += arc_ids_[p[i]];
  }
  return s;
}

bool Graph::operator==(const Graph& o) const {
  return vertex_ids_ == o.vertex_ids_ && arc_ids_ == o.arc_ids_ && from_ == o.from_ && to_ == o.to_;
}

int GraphBuilder::add_vertex(std::string id) {
  g_.vertex_ids_.push_back(std::move(id));
  return static_cast<int>(g_.vertex_ids_.size()) - 1;
}

int GraphBuilder::add_arc(std::string id, int from, int to) {
  if (from < 0 || to < 0 || from >= num_vertices() || to >= num_vertices())
    throw InputError("arc '" + id + "' has an endpoint out of range");
  g_.arc_ids_.push_back(std::move(id));
  g_.from_.push_back(from);
  g_.to_.push_back(to);
  return static_cast<int>(g_.arc_ids_.size()) - 1;
}

Graph GraphBuilder::build() && {
  g_.index();
  return std::move(g_);
}

std::string join_ids(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

int BlockGraph::vertex_of(const Path& word) const {
  auto it = vertex_index.find(word);
  return it == vertex_index.end() ? -1 : it->second;
}

int BlockGraph::step(int v, int base_arc) const {
  for (const auto& [b, a] : extensions[v])
    if (b == base_arc) return a;
  return -1;
}

int BlockGraph::arc_of(const int* word) const {
  if (!arc_index.empty()) {
    auto it = arc_index.find(Path(word, word + order));
    return it == arc_index.end() ? -1 : it->second;
  }
  if (order == 1) return word[0];
  auto it = vertex_index.find(Path(word, word + order - 1));
  if (it == vertex_index.end()) return -1;
  return step(it->second, word[order - 1]);
}

int BlockGraph::arc_of(const Path& word) const {
  if (static_cast<int>(word.size()) != order) return -1;
  return arc_of(word.data());
}

std::vector<Path> paths_of_length(const Graph& g, int length) {
  std::vector<Path> out;
  if (length < 1) return out;
  Path cur;
  std::function<void(int)> grow = [&](int v) {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (int a : g.out_arcs(v)) {
      cur.push_back(a);
      grow(g.target(a));
      cur.pop_back();
    }
  };
  for (int a = 0; a < g.num_arcs(); ++a) {
    cur.assign(1, a);
    grow(g.target(a));
  }
  return out;
}

BlockGraph higher_block(const Graph& g, int order) {
  if (order < 1) throw PreconditionError("higher block order must be positive");
  if (!g.nondegenerate()) throw PreconditionError("higher block graph needs a nondegenerate graph");
  BlockGraph bg;
  bg.order = order;
  if (order == 1) {
    bg.graph = g;
    for (int a = 0; a < g.num_arcs(); ++a) bg.arc_words.push_back({a});
    bg.vertex_words.assign(g.num_vertices(), Path{});
    bg.extensions.assign(g.num_vertices(), {});
    for (int a = 0; a < g.num_arcs(); ++a) bg.extensions[g.source(a)].push_back({a, a});
    return bg;
  }
  GraphBuilder b;
  bg.vertex_words = paths_of_length(g, order - 1);
  for (size_t i = 0; i < bg.vertex_words.size(); ++i) {
    b.add_vertex(g.word_id(bg.vertex_words[i]));
    bg.vertex_index.emplace(bg.vertex_words[i], static_cast<int>(i));
  }
  bg.extensions.assign(bg.vertex_words.size(), {});
  bg.arc_words = paths_of_length(g, order);
  for (size_t i = 0; i < bg.arc_words.size(); ++i) {
    const Path& w = bg.arc_words[i];
    int from = bg.vertex_index.at(Path(w.begin(), w.end() - 1));
    int to = bg.vertex_index.at(Path(w.begin() + 1, w.end()));
    b.add_arc(g.word_id(w), from, to);
    bg.extensions[from].push_back({w.back(), static_cast<int>(i)});
  }
  bg.graph = std::move(b).build();
  return bg;
}

Graph higher_block_graph(const Graph& g, int order) { return higher_block(g, order).graph; }

BlockGraph power_graph(const Graph& g, int s) {
  if (s < 1) throw PreconditionError("power must be positive");
  BlockGraph bg;
  bg.order = s;
  GraphBuilder b;
  for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.vertex_id(v));
  bg.vertex_words.assign(g.num_vertices(), Path{});
  bg.arc_words = paths_of_length(g, s);
  for (const Path& w : bg.arc_words) b.add_arc(g.word_id(w), g.source(w.front()), g.target(w.back()));
  bg.graph = std::move(b).build();
  for (size_t i = 0; i < bg.arc_words.size(); ++i) bg.arc_index.emplace(bg.arc_words[i], static_cast<int>(i));
  return bg;
}

Graph reverse_graph(const Graph& g) {
  GraphBuilder b;
  for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.vertex_id(v));
  for (int a = 0; a < g.num_arcs(); ++a) b.add_arc(g.arc_id(a), g.target(a), g.source(a));
  return std::move(b).build();
}

Graph full_shift_graph(const std::vector<std::string>& alphabet) {
  if (alphabet.empty()) throw InputError("empty alphabet");
  GraphBuilder b;
  b.add_vertex("*");
  for (const auto& s : alphabet) b.add_arc(s, 0, 0);
  return std::move(b).build();
}

bool is_full_shift(const Graph& g) { return g.num_vertices() == 1 && g.num_arcs() >= 1; }

Subgraph trim_with_origin(const Graph& g) {
  std::vector<char> arc_alive(g.num_arcs(), 1), v_alive(g.num_vertices(), 1);
  std::vector<int> indeg(g.num_vertices(), 0), outdeg(g.num_vertices(), 0);
  for (int a = 0; a < g.num_arcs(); ++a) {
    ++outdeg[g.source(a)];
    ++indeg[g.target(a)];
  }
  std::vector<int> queue;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (indeg[v] == 0 || outdeg[v] == 0) {
      v_alive[v] = 0;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    auto kill = [&](int a) {
      if (!arc_alive[a]) return;
      arc_alive[a] = 0;
      int s = g.source(a), t = g.target(a);
      --outdeg[s];
      --indeg[t];
      for (int u : {s, t})
        if (v_alive[u] && (indeg[u] == 0 || outdeg[u] == 0)) {
          v_alive[u] = 0;
          queue.push_back(u);
        }
    };
    for (int a : g.out_arcs(v)) kill(a);
    for (int a : g.in_arcs(v)) kill(a);
  }
  Subgraph sub;
  GraphBuilder b;
  std::vector<int> newv(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v_alive[v]) {
      newv[v] = b.add_vertex(g.vertex_id(v));
      sub.vertex_origin.push_back(v);
    }
  for (int a = 0; a < g.num_arcs(); ++a)
    if (arc_alive[a]) {
      b.add_arc(g.arc_id(a), newv[g.source(a)], newv[g.target(a)]);
      sub.arc_origin.push_back(a);
    }
  sub.graph = std::move(b).build();
  return sub;
}

Graph trim(const Graph& g) { return trim_with_origin(g).graph; }

std::vector<std::vector<int>> strongly_connected_components(const Graph& g) {
  // Iterative Tarjan.
  const int n = g.num_vertices();
  std::vector<int> idx(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<std::pair<int, size_t>> call{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& outs = g.out_arcs(v);
      if (pos < outs.size()) {
        int w = g.target(outs[pos++]);
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comps;
}

bool is_irreducible(const Graph& g) {
  Graph t = trim(g);
  if (t.empty()) return false;
  return strongly_connected_components(t).size() == 1;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw InvariantError("matrix dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      std::int64_t x = a(i, k);
      if (!x) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix adjacency_matrix(const Graph& g) {
  IntMatrix m(g.num_vertices(), g.num_vertices());
  for (int a = 0; a < g.num_arcs(); ++a) ++m(g.source(a), g.target(a));
  return m;
}

IntMatrix left_incidence(const Graph& g) {
  IntMatrix m(g.num_vertices(), g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) m(g.source(a), a) = 1;
  return m;
}

IntMatrix right_incidence(const Graph& g) {
  IntMatrix m(g.num_arcs(), g.num_vertices());
  for (int a = 0; a < g.num_arcs(); ++a) m(a, g.target(a)) = 1;
  return m;
}

Graph graph_from_matrix(const IntMatrix& m, const std::vector<std::string>& vertex_ids) {
  if (m.rows != m.cols || static_cast<int>(vertex_ids.size()) != m.rows)
    throw InvariantError("graph_from_matrix: shape mismatch");
  GraphBuilder b;
  for (const auto& v : vertex_ids) b.add_vertex(v);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      if (m(i, j) < 0) throw InvariantError("graph_from_matrix: negative entry");
      for (std::int64_t r = 0; r < m(i, j); ++r)
        b.add_arc(vertex_ids[i] + ">" + vertex_ids[j] + "#" + std::to_string(r), i, j);
    }
  return std::move(b).build();
}

namespace {

// Perron root of an irreducible block via power iteration on B + I, which is
// primitive, with Collatz-Wielandt bounds as the stopping criterion.
double irreducible_root(const std::vector<std::vector<std::pair<int, double>>>& rows) {
  const size_t n = rows.size();
  std::vector<double> x(n, 1.0), y(n);
  double lo = 0, hi = 0;
  for (int it = 0; it < 100000; ++it) {
    for (size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (const auto& [j, w] : rows[i]) s += w * x[j];
      y[i] = s;
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0;
    double norm = 0;
    for (size_t i = 0; i < n; ++i) {
      double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, y[i]);
    }
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
    for (size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  return 0.5 * (lo + hi) - 1.0;
}

}  // namespace

double spectral_radius(const IntMatrix& m) {
  if (m.rows != m.cols) throw InvariantError("spectral_radius: matrix not square");
  GraphBuilder b;
  for (int i = 0; i < m.rows; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      if (m(i, j) < 0) throw InputError("spectral_radius: negative entry");
      if (m(i, j) > 0) b.add_arc(std::to_string(i) + ">" + std::to_string(j), i, j);
    }
  Graph support = std::move(b).build();
  double best = 0.0;
  for (const auto& comp : strongly_connected_components(support)) {
    if (comp.size() == 1 && m(comp[0], comp[0]) == 0) continue;
    std::vector<int> local(m.rows, -1);
    for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    std::vector<std::vector<std::pair<int, double>>> rows(comp.size());
    for (size_t i = 0; i < comp.size(); ++i)
      for (int j = 0; j < m.cols; ++j)
        if (m(comp[i], j) > 0 && local[j] >= 0) rows[i].push_back({local[j], static_cast<double>(m(comp[i], j))});
    best = std::max(best, irreducible_root(rows));
  }
  return best;
}

namespace {
std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string to_dot(const Graph& g, const std::string& name, const std::vector<std::string>& arc_labels) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n";
  for (int v = 0; v < g.num_vertices(); ++v) os << "  " << dot_quote(g.vertex_id(v)) << ";\n";
  for (int a = 0; a < g.num_arcs(); ++a) {
    std::string label = g.arc_id(a);
    if (static_cast<size_t>(a) < arc_labels.size() && !arc_labels[a].empty()) label += " / " + arc_labels[a];
    os << "  " << dot_quote(g.vertex_id(g.source(a))) << " -> " << dot_quote(g.vertex_id(g.target(a)))
       << " [label=" << dot_quote(label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace resolvekit
