#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace resolvekit {

// A path is a sequence of arc indices of some graph.  Length-0 paths
// (vertices) are never represented by this type.
using Path = std::vector<int>;

struct ArcSpec {
  std::string id;
  std::string from;
  std::string to;
};

// Directed multigraph with string ids.  Vertices and arcs are addressed by
// their position; ids are kept for I/O and for canonical naming of derived
// graphs.
class Graph {
 public:
  Graph() = default;
  Graph(const std::vector<std::string>& vertex_ids, const std::vector<ArcSpec>& arcs);

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_arcs() const { return static_cast<int>(arc_ids_.size()); }
  bool empty() const { return vertex_ids_.empty(); }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& arc_id(int a) const { return arc_ids_[a]; }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& arc_ids() const { return arc_ids_; }
  int source(int a) const { return from_[a]; }
  int target(int a) const { return to_[a]; }
  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }

  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_arc(std::string_view id) const;

  // Every vertex has an incoming and an outgoing arc.
  bool nondegenerate() const;
  bool is_path(const Path& p) const;
  std::string word_id(const Path& p) const;

  bool operator==(const Graph& other) const;
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  friend class GraphBuilder;
  void index();

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> arc_ids_;
  std::vector<int> from_;
  std::vector<int> to_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> arc_lookup_;
};

// Incremental construction by index.  build() validates id uniqueness.
class GraphBuilder {
 public:
  int add_vertex(std::string id);
  int add_arc(std::string id, int from, int to);
  int num_vertices() const { return static_cast<int>(g_.vertex_ids_.size()); }
  Graph build() &&;

 private:
  Graph g_;
};

// Separator used when composite ids are spelled out of arc ids.
inline constexpr char kWordSeparator = '.';

std::string join_ids(const std::vector<std::string>& parts, std::string_view sep);

// Graph whose arcs are the length-`order` paths of a base graph.  For
// order >= 2 the vertices are the length-(order-1) paths; for order 1 the
// graph is the base graph itself.
struct BlockGraph {
  Graph graph;
  int order = 1;
  std::vector<Path> arc_words;
  std::vector<Path> vertex_words;  // empty paths when order == 1

  // Index of the block arc spelled by `word` (length `order`), or -1.
  int arc_of(const Path& word) const;
  int arc_of(const int* word) const;
  // Index of the block vertex spelled by `word` (length order-1), or -1.
  int vertex_of(const Path& word) const;
  // Block arc leaving block vertex v whose last base arc is `base_arc`, or -1.
  int step(int v, int base_arc) const;

  std::map<Path, int> vertex_index;
  std::vector<std::vector<std::pair<int, int>>> extensions;  // (base arc, block arc)
  std::map<Path, int> arc_index;  // only filled for power graphs
};

// All paths of the given length (>= 1) in lexicographic order of arc indices.
std::vector<Path> paths_of_length(const Graph& g, int length);

BlockGraph higher_block(const Graph& g, int order);
Graph higher_block_graph(const Graph& g, int order);

// Arcs are the length-s paths, vertices are those of g (the s-th power graph).
BlockGraph power_graph(const Graph& g, int s);

Graph reverse_graph(const Graph& g);

// One-vertex graph with one loop per symbol.
Graph full_shift_graph(const std::vector<std::string>& alphabet);
bool is_full_shift(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<int> vertex_origin;
  std::vector<int> arc_origin;
};

// Largest subgraph in which every vertex has in- and out-degree >= 1.
Subgraph trim_with_origin(const Graph& g);
Graph trim(const Graph& g);

std::vector<std::vector<int>> strongly_connected_components(const Graph& g);
// Nonempty and strongly connected after trimming.
bool is_irreducible(const Graph& g);

// Dense integer matrix, row major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}
  static IntMatrix identity(int n);

  std::int64_t& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  std::int64_t operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const IntMatrix& o) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

IntMatrix adjacency_matrix(const Graph& g);
// Vertex-by-arc matrix with 1 at (i(a), a).
IntMatrix left_incidence(const Graph& g);
// Arc-by-vertex matrix with 1 at (a, t(a)).
IntMatrix right_incidence(const Graph& g);
// Graph on vertices 0..n-1 (ids taken from `vertex_ids`) realizing a matrix.
Graph graph_from_matrix(const IntMatrix& m, const std::vector<std::string>& vertex_ids);

// Perron root of a nonnegative square matrix (absolute tolerance 1e-9).
double spectral_radius(const IntMatrix& m);

std::string to_dot(const Graph& g, const std::string& name = "G",
                   const std::vector<std::string>& arc_labels = {});

}  // namespace resolvekit
