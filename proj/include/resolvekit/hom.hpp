#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resolvekit/graph.hpp"

namespace resolvekit {

// A graph homomorphism h: source -> target given by its arc and vertex maps.
struct GraphHom {
  Graph source;
  Graph target;
  std::vector<int> arc_map;
  std::vector<int> vertex_map;

  int operator()(int arc) const { return arc_map[arc]; }
  Path image(const Path& p) const;
};

// Builds a hom from an arc map.  Without an explicit vertex map it is
// inferred from incident arcs.  Throws InputError when the maps do not commute
// with the endpoints or a vertex has no incident arc to infer from.
GraphHom make_hom(Graph source, Graph target, std::vector<int> arc_map,
                  std::vector<int> vertex_map = {});
GraphHom identity_hom(const Graph& g);
// Throws InvariantError unless the commuting square holds on every arc.
void check_hom(const GraphHom& h);
// Same maps on the reversed graphs.
GraphHom reverse_hom(const GraphHom& h);
// Restriction to trim(source).  `origin` receives the arc origins.
GraphHom trim_source(const GraphHom& h, std::vector<int>* arc_origin = nullptr);

bool is_right_resolving(const GraphHom& h);
bool is_left_resolving(const GraphHom& h);
bool is_weakly_right_resolving(const GraphHom& h);
bool is_weakly_left_resolving(const GraphHom& h);

// Label-synchronized product of two homs into the same target.  Vertices are
// pairs with equal vertex images; arcs are pairs with equal arc images.
struct PairGraph {
  Graph graph;
  std::vector<std::pair<int, int>> vertex_pairs;
  std::vector<std::pair<int, int>> arc_pairs;
};
PairGraph fiber_pair_graph(const GraphHom& h1, const GraphHom& h2);

// Sorted vertex indices of the source graph.
using VertexSet = std::vector<int>;

std::string set_id(const Graph& g, const VertexSet& s);

VertexSet successor_set(const GraphHom& h, const VertexSet& u, int target_arc);
VertexSet predecessor_set(const GraphHom& h, const VertexSet& u, int target_arc);

struct CompatibleFamily {
  std::vector<VertexSet> compatible;  // every right- (or left-) compatible set
  std::vector<VertexSet> maximal;
  std::vector<VertexSet> closure;     // maximal sets and their nonempty successors
};

CompatibleFamily right_compatible_family(const GraphHom& h);
CompatibleFamily left_compatible_family(const GraphHom& h);

// The induced resolving hom on the compatible-set closure.  Vertex sets are
// stored alongside, indexed like the vertices of `hom.source`.
struct Resolver {
  GraphHom hom;
  std::vector<VertexSet> vertex_sets;
};
Resolver induced_right_resolver(const GraphHom& h);
Resolver induced_left_resolver(const GraphHom& h);

// Surjectivity of the 1-block code of h from X_source onto X_target.  On
// failure `missing` receives a target path with no preimage.
bool decide_code_onto(const GraphHom& h, Path* missing = nullptr);

struct InjectivityResult {
  bool injective = true;
  // Two distinct source paths with a common image, running along a cycle of
  // the trimmed pair graph (empty when injective).
  Path first;
  Path second;
};
InjectivityResult decide_code_injective(const GraphHom& h);

// Strict right mergibility of a hom: the least k such that any two paths of
// length k+1 in the trimmed source with a common initial vertex and a common
// image share their first arc.
struct Mergibility {
  bool finite = true;
  int value = 0;
  // Finite case with value >= 1: two paths of length `value` with common
  // initial vertex and image but distinct first arcs.  Infinite case: two
  // such paths ending on a cycle of the pair graph.
  Path first;
  Path second;
};
Mergibility right_mergibility(const GraphHom& h);
// Mirror notion: common terminal vertex forces a common last arc.
Mergibility left_mergibility(const GraphHom& h);

}  // namespace resolvekit
