#include "resolvekit/kitchens.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "resolvekit/degrees.hpp"
#include "resolvekit/error.hpp"

namespace resolvekit {

namespace {

// Image path of a source word under the rule (length = word length - N).
Path image_of(const LocalRule& r, const Path& w) {
  Path out;
  for (size_t j = 0; j + r.span() < w.size(); ++j) out.push_back(r.apply(w.data() + j));
  return out;
}

using ClassKey = std::tuple<int, Path, Path>;  // (vertex before the middle, middle, image)

int vertex_at(const Graph& g, const Path& w, int pos) {
  return pos < static_cast<int>(w.size()) ? g.source(w[pos]) : g.target(w.back());
}

KitchensGraph build(const LocalRule& r, int left, int right, bool need_left, bool need_right) {
  if (left < 0 || right < 0) throw PreconditionError("mergibility orders must be nonnegative");
  if (need_right) {
    Mergibility m = strict_right_mergibility(r);
    if (!m.finite || m.value > right)
      throw PreconditionError("rule is not " + std::to_string(right) + " right-mergible");
  }
  if (need_left) {
    Mergibility m = strict_left_mergibility(r);
    if (!m.finite || m.value > left) throw PreconditionError("rule is not " + std::to_string(left) + " left-mergible");
  }
  const Graph& g = r.source();
  const int n_span = r.span();
  const int len = n_span + left + right;  // vertex word length
  BlockGraph words = higher_block(g, len + 1);
  BlockGraph labels = higher_block(r.target(), left + right + 1);

  KitchensGraph kg;
  kg.left = left;
  kg.right = right;

  // Vertex classes.  With len == 0 the vertex words are the vertices of g.
  std::map<ClassKey, std::vector<std::string>> vertex_members;
  std::map<ClassKey, std::vector<Path>> vertex_paths;
  auto vertex_key = [&](const Path& w, int v) -> ClassKey {
    if (len == 0) return {v, {}, {}};
    Path mid(w.begin() + left, w.begin() + left + n_span);
    return {vertex_at(g, w, left), std::move(mid), image_of(r, w)};
  };
  if (len == 0) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      ClassKey key = vertex_key({}, v);
      vertex_members[key].push_back(g.vertex_id(v));
      vertex_paths[key].push_back({});
    }
  } else {
    for (const Path& w : words.vertex_words) {
      ClassKey key = vertex_key(w, -1);
      vertex_members[key].push_back(g.word_id(w));
      vertex_paths[key].push_back(w);
    }
  }
  std::vector<std::pair<std::string, ClassKey>> vnames;
  for (auto& [key, members] : vertex_members) {
    std::sort(members.begin(), members.end());
    vnames.push_back({"{" + join_ids(members, ",") + "}", key});
  }
  std::sort(vnames.begin(), vnames.end());
  std::map<ClassKey, int> vindex;
  GraphBuilder b;
  for (auto& [name, key] : vnames) {
    vindex[key] = b.add_vertex(name);
    kg.vertex_classes.push_back(vertex_paths[key]);
  }
  auto class_of_prefix = [&](const Path& w, bool prefix) {
    if (len == 0) return vindex.at(vertex_key({}, prefix ? g.source(w[0]) : g.target(w[0])));
    Path part = prefix ? Path(w.begin(), w.end() - 1) : Path(w.begin() + 1, w.end());
    return vindex.at(vertex_key(part, -1));
  };

  // Arc classes.
  std::map<ClassKey, std::vector<int>> arc_members;
  for (size_t i = 0; i < words.arc_words.size(); ++i) {
    const Path& w = words.arc_words[i];
    Path mid(w.begin() + left, w.begin() + left + n_span + 1);
    arc_members[{vertex_at(g, w, left), std::move(mid), image_of(r, w)}].push_back(static_cast<int>(i));
  }
  struct ArcClass {
    std::string name;
    std::vector<int> members;
  };
  std::vector<ArcClass> arcs;
  for (auto& [key, members] : arc_members) {
    std::vector<std::string> ids;
    for (int i : members) ids.push_back(g.word_id(words.arc_words[i]));
    std::sort(ids.begin(), ids.end());
    arcs.push_back({"{" + join_ids(ids, ",") + "}", members});
  }
  std::sort(arcs.begin(), arcs.end(), [](const ArcClass& a, const ArcClass& c) { return a.name < c.name; });

  kg.arc_words = words.arc_words;
  kg.class_of_word.assign(words.arc_words.size(), -1);
  std::vector<int> label_of;
  for (size_t ai = 0; ai < arcs.size(); ++ai) {
    const auto& members = arcs[ai].members;
    const Path& rep = words.arc_words[members.front()];
    int from = class_of_prefix(rep, true);
    int to = class_of_prefix(rep, false);
    std::vector<Path> paths;
    for (int i : members) {
      const Path& w = words.arc_words[i];
      ensure(class_of_prefix(w, true) == from && class_of_prefix(w, false) == to,
             "merged arc class has inconsistent endpoints");
      kg.class_of_word[i] = static_cast<int>(ai);
      paths.push_back(w);
    }
    b.add_arc(arcs[ai].name, from, to);
    int label = labels.arc_of(image_of(r, rep));
    ensure(label >= 0, "merged arc image is not a target path");
    label_of.push_back(label);
    kg.arc_classes.push_back(std::move(paths));
  }
  kg.hom = make_hom(std::move(b).build(), labels.graph, std::move(label_of));
  return kg;
}

}  // namespace

KitchensGraph kitchens(const LocalRule& r, int left, int right) {
  KitchensGraph kg = build(r, left, right, true, true);
  ensure(is_weakly_right_resolving(kg.hom) && is_weakly_left_resolving(kg.hom),
         "merged graph hom is not weakly biresolving");
  return kg;
}

KitchensGraph kitchens_plus(const LocalRule& r, int right) {
  KitchensGraph kg = build(r, 0, right, false, true);
  ensure(is_weakly_right_resolving(kg.hom), "merged graph hom is not weakly right-resolving");
  return kg;
}

KitchensGraph kitchens_minus(const LocalRule& r, int left) {
  KitchensGraph kg = build(r, left, 0, true, false);
  ensure(is_weakly_left_resolving(kg.hom), "merged graph hom is not weakly left-resolving");
  return kg;
}

BlockHom image_block_hom(const LocalRule& r, int j) {
  if (j < 0) throw PreconditionError("block order must be nonnegative");
  BlockHom bh;
  bh.source_blocks = higher_block(r.source(), r.window() + j);
  bh.target_blocks = higher_block(r.target(), j + 1);
  std::vector<int> arc_map;
  for (const Path& w : bh.source_blocks.arc_words) {
    int a = bh.target_blocks.arc_of(image_of(r, w));
    ensure(a >= 0, "block image is not a target path");
    arc_map.push_back(a);
  }
  bh.hom = make_hom(bh.source_blocks.graph, bh.target_blocks.graph, std::move(arc_map));
  return bh;
}

DisjointnessResult compatible_set_disjointness(const LocalRule& r, int k) {
  Mergibility m = strict_right_mergibility(r);
  if (!m.finite || m.value > k) throw PreconditionError("rule is not " + std::to_string(k) + " right-mergible");
  BlockHom bh = image_block_hom(r, k);
  CompatibleFamily fam = right_compatible_family(bh.hom);
  DisjointnessResult res;
  std::vector<int> owner(bh.hom.source.num_vertices(), -1);
  for (size_t i = 0; i < fam.closure.size(); ++i)
    for (int v : fam.closure[i]) {
      if (owner[v] >= 0) {
        res.holds = false;
        res.detail = "sets " + set_id(bh.hom.source, fam.closure[owner[v]]) + " and " +
                     set_id(bh.hom.source, fam.closure[i]) + " overlap";
        return res;
      }
      owner[v] = static_cast<int>(i);
    }
  for (const auto& s : fam.closure)
    if (!std::binary_search(fam.maximal.begin(), fam.maximal.end(), s)) {
      res.holds = false;
      res.detail = "set " + set_id(bh.hom.source, s) + " is not maximal";
      return res;
    }
  return res;
}

}  // namespace resolvekit
