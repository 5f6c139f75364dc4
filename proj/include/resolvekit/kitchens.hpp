#pragma once

#include <string>
#include <vector>

#include "resolvekit/hom.hpp"
#include "resolvekit/rule.hpp"

namespace resolvekit {

// Merged-window graph of a rule that is `left` left-mergible and `right`
// right-mergible.  A vertex is the class of a source word of length
// N+left+right under "same middle N coordinates, same image"; arcs are the
// classes of words one longer with the middle N+1 coordinates fixed.  The hom
// labels an arc class by its image, an arc of target^[left+right+1].
struct KitchensGraph {
  GraphHom hom;
  int left = 0;
  int right = 0;
  std::vector<std::vector<Path>> vertex_classes;
  std::vector<std::vector<Path>> arc_classes;
  // Every source word of length N+left+right+1 and the arc class holding it.
  std::vector<Path> arc_words;
  std::vector<int> class_of_word;
};

KitchensGraph kitchens(const LocalRule& r, int left, int right);
KitchensGraph kitchens_plus(const LocalRule& r, int right);
KitchensGraph kitchens_minus(const LocalRule& r, int left);

// The window hom of r lifted to order j+1, with ids spelled as words of the
// base graphs: windows of length N+j+1 mapped to their image paths.
struct BlockHom {
  GraphHom hom;
  BlockGraph source_blocks;
  BlockGraph target_blocks;
};
BlockHom image_block_hom(const LocalRule& r, int j);

struct DisjointnessResult {
  bool holds = true;
  std::string detail;
};
// Distinct members of the compatible-set closure of the order k+1 hom are
// disjoint and each is a maximal compatible set.
DisjointnessResult compatible_set_disjointness(const LocalRule& r, int k);

}  // namespace resolvekit
