#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "resolvekit/graph.hpp"
#include "resolvekit/hom.hpp"

namespace resolvekit {

// A sliding-block rule from the Markov shift of `source` to that of `target`.
// The table assigns a target arc to every source path of length
// memory+anticipation+1, indexed by the arcs of the window graph.
class LocalRule {
 public:
  LocalRule(Graph source, Graph target, int memory, int anticipation, std::vector<int> table);

  // Tabulates `fn` over all windows.  `fn` receives a pointer to the
  // memory+anticipation+1 arcs of a window.
  static LocalRule from_function(const Graph& source, const Graph& target, int memory, int anticipation,
                                 const std::function<int(const int*)>& fn);
  static LocalRule from_table(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target, int memory,
                              int anticipation, std::vector<int> table);
  // Same, sharing the graphs of an existing rule where possible.
  static LocalRule from_function(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
                                 int memory, int anticipation, const std::function<int(const int*)>& fn);

  const Graph& source() const { return *source_; }
  const std::shared_ptr<const Graph>& source_ptr() const { return source_; }
  const std::shared_ptr<const Graph>& target_ptr() const { return target_; }
  const Graph& target() const { return *target_; }
  int memory() const { return memory_; }
  int anticipation() const { return anticipation_; }
  int span() const { return memory_ + anticipation_; }
  int window() const { return span() + 1; }
  const BlockGraph& windows() const { return *windows_; }
  const std::vector<int>& table() const { return table_; }

  int image(int window_arc) const { return table_[window_arc]; }
  // Image of a source word of length window(); -1 if it is not a path.
  int apply(const int* word) const;
  int apply(const Path& word) const;

  // Same graphs, same (memory, anticipation) and same table.
  bool operator==(const LocalRule& other) const;

 private:
  LocalRule() = default;
  void validate() const;

  std::shared_ptr<const Graph> source_;
  std::shared_ptr<const Graph> target_;
  std::shared_ptr<const BlockGraph> windows_;
  int memory_ = 0;
  int anticipation_ = 0;
  std::vector<int> table_;
};

struct Endomorphism {
  LocalRule rule;
  bool onto = false;
};

// Checks that source and target coincide and decides surjectivity.
Endomorphism make_endomorphism(LocalRule rule);

LocalRule identity_rule(const Graph& g);
// The shift map written as the (0,1) rule a0 a1 -> a1.
LocalRule shift_rule(const Graph& g);

// Applies f, then g.
LocalRule compose(const LocalRule& f, const LocalRule& g);

// Adds `left` ignored coordinates to the memory and `right` to the anticipation.
LocalRule pad(const LocalRule& r, int left, int right);

// Whether the first (last) coordinate of the window can be dropped.
bool left_strippable(const LocalRule& r);
bool right_strippable(const LocalRule& r);
LocalRule strip_left(const LocalRule& r);
LocalRule strip_right(const LocalRule& r);

struct CanonicalRule {
  LocalRule rule;
  int left = 0;   // coordinates removed from the memory
  int right = 0;  // coordinates removed from the anticipation
};
// Removes redundant coordinates greedily, memory side first.
CanonicalRule canonical_form(const LocalRule& r);
// Equality of the induced maps between shift spaces.
bool same_block_map(const LocalRule& a, const LocalRule& b);

// The map x -> phi(sigma^s x) on the same shift.
Endomorphism shift_compose(const Endomorphism& e, int s);
Endomorphism power(const Endomorphism& e, int s);
// Like power, reducing to canonical form after every factor.
Endomorphism canonical_power(const Endomorphism& e, int s);

// The same map on the order-s higher block presentations.
LocalRule higher_block_rule(const LocalRule& r, int s);
// The same map on s-tuples of coordinates (arcs are length-s paths).
LocalRule power_system_rule(const LocalRule& r, int s);
Endomorphism power_system_rule(const Endomorphism& e, int s);

// The time-reversed rule on the reversed graphs, memory and anticipation swapped.
LocalRule reverse_rule(const LocalRule& r);
Endomorphism reverse_endomorphism(const Endomorphism& e);

// Window graph -> target graph hom carried by the table.
GraphHom as_graph_hom(const LocalRule& r);

bool decide_onto(const LocalRule& r);

}  // namespace resolvekit
