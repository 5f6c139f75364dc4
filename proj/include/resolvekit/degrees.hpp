#pragma once

#include <optional>

#include "resolvekit/hom.hpp"
#include "resolvekit/rule.hpp"

namespace resolvekit {

// Strict left redundancy: the largest I such that two windows agreeing on
// their last N+1-I coordinates always have equal images.  For I > N the
// windows only need futures that meet after I-N-1 further steps.
struct Redundancy {
  int value = 0;
  // Two windows with distinct images that agree to the extent required at
  // value+1.
  Path first;
  Path second;
};

Redundancy left_redundancy(const LocalRule& r);
Redundancy right_redundancy(const LocalRule& r);
int strict_left_redundancy(const LocalRule& r);
int strict_right_redundancy(const LocalRule& r);

// Mergibility of the rule's window hom.  Paths in the witness are paths of
// the window graph.
Mergibility strict_right_mergibility(const LocalRule& r);
Mergibility strict_left_mergibility(const LocalRule& r);
bool decide_right_closing(const LocalRule& r);
bool decide_left_closing(const LocalRule& r);

// Extended integer: nullopt stands for minus infinity.
using ExtInt = std::optional<int>;

struct DegreeReport {
  int memory = 0;
  int anticipation = 0;
  // Strict redundancy and mergibility of the rule as given.
  int I = 0;
  int J = 0;
  ExtInt k;
  ExtInt l;
  int P_L = 0;
  int P_R = 0;
  ExtInt Q_R;
  ExtInt Q_L;
  bool right_closing = true;
  bool left_closing = true;

  // Witnesses refer to the canonical form, whose type is recorded here.
  int canonical_memory = 0;
  int canonical_anticipation = 0;
  Redundancy left_witness;
  Redundancy right_witness;
  Mergibility right_merge_witness;
  Mergibility left_merge_witness;
};

DegreeReport degrees(const LocalRule& r);
// Requires an onto endomorphism.
DegreeReport degrees(const Endomorphism& e);

}  // namespace resolvekit
