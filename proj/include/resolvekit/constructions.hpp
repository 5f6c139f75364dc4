#pragma once

#include <string>
#include <vector>

#include "resolvekit/rule.hpp"

namespace resolvekit {

// Common cardinality of the maximal right (left) compatible sets of the
// window hom of an onto rule on a full shift.
struct Multipliers {
  int right = 1;
  int left = 1;
};
Multipliers hedlund_multipliers(const LocalRule& r);
// |A|^N / (right * left); throws InvariantError if it does not divide.
int fiber_count_formula(const LocalRule& r, const Multipliers& m);

// A map A x A -> A injective in each argument, as table[a][b] over the arc
// indices of a full shift graph.
struct Bipermutation {
  std::vector<std::vector<int>> table;
};
// Throws InputError unless every row and column is a permutation of 0..n-1.
void check_bipermutation(const Bipermutation& pi, int alphabet_size);

struct Bipermuted {
  Endomorphism endo;
  int right_merge = 0;  // strict right mergibility of the result
  int left_merge = 0;   // strict left mergibility of the result
  int degree_sum = 0;   // Q_R + Q_L
  Multipliers multipliers;
  int fiber_count = 1;
};
// The (0, N+N'-t) rule pi(fprime(prefix), f(suffix)) on the common full
// shift of f and fprime.  Requires t < min(N - k, N' - l') where k is the
// strict right mergibility of f and l' the strict left mergibility of fprime.
Bipermuted bipermutation_construct(const LocalRule& fprime, const LocalRule& f, int t, const Bipermutation& pi);

// Every point of period at most `max_period` has exactly c preimages.
bool verify_fiber_count(const Endomorphism& e, int c, int max_period = 5);

// The endomorphism transported to the shift of s-row columns
// (x, phi x, ..., phi^{s-1} x), presented on realized column words of
// length `word_length`.  Columns are named "a0|a1|...", words join columns
// with ';'.
struct DualBlockEndo {
  Endomorphism endo;
  int order = 1;
  int word_length = 1;
};
DualBlockEndo dual_block_endo(const Endomorphism& e, int s);

}  // namespace resolvekit
