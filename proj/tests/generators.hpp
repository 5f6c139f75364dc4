#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "resolvekit/graph.hpp"
#include "resolvekit/rule.hpp"

namespace rktest {

using namespace resolvekit;

inline Graph full_shift(int alphabet) {
  std::vector<std::string> syms;
  for (int a = 0; a < alphabet; ++a) syms.push_back(std::to_string(a));
  return full_shift_graph(syms);
}

inline int window_index(const int* w, int len, int alphabet) {
  int idx = 0;
  for (int i = 0; i < len; ++i) idx = idx * alphabet + w[i];
  return idx;
}

// Rule on the full shift whose value on a window is table[window as base-|A| number].
inline LocalRule table_rule(int alphabet, int memory, int anticipation, const std::vector<int>& table) {
  Graph g = full_shift(alphabet);
  int len = memory + anticipation + 1;
  return LocalRule::from_function(g, g, memory, anticipation,
                                  [&](const int* w) { return table[window_index(w, len, alphabet)]; });
}

inline std::vector<int> random_perm(std::mt19937& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// An onto endomorphism of the full |A|-shift with window N+1.  The family is
// drawn at random: arbitrary tables kept only when onto, rules permutive in
// the first or the last coordinate, and 1-block permutations composed with
// those.
inline Endomorphism random_onto_rule(std::mt19937& rng, int alphabet, int span) {
  std::uniform_int_distribution<int> pick_m(0, span);
  int m = pick_m(rng);
  int n = span - m;
  int len = span + 1;
  int size = 1;
  for (int i = 0; i < len; ++i) size *= alphabet;
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::uniform_int_distribution<int> family(0, 3);

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> table(size);
    int kind = span == 0 ? 3 : family(rng);
    if (kind == 0) {
      for (int& v : table) v = sym(rng);
    } else {
      // Permutive in the first (kind 1) or last (kind 2) coordinate: one
      // random permutation per value of the remaining coordinates.
      int rest = size / alphabet;
      std::vector<std::vector<int>> perms(rest);
      for (auto& p : perms) p = random_perm(rng, alphabet);
      std::vector<int> outer = random_perm(rng, alphabet);
      bool first = kind == 1 || (kind == 3 && (rng() & 1u));
      for (int idx = 0; idx < size; ++idx) {
        int head = idx / rest;
        int tail = idx % alphabet;
        int v = first ? perms[idx % rest][head] : perms[idx / alphabet][tail];
        table[idx] = kind == 3 ? outer[v] : v;
      }
    }
    Endomorphism e = make_endomorphism(table_rule(alphabet, m, n, table));
    if (e.onto) return e;
  }
  // Fallback: the shift of the first coordinate, always onto.
  std::vector<int> table(size);
  for (int idx = 0; idx < size; ++idx) table[idx] = idx / (size / alphabet);
  return make_endomorphism(table_rule(alphabet, m, n, table));
}

// Every onto rule on the full |A|-shift with the given window and (m, n).
inline std::vector<Endomorphism> all_onto_rules(int alphabet, int memory, int anticipation) {
  int len = memory + anticipation + 1;
  int size = 1;
  for (int i = 0; i < len; ++i) size *= alphabet;
  long long count = 1;
  for (int i = 0; i < size; ++i) count *= alphabet;
  std::vector<Endomorphism> out;
  std::vector<int> table(size);
  for (long long code = 0; code < count; ++code) {
    long long c = code;
    for (int i = 0; i < size; ++i) {
      table[i] = static_cast<int>(c % alphabet);
      c /= alphabet;
    }
    Endomorphism e = make_endomorphism(table_rule(alphabet, memory, anticipation, table));
    if (e.onto) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rktest
