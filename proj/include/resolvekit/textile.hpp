#pragma once

#include <optional>
#include <string>

#include "resolvekit/degrees.hpp"
#include "resolvekit/graph.hpp"
#include "resolvekit/hom.hpp"
#include "resolvekit/rule.hpp"

namespace resolvekit {

// A pair of homs p, q from one graph (the warp side) onto a common base graph.
struct TextileSystem {
  GraphHom p;
  GraphHom q;

  const Graph& upper() const { return p.source; }
  const Graph& base() const { return p.target; }
};

// Throws InputError unless p and q share source and target.
TextileSystem make_textile(GraphHom p, GraphHom q);

// Arcs of the upper graph become arcs from p(a) to q(a) between base arcs;
// vertices of the upper graph become arcs between base vertices.
TextileSystem dual(const TextileSystem& t);

// Injectivity of the codes induced by p and by q.
InjectivityResult decide_xi_injective(const TextileSystem& t);
InjectivityResult decide_eta_injective(const TextileSystem& t);

struct TextileClass {
  bool p_left = false;
  bool p_right = false;
  bool q_left = false;
  bool q_right = false;
  bool p_weak_left = false;
  bool p_weak_right = false;
  bool q_weak_left = false;
  bool q_weak_right = false;
  // Both induced codes are onto the base shift.
  bool nondegenerate = false;

  bool lr() const { return p_left && q_right; }
  bool rl() const { return p_right && q_left; }
  bool ll() const { return p_left && q_left; }
  bool rr() const { return p_right && q_right; }
  bool q_biresolving() const { return q_left && q_right; }
};
TextileClass classify(const TextileSystem& t);

// A textile built from an endomorphism together with the data used to
// build it.  `order` is the block order of the base graph, `merge` the
// mergibility order (k for LR, l for RL) and `left`, `right` the orders of
// the two-sided construction.
struct BuiltTextile {
  TextileSystem textile;
  int order = 1;
  int merge = 0;
  int left = 0;
  int right = 0;
  int shift = 0;
  // The rule whose merged graph carries the textile.
  LocalRule rule;
};

// Requires P_L >= 0 and Q_R >= 0 (P_R >= 0 and Q_L >= 0 for the mirror), an
// onto map, and an irreducible graph or an injective map.
BuiltTextile build_lr_textile(const Endomorphism& e);
BuiltTextile build_rl_textile(const Endomorphism& e);
// Requires -Q_R <= s <= Q_L and an irreducible graph.
BuiltTextile build_qbiresolving_textile(const Endomorphism& e, int s);

enum class Situation { expansive, left_only, right_only, neither };
std::string to_string(Situation s);

struct SituationReport {
  Situation situation = Situation::neither;
  std::string branch;  // "lr", "rl" or "qbi"
  bool xi_injective = false;
  bool eta_injective = false;
  InjectivityResult xi_witness;
  InjectivityResult eta_witness;
};
// Expansiveness of e composed with sigma^s, decided on the dual of a
// constructed textile.  Throws PreconditionError when s admits none of the
// constructions.
SituationReport expansiveness_situation(const Endomorphism& e, int s);

// Collapses a graph h on the vertices of g^[t] whose adjacency matrix
// commutes with that of g^[t] to a graph on the vertices of g satisfying
// L_g M_h = M_k L_g and M_h R_g = R_g M_k.
Graph commuting_graph_K(const Graph& g, const Graph& h, int t);

struct EntropyReport {
  // Two-sided route: log spectral radius of the dual base graph and the
  // Hedlund count (full shifts only).
  std::optional<double> qbi_entropy;
  std::optional<int> fiber_count;
  // LR route on a full shift: same entropy and the loop count of the
  // collapsed commuting graph.
  std::optional<double> lr_entropy;
  std::optional<int> loops;
  bool holds = true;
  std::string detail;
};
// Runs every route whose preconditions hold: Q_R + Q_L >= 0, and P_L >= 0
// with Q_R >= 0 on a full shift.  Throws PreconditionError when neither does.
EntropyReport entropy_checks(const Endomorphism& e);

}  // namespace resolvekit
