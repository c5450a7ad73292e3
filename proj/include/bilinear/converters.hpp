#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bilinear/game.hpp"

namespace bilinear {

// Each converter has a *_data form returning the unscaled six-tuple and a
// from_* form returning the validated game. Payoff identities hold exactly on
// the data; the validated game multiplies payoffs by payoff_scale().

// Mixed strategies over the simplex: E = 1^T, e = 1 and likewise for F, f.
GameData bimatrix_data(const RatMatrix& A, const RatMatrix& B);
BilinearGame from_bimatrix(const RatMatrix& A, const RatMatrix& B);

struct BayesianSpec {
  std::size_t row_types = 0, col_types = 0;
  std::size_t row_actions = 0, col_actions = 0;
  RatMatrix prior;                          // row_types x col_types, sums to 1
  std::vector<std::vector<RatMatrix>> A;    // A[t][s]: row_actions x col_actions
  std::vector<std::vector<RatMatrix>> B;
};

// Strategy x stacks one mixed action per row type (t-major); y likewise.
GameData bayesian_data(const BayesianSpec& spec);
BilinearGame from_bayesian(const BayesianSpec& spec);

struct PolymatrixSpec {
  std::vector<std::size_t> strategies;            // |S_1| .. |S_n|
  std::vector<std::vector<RatMatrix>> payoffs;    // payoffs[i][j]: |S_i| x |S_j|, i != j
};

// The induced symmetric game (A, A^T, E, E, e, e).
GameData polymatrix_data(const PolymatrixSpec& spec);
BilinearGame from_polymatrix(const PolymatrixSpec& spec);

// Splits the symmetric profile (z, z) into per-player strategies. Throws
// NotSymmetric if x != y.
std::vector<RatVector> extract_polymatrix_ne(const PolymatrixSpec& spec,
                                             const StrategyProfile& profile);

// Player i's payoff sum_{j != i} x_i^T A^{ij} x_j.
Rational polymatrix_payoff(const PolymatrixSpec& spec, const std::vector<RatVector>& strategies,
                           std::size_t player);
// Each player's strategy is a best response to the others.
bool is_polymatrix_equilibrium(const PolymatrixSpec& spec,
                               const std::vector<RatVector>& strategies);

struct LinearConstraints {
  RatMatrix E;
  RatVector e;
};

// Doubly stochastic m x m matrices, flattened row-major: all m row sums and
// the first m-1 column sums (the last is implied).
LinearConstraints ranking_duel_polytope(std::size_t m);
// Payoffs are m^2 x m^2 matrices supplied by the caller.
GameData ranking_duel_data(const RatMatrix& A, const RatMatrix& B, std::size_t m);
BilinearGame from_ranking_duel(const RatMatrix& A, const RatMatrix& B, std::size_t m);

// ---------------------------------------------------------------------------
// Two-player extensive form with perfect recall.

enum class NodeKind { kDecision, kChance, kLeaf };

struct TreeNode {
  NodeKind kind = NodeKind::kLeaf;
  int player = 0;                       // 0 or 1 at decision nodes
  std::string infoset;                  // per-player information set name
  std::vector<std::size_t> children;    // one per action / chance outcome
  std::vector<Rational> probabilities;  // chance nodes
  Rational row_payoff, col_payoff;      // leaves
};

struct ExtensiveFormTree {
  std::vector<TreeNode> nodes;
  std::size_t root = 0;
};

struct InformationSet {
  std::string name;
  std::size_t parent_sequence = 0;  // sequence leading to it (0 = empty)
  std::size_t first_sequence = 0;   // its actions are sequences first..first+actions-1
  std::size_t actions = 0;
};

struct PlayerSequences {
  std::vector<InformationSet> infosets;  // in order of first visit (depth first)
  std::size_t count = 1;                 // sequences, including the empty one at 0
};

struct SequenceForm {
  GameData data;
  PlayerSequences players[2];
};

// Throws MalformedTree or NotPerfectRecall.
SequenceForm sequence_form(const ExtensiveFormTree& tree);
BilinearGame from_extensive_form(const ExtensiveFormTree& tree);

// behavior[h][a]: probability of action a at information set h.
using BehaviorStrategy = std::vector<RatVector>;

RatVector realization_plan(const PlayerSequences& seqs, const BehaviorStrategy& behavior);
// Inverse map; information sets reached with probability zero get the
// uniform distribution.
BehaviorStrategy behavior_strategy(const PlayerSequences& seqs, std::span<const Rational> plan);

}  // namespace bilinear
