#pragma once

#include <cstddef>
#include <vector>

#include "bilinear/game.hpp"

namespace bilinear {

// Vertices of {eq x = eq_rhs, ineq x <= ineq_rhs, x_j >= 0 for nonneg j} by
// trying every subset of inequality constraints of the right size as the tight
// set. Sorted lexicographically, duplicates removed. The objective is ignored.
std::vector<RatVector> enumerate_vertices(const LinearProgram& system);

struct LabeledVertex {
  RatVector point;
  std::vector<std::size_t> labels;
};

std::vector<LabeledVertex> labeled_vertices(const BrpPolytope& brp);

inline constexpr std::size_t kDefaultOracleLimit = 24;

// Every extreme equilibrium, as the fully-labelled vertex pairs of P x Q.
// The certificates are de-duplicated by profile and sorted by profile.
// Throws TooLarge when M + N + k1 + k2 exceeds limit.
std::vector<EquilibriumCertificate> brute_force_equilibria(
    const BilinearGame& g, std::size_t limit = kDefaultOracleLimit);

// Classical support enumeration for the bimatrix game (A, B): equal-size
// support pairs with a unique indifference solution. Complete for
// nondegenerate games. Throws TooLarge above 6 x 6.
std::vector<StrategyProfile> bimatrix_support_enumeration(const RatMatrix& A, const RatMatrix& B);

}  // namespace bilinear
