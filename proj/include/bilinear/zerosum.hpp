#pragma once

#include "bilinear/game.hpp"

namespace bilinear {

struct ZeroSumResult {
  EquilibriumCertificate certificate;
  Rational value;          // x^T A y at the equilibrium
  bool used_fallback = false;
};

// Equilibrium of a zero-sum game from min e^T p s.t. E^T p >= A y, F y = f,
// y >= 0; x is read off the duals of the E^T p >= A y rows. Throws NotZeroSum
// unless A + B = 0.
ZeroSumResult solve_zero_sum_detailed(const BilinearGame& g);
EquilibriumCertificate solve_zero_sum(const BilinearGame& g);

// The column player's side: min f^T q s.t. F^T q >= -A^T x, E x = e, x >= 0.
// Returns (x, -f^T q) where -f^T q = max_x min_y x^T A y.
std::pair<RatVector, Rational> zero_sum_maximin(const BilinearGame& g);

}  // namespace bilinear
