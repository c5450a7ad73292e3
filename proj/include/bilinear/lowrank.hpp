#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bilinear/game.hpp"

namespace bilinear {

// Vertices of P: every independent set D of rows of [A -E^T] with
// |D| <= l_bound + k1, paired with every set J of zero coordinates of y that
// completes a square system. Requires l_bound >= rank(A). Sorted, no repeats.
struct PVertexEnumeration {
  std::vector<RatVector> vertices;  // points (y, p)
  std::size_t candidates = 0;       // square systems solved
};
PVertexEnumeration enumerate_P_vertices(const BilinearGame& g, std::size_t l_bound);

// 2^(l+k) N^(l+k).
Integer vertex_count_bound(std::size_t n, std::size_t l, std::size_t k);

// The (x, q) side of a fully labeled pair with the vertex v = (y, p) of P:
// x_i = 0 where row i of P is slack, column j of Q tight where y_j > 0.
LinearProgram complementary_polytope(const BilinearGame& g, const RatVector& v);

struct Complement {
  RatVector x, q;
};
std::optional<Complement> complementary_check(const BilinearGame& g, const RatVector& v);

enum class LowRankSide { kRow, kCol, kAuto };

struct LowRankReport {
  EquilibriumCertificate certificate;
  LowRankSide side = LowRankSide::kRow;  // resolved side
  std::size_t vertices = 0;              // vertices of the enumerated polytope
  std::size_t checked = 0;               // vertices tried before success
};

// Row enumerates P (cost driven by rank A); Col does the same on the
// transposed game (rank B); Auto picks the smaller rank.
LowRankReport solve_low_rank_detailed(const BilinearGame& g, LowRankSide side = LowRankSide::kAuto);
EquilibriumCertificate solve_low_rank(const BilinearGame& g, LowRankSide side = LowRankSide::kAuto);

// Every extreme equilibrium, sorted by profile.
std::vector<EquilibriumCertificate> enumerate_extreme_equilibria(const BilinearGame& g);

}  // namespace bilinear
