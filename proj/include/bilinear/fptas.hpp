#pragma once

#include <cstddef>
#include <vector>

#include "bilinear/game.hpp"

namespace bilinear {

// A + B = sum_i alpha(i) beta(i)^T with the image box of X and Y under each
// factor: w_i <= x^T alpha(i) <= w'_i, z_i <= beta(i)^T y <= z'_i.
struct RankDecomposition {
  std::vector<RankOneTerm> terms;
  RatVector w, w_hi, z, z_hi;

  std::size_t k() const noexcept { return terms.size(); }
  bool is_positive() const;  // all factors and lower bounds strictly positive
};

// Greedy factorisation of A + B.
RankDecomposition rank_decomposition(const BilinearGame& g);
// Caller-supplied factors (in the validated game's payoff units). Throws
// DimensionMismatch if they do not reproduce A + B exactly.
RankDecomposition rank_decomposition(const BilinearGame& g, std::vector<RankOneTerm> terms);

// Bands x^T alpha(i) in [x_lo_i, x_hi_i] and beta(i)^T y in [y_lo_i, y_hi_i].
struct GridCell {
  RatVector x_lo, x_hi, y_lo, y_hi;
};

// min e^T p + f^T q over P x Q inside the cell, variables (y, p, x, q).
// dual_bound, if positive, boxes p and q to [-dual_bound, dual_bound].
LpOutcome cell_lp(const BilinearGame& g, const RankDecomposition& dec, const GridCell& cell,
                  const Rational& dual_bound = 0);

struct FptasOptions {
  unsigned jobs = 1;  // worker threads for the per-band programs
};

struct FptasReport {
  EquilibriumCertificate certificate;
  RankDecomposition decomposition;
  std::size_t x_cells = 0, y_cells = 0;  // cells of the finest grid on each side
  std::size_t levels = 0;                // grids searched
  Rational grid_eps;                     // eps of the finest grid (a power of two)
  std::size_t programs = 0;              // LPs solved
  std::size_t feasible_pairs = 0;
  bool zero_sum = false;
};

// Both schemes search the grid at eps rounded down to a power of two and at
// every coarser power of two; the candidate with the smallest exact error wins.
//
// Relative scheme: multiplicative grid with ratio 1 + eps. Guarantees
// rel_eps <= 1 - 1/(1+eps)^2. Throws NonPositiveDecomposition unless every
// factor is entrywise positive and w_i, z_i > 0; InvalidArgument unless eps > 0.
FptasReport fptas_relative(const BilinearGame& g, const Rational& eps,
                           const RankDecomposition& dec, const FptasOptions& opt = {});
FptasReport fptas_relative(const BilinearGame& g, const Rational& eps,
                           const FptasOptions& opt = {});

// Absolute scheme: additive grid with steps eps K / (2k T_i) and
// eps K / (2k S_i), K = x_max D y_max, S_i and T_i the largest |x^T alpha(i)|
// and |beta(i)^T y|. Guarantees abs_eps <= eps. Zero-sum games go to the
// exact solver.
FptasReport fptas_absolute(const BilinearGame& g, const Rational& eps,
                           const RankDecomposition& dec, const FptasOptions& opt = {});
FptasReport fptas_absolute(const BilinearGame& g, const Rational& eps,
                           const FptasOptions& opt = {});

}  // namespace bilinear
