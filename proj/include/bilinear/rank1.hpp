#pragma once

#include <optional>
#include <vector>

#include "bilinear/game.hpp"

namespace bilinear {

// A + B = gamma beta^T with beta primitive integral and its first nonzero
// entry positive (gamma is then integral too).
struct RankOneSplit {
  RatVector gamma;
  RatVector beta;
};

// Throws NotRankOne unless game_rank(g) == 1.
RankOneSplit decompose_rank1(const BilinearGame& g);

// min and max of gamma^T x over X.
std::pair<Rational, Rational> gamma_bounds(const BilinearGame& g, std::span<const Rational> gamma);

// Variables of the joint program over P x Q': y, p, x, lambda, q in that order.
struct JointLayout {
  std::size_t M, N, k1, k2;
  std::size_t y() const { return 0; }
  std::size_t p() const { return N; }
  std::size_t x() const { return N + k1; }
  std::size_t lambda() const { return N + k1 + M; }
  std::size_t q() const { return N + k1 + M + 1; }
  std::size_t size() const { return N + k1 + M + 1 + k2; }
};

// Q' over (x, lambda, q): x_i >= 0 (label i), -x^T A^j + lambda beta_j -
// q^T F^j <= 0 (label M+j), E x = e.
BrpPolytope build_brp_Qprime(const BilinearGame& g, std::span<const Rational> beta);

// P x Q' as one system; inequality rows 0..M-1 come from P, M..M+N-1 from Q'.
LinearProgram joint_system(const BilinearGame& g, std::span<const Rational> beta);

// max a beta^T y - e^T p - f^T q over P x Q' with lambda = a (last equality row).
LinearProgram parametric_program(const BilinearGame& g, std::span<const Rational> beta,
                                 const Rational& a);
LpOutcome parametric_lp(const BilinearGame& g, std::span<const Rational> beta, const Rational& a);

struct PathPoint {
  RatVector v;               // (y, p)
  RatVector w;               // (x, lambda, q)
  Rational lambda;
  TightSet tight;            // constraints of joint_system tight on the whole face
  std::size_t dimension = 0; // of that face
  std::optional<Rational> lambda_lo, lambda_hi;  // absent when unbounded
};

// The face of P x Q' through the optimal set of the parametric program at a,
// with lambda = a removed. Throws DegenerateFace if its dimension exceeds 1.
PathPoint edge_at(const BilinearGame& g, std::span<const Rational> beta, const Rational& a);

// A point of the edge on lambda = gamma^T x, if any.
std::optional<PathPoint> intersect_with_hplane(const BilinearGame& g,
                                               std::span<const Rational> beta,
                                               const PathPoint& edge,
                                               std::span<const Rational> gamma);

struct Rank1Step {
  Rational a, lo, hi;        // bracket [lo, hi] before the step, probe a
  std::optional<Rational> edge_lo, edge_hi;
  std::size_t face_dimension = 0;
  int side = 0;              // sign of lambda - gamma^T x on the face; 0 if it meets H
};

struct Rank1Report {
  RankOneSplit split;
  Rational gamma_min, gamma_max;
  std::vector<Rank1Step> steps;  // bisection probes only
  std::size_t iterations = 0;
  double iteration_bound = 0;    // log(gamma_max - gamma_min) + 2 log Delta + 1
  std::size_t fallback_probes = 0;
  bool zero_sum = false;
  EquilibriumCertificate certificate;
};

// Exact equilibrium of a game of rank at most one by bisection over lambda.
// Rank 0 is delegated to the zero-sum solver. Throws NotRankOne, or
// DegenerateGame if bisection and the fallback probes all miss H_gamma.
Rank1Report solve_rank1_detailed(const BilinearGame& g);
EquilibriumCertificate solve_rank1(const BilinearGame& g);

}  // namespace bilinear
