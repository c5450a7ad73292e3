#pragma once

#include <string>

#include "bilinear/converters.hpp"
#include "bilinear/game.hpp"
#include "bilinear/oracle.hpp"
#include "support/random.hpp"

namespace bilinear::testing {

inline BilinearGame random_bimatrix(Rng& rng, std::size_t M, std::size_t N, long lo = -9,
                                    long hi = 9) {
  return from_bimatrix(rng.int_matrix(M, N, lo, hi), rng.int_matrix(M, N, lo, hi));
}

inline BilinearGame matching_pennies() {
  const RatMatrix A{{1, -1}, {-1, 1}};
  return from_bimatrix(A, -A);
}

// Random game over the 2x2 Birkhoff polytope on one side or both.
inline BilinearGame random_birkhoff(Rng& rng, bool both, long lo = -9, long hi = 9) {
  const auto bk = ranking_duel_polytope(2);
  const std::size_t N = both ? 4 : 2 + rng.index(3);
  GameData d;
  d.A = rng.int_matrix(4, N, lo, hi);
  d.B = rng.int_matrix(4, N, lo, hi);
  d.E = bk.E;
  d.e = bk.e;
  if (both) {
    d.F = bk.E;
    d.f = bk.e;
  } else {
    d.F = RatMatrix::filled(1, N, 1);
    d.f = {1};
  }
  return validate(d);
}

// B = -A + gamma beta^T with random integer gamma, beta.
inline GameData rank_one_data(Rng& rng, GameData base, long lo = -4, long hi = 4) {
  const std::size_t M = base.A.rows(), N = base.A.cols();
  RatVector gamma = rng.int_vector(M, lo, hi), beta = rng.int_vector(N, lo, hi);
  if (gamma == RatVector(M, Rational(0))) gamma[rng.index(M)] = 1;
  if (beta == RatVector(N, Rational(0))) beta[rng.index(N)] = 1;
  base.B = outer(gamma, beta) - base.A;
  return base;
}

// Direction w with E^T w >= 1; exists because X is bounded.
inline RatVector raising_direction(const RatMatrix& E) {
  LinearProgram lp = LinearProgram::with_vars(E.rows(), false);
  for (std::size_t i = 0; i < E.cols(); ++i) lp.add_ineq(scale(-1, E.col(i)), -1);
  return solve_lp(lp).point;
}

// Random point of a polytope {E z = e, z >= 0}, as a convex combination of
// its vertices.
inline RatVector random_strategy(Rng& rng, const RatMatrix& E, const RatVector& e) {
  LinearProgram lp = LinearProgram::with_vars(E.cols(), true);
  lp.eq = E;
  lp.eq_rhs = e;
  const auto verts = enumerate_vertices(lp);
  const RatVector w = rng.simplex_point(verts.size());
  RatVector z(E.cols(), Rational(0));
  for (std::size_t k = 0; k < verts.size(); ++k) z = add(z, scale(w[k], verts[k]));
  return z;
}

inline RatVector random_x(Rng& rng, const BilinearGame& g) {
  return random_strategy(rng, g.row_constraints(), g.row_rhs());
}
inline RatVector random_y(Rng& rng, const BilinearGame& g) {
  return random_strategy(rng, g.col_constraints(), g.col_rhs());
}

// Random (y, p) in P: y random, p a best-response dual raised by a random
// nonnegative multiple of a direction keeping E^T p >= A y.
inline RatVector random_P_point(Rng& rng, const BilinearGame& g) {
  const RatVector y = random_y(rng, g);
  RatVector p = best_response_row(g, y).dual;
  if (rng.index(3) != 0)
    p = add(p, scale(rng.fraction(0, 5, 3), raising_direction(g.row_constraints())));
  return concat(y, p);
}

inline RatVector random_Q_point(Rng& rng, const BilinearGame& g) {
  const RatVector x = random_x(rng, g);
  RatVector q = best_response_col(g, x).dual;
  if (rng.index(3) != 0)
    q = add(q, scale(rng.fraction(0, 5, 3), raising_direction(g.col_constraints())));
  return concat(x, q);
}

inline std::string show(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

inline std::vector<StrategyProfile> profiles_of(const std::vector<EquilibriumCertificate>& cs) {
  std::vector<StrategyProfile> out;
  for (const auto& c : cs) out.push_back(c.profile);
  return out;
}

// Simplex strategy sets around A with B left zero.
inline GameData simplex_data(const RatMatrix& A) {
  return bimatrix_data(A, RatMatrix(A.rows(), A.cols()));
}

struct PlantedGame {
  BilinearGame game;
  std::vector<RankOneTerm> terms;  // positive factors of A + B
};

// A + B = sum of k positive rank-one terms; A random.
inline PlantedGame random_positive(Rng& rng, std::size_t M, std::size_t N, std::size_t k) {
  std::vector<RankOneTerm> terms;
  RatMatrix S(M, N);
  for (std::size_t i = 0; i < k; ++i) {
    RankOneTerm t{rng.int_vector(M, 1, 5), rng.int_vector(N, 1, 5)};
    S = S + outer(t.alpha, t.beta);
    terms.push_back(std::move(t));
  }
  const RatMatrix A = rng.int_matrix(M, N, 0, 9);
  return {from_bimatrix(A, S - A), std::move(terms)};
}

// Random game whose row payoff has rank at most l.
inline BilinearGame low_rank_game(Rng& rng, std::size_t M, std::size_t N, std::size_t l) {
  GameData d = simplex_data(rng.int_matrix(M, l, -3, 3) * rng.int_matrix(l, N, -3, 3));
  d.B = rng.int_matrix(M, N, -9, 9);
  return validate(d);
}

inline BilinearGame random_mixed_game(Rng& rng, int trial) {
  switch (trial % 4) {
    case 0: return random_bimatrix(rng, 1 + rng.index(5), 1 + rng.index(5));
    case 1: return low_rank_game(rng, 2 + rng.index(4), 2 + rng.index(4), 1 + rng.index(2));
    case 2: return random_birkhoff(rng, trial % 8 == 2);
    default: return random_bimatrix(rng, 2 + rng.index(4), 2 + rng.index(4), 0, 2);  // degenerate
  }
}

}  // namespace bilinear::testing
