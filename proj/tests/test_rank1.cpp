#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bilinear/errors.hpp"
#include "bilinear/oracle.hpp"
#include "bilinear/rank1.hpp"
#include "support/games.hpp"

using namespace bilinear;
using namespace bilinear::testing;

namespace {

BilinearGame random_rank1(Rng& rng, int trial) {
  if (trial % 3 == 2) {
    const auto bk = ranking_duel_polytope(2);
    const std::size_t N = 2 + rng.index(3);
    GameData d{rng.int_matrix(4, N, -6, 6), {}, bk.E, RatMatrix::filled(1, N, 1), bk.e, {1}};
    return validate(rank_one_data(rng, d));
  }
  const std::size_t M = 2 + rng.index(5), N = 2 + rng.index(5);
  return validate(rank_one_data(rng, simplex_data(rng.int_matrix(M, N, -6, 6))));
}

}  // namespace

TEST_CASE("decomposition normal form") {
  const auto g = from_bimatrix(RatMatrix{{2, 4}, {1, 2}}, RatMatrix(2, 2));
  const auto s = decompose_rank1(g);
  CHECK(s.beta == RatVector{1, 2});
  CHECK(s.gamma == RatVector{2, 1});
  const auto n = from_bimatrix(RatMatrix{{-3, -6}, {0, 0}}, RatMatrix(2, 2));
  const auto t = decompose_rank1(n);
  CHECK(t.beta == RatVector{1, 2});
  CHECK(t.gamma == RatVector{-3, 0});
  CHECK_THROWS_AS(decompose_rank1(from_bimatrix(RatMatrix::identity(2), RatMatrix(2, 2))),
                  Error);
}

TEST_CASE("gamma bounds") {
  const auto simplex = from_bimatrix(RatMatrix(2, 2), RatMatrix(2, 2));
  CHECK(gamma_bounds(simplex, RatVector{1, 3}) == std::pair<Rational, Rational>(1, 3));
  CHECK(gamma_bounds(simplex, RatVector{5, 5}) == std::pair<Rational, Rational>(5, 5));
  const auto bk = from_ranking_duel(RatMatrix(4, 4), RatMatrix(4, 4), 2);
  CHECK(gamma_bounds(bk, RatVector{1, 0, 0, 1}) == std::pair<Rational, Rational>(0, 2));
}

TEST_CASE("parametric program has value zero and complementary optima") {
  Rng rng(51);
  for (int trial = 0; trial < 9; ++trial) {
    const auto g = random_rank1(rng, trial);
    if (game_rank(g) != 1) continue;
    const auto s = decompose_rank1(g);
    const auto [lo, hi] = gamma_bounds(g, s.gamma);
    const JointLayout L{g.rows(), g.cols(), g.row_duals(), g.col_duals()};
    for (const Rational& a : {lo, hi, Rational((lo + hi) / 2)}) {
      const auto out = parametric_lp(g, s.beta, a);
      REQUIRE(out.optimal());
      CHECK(out.value == 0);
      const auto& z = out.point;
      const auto y = std::span(z).subspan(L.y(), L.N), p = std::span(z).subspan(L.p(), L.k1);
      const auto x = std::span(z).subspan(L.x(), L.M), q = std::span(z).subspan(L.q(), L.k2);
      const RatVector slack_p = sub(g.row_payoff() * y, left_multiply(p, g.row_constraints()));
      RatVector slack_q = scale(-1, left_multiply(x, g.row_payoff()));
      slack_q = add(slack_q, scale(a, s.beta));
      slack_q = sub(slack_q, left_multiply(q, g.col_constraints()));
      CHECK(dot(x, slack_p) == 0);
      CHECK(dot(slack_q, y) == 0);
    }
  }
}

TEST_CASE("edges on nondegenerate games") {
  Rng rng(52);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = random_rank1(rng, trial);
    if (game_rank(g) != 1) continue;
    const auto s = decompose_rank1(g);
    const auto [lo, hi] = gamma_bounds(g, s.gamma);
    try {
      const auto e = edge_at(g, s.beta, (lo + hi) / 2);
      CHECK(e.dimension <= 1);
      ++checked;
      if (e.lambda_lo && e.lambda_hi) CHECK(*e.lambda_lo <= *e.lambda_hi);
      // Points of the edge at both lambda extremes are complementary.
      for (const auto& end : {e.lambda_lo, e.lambda_hi}) {
        if (!end) continue;
        const auto out = parametric_lp(g, s.beta, *end);
        REQUIRE(out.optimal());
        CHECK(out.value == 0);
      }
      if (auto hit = intersect_with_hplane(g, s.beta, e, s.gamma)) {
        const StrategyProfile prof{RatVector(hit->w.begin(), hit->w.begin() + g.rows()),
                                   RatVector(hit->v.begin(), hit->v.begin() + g.cols())};
        CHECK(verify(g, prof).abs_eps == 0);
      }
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kDegenerateFace);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("edge parallel to the hyperplane lambda = const") {
  const RatMatrix A{{2, -2}, {3, 0}};
  const RatMatrix B{{-2, 0}, {-3, -4}};
  const auto g = from_bimatrix(A, B);
  const auto s = decompose_rank1(g);
  const auto e = edge_at(g, s.beta, Rational(-3));
  CHECK(e.dimension == 1);
  REQUIRE(e.lambda_lo);
  REQUIRE(e.lambda_hi);
  CHECK(*e.lambda_lo == *e.lambda_hi);
}

TEST_CASE("classic rank one game") {
  const RatMatrix I = RatMatrix::identity(2);
  const auto g = from_bimatrix(I, RatMatrix::filled(2, 2, 1) - I);
  const auto c = solve_rank1(g);
  const Rational h = make_rational(1, 2);
  CHECK(c.profile == StrategyProfile{{h, h}, {h, h}});
  CHECK(bimatrix_support_enumeration(I, RatMatrix::filled(2, 2, 1) - I).size() == 1);
}

TEST_CASE("rank zero delegates to the zero-sum solver") {
  const auto r = solve_rank1_detailed(matching_pennies());
  CHECK(r.zero_sum);
  CHECK(r.certificate.is_exact());
}

TEST_CASE("random rank one games: exact, oracle-confirmed, within the iteration bound") {
  Rng rng(53);
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_rank1(rng, trial);
    const auto rep = solve_rank1_detailed(g);
    const auto& c = rep.certificate;
    CHECK(c.abs_eps == 0);
    CHECK(c.qp_residual == 0);
    CHECK(rep.iterations <= rep.iteration_bound);
    // Fully labelled at the returned profile.
    const auto P = build_brp_P(g), Q = build_brp_Q(g);
    CHECK(is_fully_labeled(labels_at(P, concat(c.profile.y, c.p)),
                           labels_at(Q, concat(c.profile.x, c.q)), g.rows(), g.cols()));
    const auto eq = profiles_of(brute_force_equilibria(g));
    CHECK(std::find(eq.begin(), eq.end(), c.profile) != eq.end());
    ++solved;
  }
  CHECK(solved == 30);
}

TEST_CASE("bisection trace is ordered along lambda") {
  Rng rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_rank1(rng, trial);
    if (game_rank(g) != 1) continue;
    const auto rep = solve_rank1_detailed(g);
    for (const auto& a : rep.steps)
      for (const auto& b : rep.steps) {
        if (a.side >= 0 || b.side <= 0) continue;
        // Faces below H_gamma sit at smaller lambda than faces above it.
        CHECK(a.a < b.a);
        if (a.edge_hi && b.edge_lo) CHECK(*a.edge_hi <= *b.edge_lo);
      }
    for (const auto& st : rep.steps) {
      CHECK(st.lo <= st.a);
      CHECK(st.a <= st.hi);
    }
  }
}
