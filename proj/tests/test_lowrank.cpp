#include "doctest.h"

#include "bilinear/lowrank.hpp"
#include "bilinear/oracle.hpp"
#include "support/games.hpp"

using namespace bilinear;
using namespace bilinear::testing;

namespace {

void check_vertex_bound(const BilinearGame& g, std::size_t count) {
  const std::size_t l = matrix_rank(g.row_payoff());
  CHECK(Integer(count) <= vertex_count_bound(g.cols(), l, g.row_duals()));
}

}  // namespace

TEST_CASE("vertices of P on small games") {
  const auto one = from_bimatrix(RatMatrix{{3}}, RatMatrix{{-1}});
  CHECK(enumerate_P_vertices(one, 1).vertices.size() == 1);

  const auto mp = matching_pennies();
  const auto v = enumerate_P_vertices(mp, 2).vertices;
  CHECK(v == enumerate_vertices(build_brp_P(mp).system));
  CHECK(Integer(v.size()) <= vertex_count_bound(2, 2, 1));
  CHECK(vertex_count_bound(2, 2, 1) == 64);
}

TEST_CASE("vertices of P match exhaustive enumeration") {
  Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_mixed_game(rng, trial);
    const auto got = enumerate_P_vertices(g, matrix_rank(g.row_payoff()));
    CHECK(got.vertices == enumerate_vertices(build_brp_P(g).system));
    check_vertex_bound(g, got.vertices.size());
  }
}

TEST_CASE("complementary check") {
  const auto mp = matching_pennies();
  const auto P = labeled_vertices(build_brp_P(mp));
  bool saw_mixed = false, saw_absent = false;
  for (const auto& v : P) {
    const auto c = complementary_check(mp, v.point);
    const bool mixed = v.point[0] == make_rational(1, 2);
    if (mixed) {
      saw_mixed = true;
      REQUIRE(c.has_value());
      CHECK(c->x == RatVector{make_rational(1, 2), make_rational(1, 2)});
    } else {
      saw_absent = true;
      CHECK_FALSE(c.has_value());
    }
  }
  CHECK(saw_mixed);
  CHECK(saw_absent);

  const auto one = from_bimatrix(RatMatrix{{3}}, RatMatrix{{-1}});
  const auto v = enumerate_P_vertices(one, 1).vertices;
  const auto c = complementary_check(one, v.front());
  REQUIRE(c.has_value());
  CHECK(c->x == RatVector{1});
}

TEST_CASE("complementary pairs are fully labeled") {
  Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_mixed_game(rng, trial);
    const auto P = build_brp_P(g), Q = build_brp_Q(g);
    for (const auto& v : enumerate_P_vertices(g, matrix_rank(g.row_payoff())).vertices) {
      const auto c = complementary_check(g, v);
      if (!c) continue;
      CHECK(is_fully_labeled(labels_at(P, v), labels_at(Q, concat(c->x, c->q)), g.rows(), g.cols()));
    }
  }
}

TEST_CASE("low-rank solver agrees with the oracle") {
  Rng rng(73);
  for (int trial = 0; trial < 24; ++trial) {
    const auto g = random_mixed_game(rng, trial);
    const auto truth = profiles_of(brute_force_equilibria(g));
    for (auto side : {LowRankSide::kRow, LowRankSide::kCol, LowRankSide::kAuto}) {
      const auto rep = solve_low_rank_detailed(g, side);
      CHECK(rep.certificate.is_exact());
      CHECK(rep.certificate.abs_eps == 0);
      CHECK(std::find(truth.begin(), truth.end(), rep.certificate.profile) != truth.end());
      CHECK(rep.side != LowRankSide::kAuto);
    }
  }
}

TEST_CASE("auto side follows the smaller rank") {
  Rng rng(74);
  GameData d = simplex_data(rng.int_matrix(4, 4, -9, 9));
  d.B = rng.int_matrix(4, 1, 1, 3) * rng.int_matrix(1, 4, -3, 3);
  const auto g = validate(d);
  CHECK(solve_low_rank_detailed(g).side == LowRankSide::kCol);
}

TEST_CASE("extreme equilibria") {
  const auto bos = from_bimatrix(RatMatrix{{2, 0}, {0, 1}}, RatMatrix{{1, 0}, {0, 2}});
  const auto eqs = enumerate_extreme_equilibria(bos);
  CHECK(eqs.size() == 3);
  CHECK(profiles_of(eqs) == bimatrix_support_enumeration(RatMatrix{{2, 0}, {0, 1}},
                                                         RatMatrix{{1, 0}, {0, 2}}));
  Rng rng(75);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_mixed_game(rng, trial);
    const auto got = enumerate_extreme_equilibria(g);
    CHECK(profiles_of(got) == profiles_of(brute_force_equilibria(g)));
    for (const auto& c : got) CHECK(c.is_exact());
  }
}
