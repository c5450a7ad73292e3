#include "doctest.h"

#include "bilinear/errors.hpp"
#include "bilinear/oracle.hpp"
#include "support/games.hpp"

using namespace bilinear;
using namespace bilinear::testing;

namespace {

bool nondegenerate(const BilinearGame& g) {
  for (const auto& brp : {build_brp_P(g), build_brp_Q(g)})
    for (const auto& v : labeled_vertices(brp))
      if (v.labels.size() != brp.dimension()) return false;
  return true;
}

}  // namespace

TEST_CASE("oracle on small classics") {
  const Rational h = make_rational(1, 2);
  auto eq = brute_force_equilibria(matching_pennies());
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].profile == StrategyProfile{{h, h}, {h, h}});

  const RatMatrix I{{1, 0}, {0, 1}};
  eq = brute_force_equilibria(from_bimatrix(I, I));
  CHECK(profiles_of(eq) == std::vector<StrategyProfile>{
                               {{0, 1}, {0, 1}}, {{h, h}, {h, h}}, {{1, 0}, {1, 0}}});

  eq = brute_force_equilibria(from_bimatrix(RatMatrix{{7}}, RatMatrix{{-2}}));
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].profile == StrategyProfile{{1}, {1}});

  CHECK(bimatrix_support_enumeration(I, I) == profiles_of(brute_force_equilibria(from_bimatrix(I, I))));
  CHECK(bimatrix_support_enumeration(RatMatrix{{1, -1}, {-1, 1}}, RatMatrix{{-1, 1}, {1, -1}}) ==
        std::vector<StrategyProfile>{{{h, h}, {h, h}}});
  CHECK(bimatrix_support_enumeration(RatMatrix{{7}}, RatMatrix{{-2}}).size() == 1);
}

TEST_CASE("oracle size guards") {
  Rng rng(1);
  const auto big = random_bimatrix(rng, 12, 12);
  CHECK_THROWS_AS(brute_force_equilibria(big), Error);
  const auto g = random_bimatrix(rng, 3, 3);
  CHECK_THROWS_AS(brute_force_equilibria(g, 7), Error);
  CHECK_THROWS_AS(bimatrix_support_enumeration(RatMatrix(7, 2), RatMatrix(7, 2)), Error);
}

TEST_CASE("exhaustive vertex enumeration") {
  // Unit square: four vertices.
  LinearProgram sq = LinearProgram::with_vars(2, true);
  sq.add_ineq(RatVector{1, 0}, 1);
  sq.add_ineq(RatVector{0, 1}, 1);
  CHECK(enumerate_vertices(sq) == std::vector<RatVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  // Triangle in 3-space.
  LinearProgram tri = LinearProgram::with_vars(3, true);
  tri.add_eq(RatVector{1, 1, 1}, 1);
  CHECK(enumerate_vertices(tri).size() == 3);
}

TEST_CASE("the two oracles agree on nondegenerate bimatrix games") {
  Rng rng(31);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t M = 1 + rng.index(4), N = 1 + rng.index(4);
    const RatMatrix A = rng.int_matrix(M, N, -20, 20), B = rng.int_matrix(M, N, -20, 20);
    const auto g = from_bimatrix(A, B);
    if (!nondegenerate(g)) continue;
    ++compared;
    const auto eq = brute_force_equilibria(g);
    CHECK(profiles_of(eq) == bimatrix_support_enumeration(A, B));
    for (const auto& c : eq) {
      CHECK(c.abs_eps == 0);
      CHECK(c.qp_residual == 0);
    }
  }
  CHECK(compared >= 20);
}

TEST_CASE("oracle output is exact on general polytopes") {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_birkhoff(rng, trial % 2 == 0);
    const auto eq = brute_force_equilibria(g);
    CHECK(!eq.empty());
    for (const auto& c : eq) CHECK(c.qp_residual == 0);
  }
}
