#include "doctest.h"

#include <algorithm>
#include <optional>

#include "bilinear/errors.hpp"
#include "bilinear/lp.hpp"
#include "support/random.hpp"

using namespace bilinear;
using bilinear::testing::Rng;

namespace {

LinearProgram simple(RatVector c, RatMatrix eq, RatVector eq_rhs) {
  LinearProgram lp = LinearProgram::with_vars(c.size(), true);
  lp.objective = std::move(c);
  lp.eq = std::move(eq);
  lp.eq_rhs = std::move(eq_rhs);
  return lp;
}

// Explicit dual of max c^T x, Ax = b, Gx <= g, x_N >= 0 written as its own
// program: min b^T y + g^T mu, A^T y + G^T mu >= c (nonneg) / = c (free).
LinearProgram dual_of(const LinearProgram& p) {
  const std::size_t n = p.num_vars(), ne = p.eq.rows(), ni = p.ineq.rows();
  LinearProgram d = LinearProgram::with_vars(ne + ni, false);
  d.sense = Sense::kMinimize;
  for (std::size_t r = 0; r < ne; ++r) d.objective[r] = p.eq_rhs[r];
  for (std::size_t r = 0; r < ni; ++r) {
    d.objective[ne + r] = p.ineq_rhs[r];
    d.nonneg[ne + r] = 1;
  }
  const RatVector c = p.sense == Sense::kMaximize ? p.objective : scale(-1, p.objective);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector row(ne + ni);
    for (std::size_t r = 0; r < ne; ++r) row[r] = p.eq(r, j);
    for (std::size_t r = 0; r < ni; ++r) row[ne + r] = p.ineq(r, j);
    if (p.nonneg[j]) d.add_ineq(scale(-1, row), -c[j]);
    else d.add_eq(row, c[j]);
  }
  return d;
}

// Brute-force optimum over all basic solutions (bounded nonnegative programs).
std::optional<Rational> vertex_oracle(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t r = 0; r < lp.ineq.rows(); ++r) {
    rows.push_back(lp.ineq.row(r));
    rhs.push_back(lp.ineq_rhs[r]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    RatVector u(n);
    u[j] = 1;
    rows.push_back(u);
    rhs.push_back(0);
  }
  const std::size_t need = n - lp.eq.rows();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(need);
  // iterate all subsets of size `need` via bitmask
  const std::size_t total = rows.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != need) continue;
    RatMatrix sys = lp.eq;
    RatVector b = lp.eq_rhs;
    std::vector<RatVector> chosen;
    for (std::size_t i = 0; i < total; ++i)
      if (mask >> i & 1) {
        chosen.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
    sys = vstack(sys.rows() ? sys : RatMatrix(0, n), RatMatrix::from_rows(chosen, n));
    auto x = solve_square(sys, b);
    if (!x || !is_feasible(lp, *x)) continue;
    Rational v = dot(lp.objective, *x);
    if (!best || (lp.sense == Sense::kMaximize ? v > *best : v < *best)) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("solve_lp examples") {
  SUBCASE("optimal") {
    auto out = solve_lp(simple({1, 0}, RatMatrix{{1, 1}}, {1}));
    REQUIRE(out.status == LpStatus::kOptimal);
    CHECK(out.value == 1);
    CHECK(out.point == RatVector{1, 0});
    CHECK(out.tight.zero_variables == std::vector<std::size_t>{1});
  }
  SUBCASE("unbounded") {
    auto out = solve_lp(simple({1, 0}, RatMatrix{{1, -1}}, {0}));
    CHECK(out.status == LpStatus::kUnbounded);
  }
  SUBCASE("infeasible") {
    auto out = solve_lp(simple({0}, RatMatrix{{1}}, {-1}));
    CHECK(out.status == LpStatus::kInfeasible);
  }
  SUBCASE("minimise with free variables") {
    // min x0 - x1, x0 free, x1 >= 0: x0 + x1 = 2, x0 >= -3 written as -x0 <= 3
    LinearProgram lp = LinearProgram::with_vars(2, true);
    lp.nonneg[0] = 0;
    lp.sense = Sense::kMinimize;
    lp.objective = {1, -1};
    lp.add_eq(RatVector{1, 1}, 2);
    lp.add_ineq(RatVector{-1, 0}, 3);
    auto out = solve_lp(lp);
    REQUIRE(out.optimal());
    CHECK(out.point == RatVector{-3, 5});
    CHECK(out.value == -8);
    CHECK(out.tight.inequalities == std::vector<std::size_t>{0});
  }
  SUBCASE("malformed") {
    LinearProgram lp = LinearProgram::with_vars(2, true);
    lp.eq = RatMatrix(1, 3);
    lp.eq_rhs = {0};
    CHECK_THROWS_AS(solve_lp(lp), Error);
  }
}

TEST_CASE("Beale's cycling example terminates") {
  LinearProgram lp = LinearProgram::with_vars(4, true);
  lp.objective = {make_rational(3, 4), -20, make_rational(1, 2), -6};
  lp.add_ineq(RatVector{make_rational(1, 4), -8, -1, 9}, 0);
  lp.add_ineq(RatVector{make_rational(1, 2), -12, make_rational(-1, 2), 3}, 0);
  lp.add_ineq(RatVector{0, 0, 1, 0}, 1);
  auto out = solve_lp(lp);
  REQUIRE(out.optimal());
  CHECK(out.value == make_rational(5, 4));
}

TEST_CASE("redundant equality rows are detected and harmless") {
  LinearProgram lp = LinearProgram::with_vars(3, true);
  lp.objective = {1, 2, 3};
  lp.add_eq(RatVector{1, 1, 1}, 1);
  lp.add_eq(RatVector{2, 2, 2}, 2);
  lp.add_eq(RatVector{1, 0, 0}, make_rational(1, 3));
  auto out = solve_lp(lp);
  REQUIRE(out.optimal());
  CHECK(out.value == make_rational(1, 3) + 3 * make_rational(2, 3));
  CHECK(out.redundant_eq_rows.size() == 1);
}

TEST_CASE("random programs: oracle agreement, duality, feasibility, determinism") {
  Rng rng(2024);
  int optimal = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    LinearProgram lp = LinearProgram::with_vars(n, true);
    lp.sense = rng.index(2) ? Sense::kMaximize : Sense::kMinimize;
    lp.objective = rng.int_vector(n, -6, 6);
    const std::size_t n_eq = rng.index(2);
    for (std::size_t r = 0; r < n_eq; ++r) lp.add_eq(rng.int_vector(n, -3, 4), rng.uniform(-2, 5));
    const std::size_t n_ineq = 1 + rng.index(3);
    for (std::size_t r = 0; r < n_ineq; ++r)
      lp.add_ineq(rng.int_vector(n, -4, 5), rng.uniform(-3, 8));
    lp.add_ineq(RatVector(n, Rational(1)), 10);  // keeps the region bounded

    auto out = solve_lp(lp);
    auto oracle = vertex_oracle(lp);
    if (!oracle) {
      CHECK(out.status == LpStatus::kInfeasible);
      continue;
    }
    REQUIRE(out.optimal());
    ++optimal;
    CHECK(out.value == *oracle);
    CHECK(is_feasible(lp, out.point));
    for (std::size_t r : out.tight.inequalities)
      CHECK(dot(lp.ineq.row_span(r), out.point) == lp.ineq_rhs[r]);
    for (std::size_t j : out.tight.zero_variables) CHECK(out.point[j] == 0);

    auto dual = solve_lp(dual_of(lp));
    REQUIRE(dual.optimal());
    const Rational primal_max = lp.sense == Sense::kMaximize ? out.value : Rational(-out.value);
    CHECK(dual.value == primal_max);

    auto again = solve_lp(lp);
    CHECK(again.point == out.point);
    CHECK(again.tight == out.tight);
  }
  CHECK(optimal > 50);
}

TEST_CASE("vertex denominators respect l! Z^l") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    LinearProgram lp = LinearProgram::with_vars(n, true);
    lp.objective = rng.int_vector(n, -9, 9);
    lp.add_eq(rng.int_vector(n, 1, 9), rng.uniform(1, 9));
    for (int r = 0; r < 2; ++r) lp.add_ineq(rng.int_vector(n, -9, 9), rng.uniform(0, 9));
    auto out = solve_lp(lp);
    if (!out.optimal()) continue;
    Rational z = std::max({lp.objective.empty() ? Rational(1) : max_abs(lp.objective),
                           lp.eq.max_abs(), lp.ineq.max_abs(), max_abs(lp.eq_rhs),
                           max_abs(lp.ineq_rhs), Rational(1)});
    const std::size_t l = n + lp.eq.rows() + lp.ineq.rows();
    const Integer bound = denominator_bound(z.get_num(), l);
    for (const auto& v : out.point) CHECK(v.get_den() <= bound);
  }
}

TEST_CASE("optimal_face examples") {
  SUBCASE("objective parallel to a facet") {
    LinearProgram lp = LinearProgram::with_vars(2, true);
    lp.objective = {1, 1};
    lp.add_ineq(RatVector{1, 1}, 1);
    auto face = optimal_face(lp);
    CHECK_FALSE(face.is_unique_vertex);
    CHECK(face.dimension == 1);
    CHECK(face.always_tight.inequalities == std::vector<std::size_t>{0});
    CHECK(face.always_tight.zero_variables.empty());
  }
  SUBCASE("unique vertex") {
    auto face = optimal_face(simple({1, 0}, RatMatrix{{1, 1}}, {1}));
    CHECK(face.is_unique_vertex);
    CHECK(face.outcome.point == RatVector{1, 0});
  }
  SUBCASE("whole polytope optimal") {
    auto face = optimal_face(simple({0, 0, 0}, RatMatrix{{1, 1, 1}}, {1}));
    CHECK(face.dimension == 2);
    CHECK(face.always_tight.zero_variables.empty());
  }
  SUBCASE("not optimal") {
    CHECK_THROWS_AS(optimal_face(simple({1, 0}, RatMatrix{{1, -1}}, {0})), Error);
  }
}

TEST_CASE("optimal_face agrees with per-constraint re-optimisation") {
  Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3;
    LinearProgram lp = LinearProgram::with_vars(n, true);
    // small integer objectives produce many degenerate / non-unique optima
    lp.objective = rng.int_vector(n, -1, 1);
    lp.add_ineq(rng.int_vector(n, 0, 2), 2);
    lp.add_ineq(rng.int_vector(n, -1, 2), 1);
    lp.add_ineq(RatVector(n, Rational(1)), 3);
    auto face = optimal_face(lp);
    // Reference: a constraint is always tight iff max slack over the optimal
    // set is zero, checked one constraint at a time.
    LinearProgram opt = lp;
    opt.add_eq(lp.objective, face.outcome.value);
    for (std::size_t r = 0; r < lp.ineq.rows(); ++r) {
      LinearProgram probe = opt;
      probe.objective = scale(-1, lp.ineq.row(r));
      auto res = solve_lp(probe);
      REQUIRE(res.optimal());
      const bool always = lp.ineq_rhs[r] + res.value == 0;
      const bool got = std::count(face.always_tight.inequalities.begin(),
                                  face.always_tight.inequalities.end(), r) > 0;
      CHECK(always == got);
    }
    for (std::size_t j = 0; j < n; ++j) {
      LinearProgram probe = opt;
      probe.objective.assign(n, Rational(0));
      probe.objective[j] = 1;
      auto res = solve_lp(probe);
      REQUIRE(res.optimal());
      const bool always = res.value == 0;
      const bool got = std::count(face.always_tight.zero_variables.begin(),
                                  face.always_tight.zero_variables.end(), j) > 0;
      CHECK(always == got);
    }
  }
}

TEST_CASE("is_polytope_compact") {
  CHECK(is_polytope_compact(RatMatrix{{1, 1}}, RatVector{1}) == PolytopeStatus::kCompact);
  CHECK(is_polytope_compact(RatMatrix{{1, -1}}, RatVector{0}) == PolytopeStatus::kUnbounded);
  CHECK(is_polytope_compact(RatMatrix{{1, 1}}, RatVector{-1}) == PolytopeStatus::kEmpty);
}

TEST_CASE("move_to_vertex reaches a vertex") {
  // Triangle x1 + x2 + x3 = 1 with a free extra variable pinned by equality.
  LinearProgram lp = LinearProgram::with_vars(4, true);
  lp.nonneg[3] = 0;
  lp.add_eq(RatVector{1, 1, 1, 0}, 1);
  lp.add_eq(RatVector{-14, 7, 8, -1}, 0);
  const Rational t = make_rational(1, 3);
  const RatVector v = move_to_vertex(lp, RatVector{t, t, t, make_rational(1, 3)});
  int zeros = 0;
  for (int j = 0; j < 3; ++j) zeros += v[j] == 0;
  CHECK(zeros == 2);
  CHECK(is_feasible(lp, v));

  LinearProgram line = LinearProgram::with_vars(1, false);
  CHECK_THROWS_AS(move_to_vertex(line, RatVector{0}), Error);
  CHECK_THROWS_AS(move_to_vertex(lp, RatVector{1, 1, 1, 0}), Error);

  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    LinearProgram box = LinearProgram::with_vars(3, true);
    for (int r = 0; r < 4; ++r) box.add_ineq(rng.int_vector(3, 0, 5), rng.uniform(1, 9));
    box.add_ineq(RatVector{1, 1, 1}, 10);
    const RatVector start{make_rational(1, 100), make_rational(1, 100), make_rational(1, 100)};
    const RatVector vert = move_to_vertex(box, start);
    std::size_t tight = 0;
    for (std::size_t r = 0; r < box.ineq.rows(); ++r)
      tight += dot(box.ineq.row_span(r), vert) == box.ineq_rhs[r];
    for (const auto& x : vert) tight += x == 0;
    CHECK(tight >= 3);
  }
}
