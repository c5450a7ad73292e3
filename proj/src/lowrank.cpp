#include "bilinear/lowrank.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bilinear {

namespace {

template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatMatrix rows_of(const RatMatrix& m, const std::vector<std::size_t>& rows) {
  RatMatrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(rows[r], c);
  return out;
}

// Vertices of a small polytope by depth-first growth of independent tight
// sets; a set is only extended by constraints that raise its rank.
std::vector<RatVector> polytope_vertices(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t r = 0; r < lp.eq.rows(); ++r) {
    rows.push_back(lp.eq.row(r));
    rhs.push_back(lp.eq_rhs[r]);
  }
  const std::size_t fixed = rows.size();
  for (std::size_t r = 0; r < lp.ineq.rows(); ++r) {
    rows.push_back(lp.ineq.row(r));
    rhs.push_back(lp.ineq_rhs[r]);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (lp.nonneg[j]) {
      RatVector unit(n, Rational(0));
      unit[j] = 1;
      rows.push_back(std::move(unit));
      rhs.push_back(0);
    }

  std::vector<std::size_t> base(fixed);
  for (std::size_t r = 0; r < fixed; ++r) base[r] = r;
  auto matrix = [&](const std::vector<std::size_t>& sel) {
    RatMatrix m(sel.size(), n);
    for (std::size_t r = 0; r < sel.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[sel[r]][c];
    return m;
  };
  const std::size_t base_rank = fixed == 0 ? 0 : matrix_rank(matrix(base));

  std::set<RatVector> found;
  // chosen holds the equalities followed by independent tight constraints.
  auto grow = [&](auto&& self, std::vector<std::size_t>& chosen, std::size_t rank,
                  std::size_t next) -> void {
    if (rank == n) {
      RatVector b;
      for (auto r : chosen) b.push_back(rhs[r]);
      auto x = solve_unique(matrix(chosen), b);
      if (x && is_feasible(lp, *x)) found.insert(std::move(*x));
      return;
    }
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows.size() - r < n - rank) return;
      chosen.push_back(r);
      if (matrix_rank(matrix(chosen)) == rank + 1) self(self, chosen, rank + 1, r + 1);
      chosen.pop_back();
    }
  };
  std::vector<std::size_t> chosen = base;
  grow(grow, chosen, base_rank, fixed);
  return {found.begin(), found.end()};
}

BilinearGame transposed(const BilinearGame& g) {
  return validate(GameData{g.col_payoff().transpose(), g.row_payoff().transpose(),
                           g.col_constraints(), g.row_constraints(), g.col_rhs(), g.row_rhs()});
}

}  // namespace

PVertexEnumeration enumerate_P_vertices(const BilinearGame& g, std::size_t l_bound) {
  const BrpPolytope brp = build_brp_P(g);
  const LinearProgram& s = brp.system;
  const std::size_t M = g.rows(), N = g.cols(), n = s.num_vars();
  const std::size_t dim = n - g.col_duals();
  const std::size_t max_d = std::min({l_bound + g.row_duals(), M, dim});

  PVertexEnumeration out;
  std::set<RatVector> found;
  for (std::size_t d = 0; d <= max_d; ++d) {
    if (dim - d > N) continue;
    for_each_subset(M, d, [&](const std::vector<std::size_t>& D) {
      if (d > 0 && matrix_rank(rows_of(s.ineq, D)) != d) return;
      for_each_subset(N, dim - d, [&](const std::vector<std::size_t>& J) {
        RatMatrix m(n, n);
        RatVector b(n, Rational(0));
        std::size_t r = 0;
        for (std::size_t e = 0; e < s.eq.rows(); ++e, ++r) {
          for (std::size_t c = 0; c < n; ++c) m(r, c) = s.eq(e, c);
          b[r] = s.eq_rhs[e];
        }
        for (auto i : D) {
          for (std::size_t c = 0; c < n; ++c) m(r, c) = s.ineq(i, c);
          ++r;
        }
        for (auto j : J) m(r++, j) = 1;
        ++out.candidates;
        auto v = solve_square(m, b);
        if (v && is_feasible(s, *v)) found.insert(std::move(*v));
      });
    });
  }
  out.vertices.assign(found.begin(), found.end());
  return out;
}

Integer vertex_count_bound(std::size_t n, std::size_t l, std::size_t k) {
  Integer out = 1;
  for (std::size_t i = 0; i < l + k; ++i) out *= 2 * static_cast<unsigned long>(n);
  return out;
}

LinearProgram complementary_polytope(const BilinearGame& g, const RatVector& v) {
  const std::size_t M = g.rows(), N = g.cols();
  const BrpPolytope P = build_brp_P(g);
  const RatVector slack_rows = P.system.ineq * std::span<const Rational>(v);
  const LinearProgram Q = build_brp_Q(g).system;

  LinearProgram lp = LinearProgram::with_vars(Q.num_vars(), false);
  lp.nonneg = Q.nonneg;
  lp.eq = Q.eq;
  lp.eq_rhs = Q.eq_rhs;
  lp.ineq = RatMatrix(0, Q.num_vars());
  for (std::size_t j = 0; j < N; ++j) {
    if (v[j] > 0) lp.add_eq(Q.ineq.row(j), Q.ineq_rhs[j]);
    else lp.add_ineq(Q.ineq.row(j), Q.ineq_rhs[j]);
  }
  for (std::size_t i = 0; i < M; ++i)
    if (slack_rows[i] != 0) {
      RatVector unit(Q.num_vars(), Rational(0));
      unit[i] = 1;
      lp.add_eq(unit, 0);
    }
  return lp;
}

std::optional<Complement> complementary_check(const BilinearGame& g, const RatVector& v) {
  const LpOutcome res = solve_lp(complementary_polytope(g, v));
  if (!res.optimal()) return std::nullopt;
  const auto mid = res.point.begin() + static_cast<std::ptrdiff_t>(g.rows());
  return Complement{{res.point.begin(), mid}, {mid, res.point.end()}};
}

LowRankReport solve_low_rank_detailed(const BilinearGame& g, LowRankSide side) {
  if (side == LowRankSide::kAuto)
    side = matrix_rank(g.col_payoff()) < matrix_rank(g.row_payoff()) ? LowRankSide::kCol
                                                                      : LowRankSide::kRow;
  LowRankReport rep;
  rep.side = side;
  const BilinearGame h = side == LowRankSide::kRow ? g : transposed(g);
  const auto verts = enumerate_P_vertices(h, matrix_rank(h.row_payoff()));
  rep.vertices = verts.vertices.size();
  for (const auto& v : verts.vertices) {
    ++rep.checked;
    auto c = complementary_check(h, v);
    if (!c) continue;
    RatVector y(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h.cols()));
    StrategyProfile prof = side == LowRankSide::kRow ? StrategyProfile{c->x, y}
                                                     : StrategyProfile{y, c->x};
    rep.certificate = verify(g, prof);
    return rep;
  }
  throw std::logic_error("no vertex of P completes to an equilibrium");
}

EquilibriumCertificate solve_low_rank(const BilinearGame& g, LowRankSide side) {
  return solve_low_rank_detailed(g, side).certificate;
}

std::vector<EquilibriumCertificate> enumerate_extreme_equilibria(const BilinearGame& g) {
  const std::size_t N = g.cols();
  std::set<StrategyProfile> found;
  for (const auto& v : enumerate_P_vertices(g, matrix_rank(g.row_payoff())).vertices) {
    const LinearProgram comp = complementary_polytope(g, v);
    if (!solve_lp(comp).optimal()) continue;
    RatVector y(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(N));
    for (const auto& w : polytope_vertices(comp))
      found.insert({RatVector(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(g.rows())), y});
  }
  std::vector<EquilibriumCertificate> out;
  for (const auto& p : found) out.push_back(verify(g, p));
  return out;
}

}  // namespace bilinear
