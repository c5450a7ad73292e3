#include "bilinear/zerosum.hpp"

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

// min rhs^T p over (z, p) s.t. payoff z - cons^T p <= 0, other z = other_rhs,
// z >= 0. Returns the outcome; variables are z then p.
LpOutcome min_max_program(const RatMatrix& payoff, const RatMatrix& cons, const RatVector& rhs,
                          const RatMatrix& other, const RatVector& other_rhs) {
  const std::size_t n = payoff.cols(), k = cons.rows(), m = payoff.rows();
  LinearProgram lp = LinearProgram::with_vars(n + k, false);
  lp.sense = Sense::kMinimize;
  std::fill(lp.nonneg.begin(), lp.nonneg.begin() + n, 1);
  for (std::size_t r = 0; r < k; ++r) lp.objective[n + r] = rhs[r];
  lp.ineq = RatMatrix(m, n + k);
  lp.ineq_rhs.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.ineq(i, j) = payoff(i, j);
    for (std::size_t r = 0; r < k; ++r) lp.ineq(i, n + r) = -cons(r, i);
  }
  lp.eq = hstack(other, RatMatrix(other.rows(), k));
  lp.eq_rhs = other_rhs;
  return solve_lp(lp);
}

void require_zero_sum(const BilinearGame& g) {
  if (!g.payoff_sum().is_zero()) throw Error(ErrorCode::kNotZeroSum, "A + B is not zero");
}

}  // namespace

std::pair<RatVector, Rational> zero_sum_maximin(const BilinearGame& g) {
  require_zero_sum(g);
  const LpOutcome out = min_max_program(g.col_payoff().transpose(), g.col_constraints(),
                                        g.col_rhs(), g.row_constraints(), g.row_rhs());
  RatVector x(out.point.begin(), out.point.begin() + g.rows());
  return {std::move(x), -out.value};
}

ZeroSumResult solve_zero_sum_detailed(const BilinearGame& g) {
  require_zero_sum(g);
  const LpOutcome out = min_max_program(g.row_payoff(), g.row_constraints(), g.row_rhs(),
                                        g.col_constraints(), g.col_rhs());
  ZeroSumResult res;
  res.value = out.value;
  RatVector y(out.point.begin(), out.point.begin() + g.cols());
  RatVector x = out.ineq_duals;
  if (!in_row_strategies(g, x)) {
    x = zero_sum_maximin(g).first;
    res.used_fallback = true;
  }
  res.certificate = verify(g, {x, std::move(y)});
  if (!res.certificate.is_exact() && !res.used_fallback) {
    res.used_fallback = true;
    res.certificate = verify(g, {zero_sum_maximin(g).first, res.certificate.profile.y});
  }
  return res;
}

EquilibriumCertificate solve_zero_sum(const BilinearGame& g) {
  return solve_zero_sum_detailed(g).certificate;
}

}  // namespace bilinear
