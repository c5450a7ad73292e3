#include "bilinear/game.hpp"

#include <algorithm>
#include <string>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kDimensionMismatch, what);
}

std::size_t bits(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

// Scales each row of [m | rhs] by the lcm of its denominators.
void integralize_rows(RatMatrix& m, RatVector& rhs) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RatVector vals = m.row(r);
    vals.push_back(rhs[r]);
    const Rational s(denominator_lcm(vals));
    if (s == 1) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= s;
    rhs[r] *= s;
  }
}

// Drops rows of m dependent on earlier ones; compactness (hence consistency)
// is checked beforehand so the matching rhs entries are implied.
std::vector<std::size_t> drop_dependent(RatMatrix& m, RatVector& rhs) {
  const auto keep = independent_rows(m);
  std::vector<std::size_t> dropped;
  for (std::size_t r = 0, k = 0; r < m.rows(); ++r) {
    if (k < keep.size() && keep[k] == r) ++k;
    else dropped.push_back(r);
  }
  if (dropped.empty()) return dropped;
  RatVector kept_rhs;
  for (auto r : keep) kept_rhs.push_back(rhs[r]);
  m = m.select_rows(keep);
  rhs = std::move(kept_rhs);
  return dropped;
}

void check_polytope(const RatMatrix& m, const RatVector& rhs, const char* who) {
  switch (is_polytope_compact(m, rhs)) {
    case PolytopeStatus::kCompact: return;
    case PolytopeStatus::kEmpty:
      throw Error(ErrorCode::kEmptyStrategySet, std::string(who) + " strategy set is empty");
    case PolytopeStatus::kUnbounded:
      throw Error(ErrorCode::kNonCompactStrategySet,
                  std::string(who) + " strategy set is unbounded");
  }
}

Rational max_total(const RatMatrix& m, const RatVector& rhs) {
  LinearProgram lp = LinearProgram::with_vars(m.cols(), true);
  lp.objective.assign(m.cols(), Rational(1));
  lp.eq = m;
  lp.eq_rhs = rhs;
  return solve_lp(lp).value;
}

LinearProgram strategy_program(const RatMatrix& m, const RatVector& rhs) {
  LinearProgram lp = LinearProgram::with_vars(m.cols(), true);
  lp.eq = m;
  lp.eq_rhs = rhs;
  return lp;
}

bool in_polytope(const RatMatrix& m, const RatVector& rhs, std::span<const Rational> z) {
  if (z.size() != m.cols()) return false;
  for (const auto& v : z)
    if (v < 0) return false;
  return m * z == rhs;
}

BestResponse best_response(const RatMatrix& m, const RatVector& rhs, RatVector gains) {
  LinearProgram lp = strategy_program(m, rhs);
  lp.objective = std::move(gains);
  LpOutcome out = solve_lp(lp);
  // Compact and nonempty by validation.
  return {out.value, std::move(out.point), std::move(out.eq_duals)};
}

}  // namespace

BilinearGame validate(const GameData& raw) {
  const std::size_t M = raw.A.rows(), N = raw.A.cols();
  require(M > 0 && N > 0, "payoff matrices must be nonempty");
  require(raw.B.rows() == M && raw.B.cols() == N, "A and B differ in shape");
  require(raw.E.cols() == M || (raw.E.rows() == 0 && raw.E.cols() == 0),
          "E must have one column per row strategy");
  require(raw.F.cols() == N || (raw.F.rows() == 0 && raw.F.cols() == 0),
          "F must have one column per column strategy");
  require(raw.e.size() == raw.E.rows(), "e length differs from rows of E");
  require(raw.f.size() == raw.F.rows(), "f length differs from rows of F");

  BilinearGame g;
  RatVector payoffs = raw.A.entries();
  payoffs.insert(payoffs.end(), raw.B.entries().begin(), raw.B.entries().end());
  g.payoff_scale_ = Rational(denominator_lcm(payoffs));
  g.a_ = g.payoff_scale_ * raw.A;
  g.b_ = g.payoff_scale_ * raw.B;

  g.e_mat_ = raw.E.rows() == 0 ? RatMatrix(0, M) : raw.E;
  g.f_mat_ = raw.F.rows() == 0 ? RatMatrix(0, N) : raw.F;
  g.e_ = raw.e;
  g.f_ = raw.f;
  integralize_rows(g.e_mat_, g.e_);
  integralize_rows(g.f_mat_, g.f_);
  check_polytope(g.e_mat_, g.e_, "row player");
  check_polytope(g.f_mat_, g.f_, "column player");
  g.dropped_e_ = drop_dependent(g.e_mat_, g.e_);
  g.dropped_f_ = drop_dependent(g.f_mat_, g.f_);

  g.sum_ = g.a_ + g.b_;
  g.x_max_ = max_total(g.e_mat_, g.e_);
  g.y_max_ = max_total(g.f_mat_, g.f_);
  for (const auto* m : {&g.a_, &g.b_, &g.e_mat_, &g.f_mat_})
    for (const auto& v : m->entries()) g.bit_length_ += bits(v);
  for (const auto& v : g.e_) g.bit_length_ += bits(v);
  for (const auto& v : g.f_) g.bit_length_ += bits(v);
  return g;
}

std::size_t game_rank(const BilinearGame& g) { return matrix_rank(g.payoff_sum()); }

bool in_row_strategies(const BilinearGame& g, std::span<const Rational> x) {
  return in_polytope(g.row_constraints(), g.row_rhs(), x);
}

bool in_col_strategies(const BilinearGame& g, std::span<const Rational> y) {
  return in_polytope(g.col_constraints(), g.col_rhs(), y);
}

BestResponse best_response_row(const BilinearGame& g, std::span<const Rational> y) {
  if (!in_col_strategies(g, y))
    throw Error(ErrorCode::kInfeasibleStrategy, "y is not a column-player strategy");
  return best_response(g.row_constraints(), g.row_rhs(), g.row_payoff() * y);
}

BestResponse best_response_col(const BilinearGame& g, std::span<const Rational> x) {
  if (!in_row_strategies(g, x))
    throw Error(ErrorCode::kInfeasibleStrategy, "x is not a row-player strategy");
  return best_response(g.col_constraints(), g.col_rhs(), left_multiply(x, g.col_payoff()));
}

EquilibriumCertificate verify(const BilinearGame& g, const StrategyProfile& profile) {
  if (!in_row_strategies(g, profile.x))
    throw Error(ErrorCode::kInfeasibleStrategy, "x is not a row-player strategy");
  if (!in_col_strategies(g, profile.y))
    throw Error(ErrorCode::kInfeasibleStrategy, "y is not a column-player strategy");
  EquilibriumCertificate c;
  c.profile = profile;
  BestResponse row = best_response_row(g, profile.y);
  BestResponse col = best_response_col(g, profile.x);
  c.p = std::move(row.dual);
  c.q = std::move(col.dual);
  c.row_value = row.value;
  c.col_value = col.value;
  c.payoff_total = bilinear_form(profile.x, g.payoff_sum(), profile.y);
  const Rational gap = c.row_value + c.col_value - c.payoff_total;
  c.qp_residual = dot(g.row_rhs(), c.p) + dot(g.col_rhs(), c.q) - c.payoff_total;

  const Rational d = g.payoff_sum().max_abs();
  c.degenerate_scale = d == 0;
  const Rational scale = std::max(Rational(g.x_max() * d * g.y_max()), Rational(1));
  c.abs_eps = gap / scale;

  const Rational total = c.row_value + c.col_value;
  if (gap == 0) c.rel_eps = Rational(0);
  else if (total > 0) c.rel_eps = gap / total;
  return c;
}

// ---------------------------------------------------------------------------

std::size_t BrpPolytope::dimension() const {
  return num_vars() - (system.eq.rows() == 0 ? 0 : matrix_rank(system.eq));
}

std::optional<std::size_t> BrpPolytope::label_of_row(std::size_t r) const {
  for (std::size_t l = 0; l < labels.size(); ++l)
    if (!labels[l].is_variable && labels[l].index == r) return l + 1;
  return std::nullopt;
}

std::optional<std::size_t> BrpPolytope::label_of_variable(std::size_t j) const {
  for (std::size_t l = 0; l < labels.size(); ++l)
    if (labels[l].is_variable && labels[l].index == j) return l + 1;
  return std::nullopt;
}

std::vector<std::size_t> BrpPolytope::labels_of(const TightSet& tight) const {
  std::vector<std::size_t> out;
  for (auto r : tight.inequalities)
    if (auto l = label_of_row(r)) out.push_back(*l);
  for (auto j : tight.zero_variables)
    if (auto l = label_of_variable(j)) out.push_back(*l);
  std::sort(out.begin(), out.end());
  return out;
}

BrpPolytope build_brp_P(const BilinearGame& g) {
  const std::size_t M = g.rows(), N = g.cols(), k1 = g.row_duals();
  const auto& A = g.row_payoff();
  const auto& E = g.row_constraints();
  BrpPolytope brp;
  brp.M = M;
  brp.N = N;
  LinearProgram& s = brp.system;
  s = LinearProgram::with_vars(N + k1, false);
  std::fill(s.nonneg.begin(), s.nonneg.begin() + N, 1);
  s.ineq = RatMatrix(M, N + k1);
  s.ineq_rhs.assign(M, Rational(0));
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < N; ++j) s.ineq(i, j) = A(i, j);
    for (std::size_t r = 0; r < k1; ++r) s.ineq(i, N + r) = -E(r, i);
  }
  s.eq = RatMatrix(g.col_duals(), N + k1);
  for (std::size_t r = 0; r < g.col_duals(); ++r)
    for (std::size_t j = 0; j < N; ++j) s.eq(r, j) = g.col_constraints()(r, j);
  s.eq_rhs = g.col_rhs();
  for (std::size_t i = 0; i < M; ++i) brp.labels.push_back({false, i});
  for (std::size_t j = 0; j < N; ++j) brp.labels.push_back({true, j});
  return brp;
}

BrpPolytope build_brp_Q(const BilinearGame& g) {
  const std::size_t M = g.rows(), N = g.cols(), k2 = g.col_duals();
  const auto& B = g.col_payoff();
  const auto& F = g.col_constraints();
  BrpPolytope brp;
  brp.M = M;
  brp.N = N;
  LinearProgram& s = brp.system;
  s = LinearProgram::with_vars(M + k2, false);
  std::fill(s.nonneg.begin(), s.nonneg.begin() + M, 1);
  s.ineq = RatMatrix(N, M + k2);
  s.ineq_rhs.assign(N, Rational(0));
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < M; ++i) s.ineq(j, i) = B(i, j);
    for (std::size_t r = 0; r < k2; ++r) s.ineq(j, M + r) = -F(r, j);
  }
  s.eq = RatMatrix(g.row_duals(), M + k2);
  for (std::size_t r = 0; r < g.row_duals(); ++r)
    for (std::size_t i = 0; i < M; ++i) s.eq(r, i) = g.row_constraints()(r, i);
  s.eq_rhs = g.row_rhs();
  for (std::size_t i = 0; i < M; ++i) brp.labels.push_back({true, i});
  for (std::size_t j = 0; j < N; ++j) brp.labels.push_back({false, j});
  return brp;
}

std::vector<std::size_t> labels_at(const BrpPolytope& brp, std::span<const Rational> point) {
  if (point.size() != brp.num_vars() || !is_feasible(brp.system, point))
    throw Error(ErrorCode::kPointNotInPolytope, "point violates the polytope");
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < brp.labels.size(); ++l) {
    const auto& src = brp.labels[l];
    const bool tight = src.is_variable
                           ? point[src.index] == 0
                           : dot(brp.system.ineq.row_span(src.index), point) ==
                                 brp.system.ineq_rhs[src.index];
    if (tight) out.push_back(l + 1);
  }
  return out;
}

bool is_fully_labeled(std::span<const std::size_t> v_labels,
                      std::span<const std::size_t> w_labels, std::size_t M, std::size_t N) {
  std::vector<char> seen(M + N + 1, 0);
  for (auto l : v_labels)
    if (l >= 1 && l <= M + N) seen[l] = 1;
  for (auto l : w_labels)
    if (l >= 1 && l <= M + N) seen[l] = 1;
  return std::all_of(seen.begin() + 1, seen.end(), [](char c) { return c != 0; });
}

bool is_degenerate_point(const BrpPolytope& brp, std::span<const Rational> point) {
  return labels_at(brp, point).size() > brp.dimension();
}

Rational qp_objective(const BilinearGame& g, std::span<const Rational> x,
                      std::span<const Rational> y, std::span<const Rational> p,
                      std::span<const Rational> q) {
  const RatVector v = concat(y, p);
  const RatVector w = concat(x, q);
  if (y.size() != g.cols() || p.size() != g.row_duals() ||
      !is_feasible(build_brp_P(g).system, v))
    throw Error(ErrorCode::kPointNotInPolytope, "(y, p) is not in P");
  if (x.size() != g.rows() || q.size() != g.col_duals() ||
      !is_feasible(build_brp_Q(g).system, w))
    throw Error(ErrorCode::kPointNotInPolytope, "(x, q) is not in Q");
  return bilinear_form(x, g.payoff_sum(), y) - dot(g.row_rhs(), p) - dot(g.col_rhs(), q);
}

BilinearGame symmetrize(const BilinearGame& g) {
  const std::size_t M = g.rows(), N = g.cols();
  const RatMatrix a = block(RatMatrix(M, M), g.row_payoff(), g.col_payoff().transpose(),
                            RatMatrix(N, N));
  const RatMatrix e = block_diagonal({g.row_constraints(), g.col_constraints()});
  const RatVector rhs = concat(g.row_rhs(), g.col_rhs());
  return validate({a, a.transpose(), e, e, rhs, rhs});
}

StrategyProfile split_symmetric(const BilinearGame& g, std::span<const Rational> z) {
  if (z.size() != g.rows() + g.cols())
    throw Error(ErrorCode::kDimensionMismatch, "symmetric strategy has the wrong length");
  return {RatVector(z.begin(), z.begin() + g.rows()), RatVector(z.begin() + g.rows(), z.end())};
}

bool is_symmetric(const BilinearGame& g) {
  return g.rows() == g.cols() && g.col_payoff() == g.row_payoff().transpose() &&
         g.row_constraints() == g.col_constraints() && g.row_rhs() == g.col_rhs();
}

bool satisfies_lemke_termination(const BilinearGame& g) {
  for (const auto* m : {&g.row_payoff(), &g.col_payoff()})
    for (const auto& v : m->entries())
      if (v > 0) return false;
  auto trivial_cone = [](const RatMatrix& m) {
    return is_polytope_compact(m, RatVector(m.rows(), Rational(0))) == PolytopeStatus::kCompact;
  };
  return trivial_cone(g.row_constraints()) && trivial_cone(g.col_constraints());
}

}  // namespace bilinear

namespace bilinear {

EquilibriumCertificate snap_to_extreme(const BilinearGame& g, const EquilibriumCertificate& c) {
  if (!c.is_exact()) return c;
  const BrpPolytope P = build_brp_P(g), Q = build_brp_Q(g);
  const RatVector v = concat(c.profile.y, c.p), w = concat(c.profile.x, c.q);
  const auto lv = labels_at(P, v), lw = labels_at(Q, w);
  if (!is_fully_labeled(lv, lw, g.rows(), g.cols())) return c;

  const std::size_t np = P.num_vars();
  LinearProgram joint = LinearProgram::with_vars(np + Q.num_vars(), false);
  joint.ineq = block_diagonal({P.system.ineq, Q.system.ineq});
  joint.ineq_rhs = concat(P.system.ineq_rhs, Q.system.ineq_rhs);
  joint.eq = block_diagonal({P.system.eq, Q.system.eq});
  joint.eq_rhs = concat(P.system.eq_rhs, Q.system.eq_rhs);
  for (std::size_t j = 0; j < np; ++j) joint.nonneg[j] = P.system.nonneg[j];
  for (std::size_t j = 0; j < Q.num_vars(); ++j) joint.nonneg[np + j] = Q.system.nonneg[j];

  TightSet tight;
  auto add = [&](const LabelSource& src, std::size_t var_off, std::size_t row_off) {
    if (src.is_variable) tight.zero_variables.push_back(var_off + src.index);
    else tight.inequalities.push_back(row_off + src.index);
  };
  for (auto l : lv) add(P.labels[l - 1], 0, 0);
  for (auto l : lw) add(Q.labels[l - 1], np, P.system.ineq.rows());
  const RatVector z = move_to_vertex(restrict_to_face(joint, tight), concat(v, w));
  StrategyProfile s{RatVector(z.begin() + np, z.begin() + np + g.rows()),
                    RatVector(z.begin(), z.begin() + g.cols())};
  EquilibriumCertificate snapped = verify(g, s);
  return snapped.is_exact() ? snapped : c;
}

}  // namespace bilinear
