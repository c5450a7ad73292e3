#include "bilinear/rank1.hpp"

#include <cmath>

#include "bilinear/errors.hpp"
#include "bilinear/zerosum.hpp"

namespace bilinear {

RankOneSplit decompose_rank1(const BilinearGame& g) {
  if (game_rank(g) != 1) throw Error(ErrorCode::kNotRankOne, "rank of A + B is not one");
  auto terms = rank_factorize(g.payoff_sum(), 1);
  RankOneSplit s{std::move(terms[0].alpha), std::move(terms[0].beta)};
  const Integer lcm = denominator_lcm(s.beta);
  Integer content = 0;
  for (const auto& b : s.beta) {
    const Integer v = Integer(b * lcm);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rational factor = Rational(lcm) / content;
  for (const auto& b : s.beta)
    if (b != 0) {
      if (b < 0) factor = -factor;
      break;
    }
  for (auto& b : s.beta) b *= factor;
  for (auto& c : s.gamma) c /= factor;
  return s;
}

std::pair<Rational, Rational> gamma_bounds(const BilinearGame& g, std::span<const Rational> gamma) {
  LinearProgram lp = LinearProgram::with_vars(g.rows(), true);
  lp.objective.assign(gamma.begin(), gamma.end());
  lp.eq = g.row_constraints();
  lp.eq_rhs = g.row_rhs();
  const Rational hi = solve_lp(lp).value;
  lp.sense = Sense::kMinimize;
  return {solve_lp(lp).value, hi};
}

BrpPolytope build_brp_Qprime(const BilinearGame& g, std::span<const Rational> beta) {
  const std::size_t M = g.rows(), N = g.cols(), k2 = g.col_duals();
  const auto& A = g.row_payoff();
  const auto& F = g.col_constraints();
  BrpPolytope brp;
  brp.M = M;
  brp.N = N;
  LinearProgram& s = brp.system;
  s = LinearProgram::with_vars(M + 1 + k2, false);
  std::fill(s.nonneg.begin(), s.nonneg.begin() + M, 1);
  s.ineq = RatMatrix(N, M + 1 + k2);
  s.ineq_rhs.assign(N, Rational(0));
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < M; ++i) s.ineq(j, i) = -A(i, j);
    s.ineq(j, M) = beta[j];
    for (std::size_t r = 0; r < k2; ++r) s.ineq(j, M + 1 + r) = -F(r, j);
  }
  s.eq = RatMatrix(g.row_duals(), M + 1 + k2);
  for (std::size_t r = 0; r < g.row_duals(); ++r)
    for (std::size_t i = 0; i < M; ++i) s.eq(r, i) = g.row_constraints()(r, i);
  s.eq_rhs = g.row_rhs();
  for (std::size_t i = 0; i < M; ++i) brp.labels.push_back({true, i});
  for (std::size_t j = 0; j < N; ++j) brp.labels.push_back({false, j});
  return brp;
}

namespace {

JointLayout layout_of(const BilinearGame& g) {
  return {g.rows(), g.cols(), g.row_duals(), g.col_duals()};
}

}  // namespace

LinearProgram joint_system(const BilinearGame& g, std::span<const Rational> beta) {
  const JointLayout L = layout_of(g);
  const auto P = build_brp_P(g).system;
  const auto Q = build_brp_Qprime(g, beta).system;
  const std::size_t np = P.num_vars();
  LinearProgram s = LinearProgram::with_vars(L.size(), false);
  s.ineq = block_diagonal({P.ineq, Q.ineq});
  s.ineq_rhs = concat(P.ineq_rhs, Q.ineq_rhs);
  s.eq = block_diagonal({P.eq, Q.eq});
  s.eq_rhs = concat(P.eq_rhs, Q.eq_rhs);
  for (std::size_t j = 0; j < np; ++j) s.nonneg[j] = P.nonneg[j];
  for (std::size_t j = 0; j < Q.num_vars(); ++j) s.nonneg[np + j] = Q.nonneg[j];
  return s;
}

LinearProgram parametric_program(const BilinearGame& g, std::span<const Rational> beta,
                                 const Rational& a) {
  const JointLayout L = layout_of(g);
  LinearProgram lp = joint_system(g, beta);
  for (std::size_t j = 0; j < L.N; ++j) lp.objective[L.y() + j] = a * beta[j];
  for (std::size_t r = 0; r < L.k1; ++r) lp.objective[L.p() + r] = -g.row_rhs()[r];
  for (std::size_t r = 0; r < L.k2; ++r) lp.objective[L.q() + r] = -g.col_rhs()[r];
  RatVector row(L.size(), Rational(0));
  row[L.lambda()] = 1;
  lp.add_eq(row, a);
  return lp;
}

LpOutcome parametric_lp(const BilinearGame& g, std::span<const Rational> beta, const Rational& a) {
  return solve_lp(parametric_program(g, beta, a));
}

namespace {

PathPoint make_point(const JointLayout& L, const RatVector& z) {
  PathPoint pt;
  pt.v.assign(z.begin(), z.begin() + L.x());
  pt.w.assign(z.begin() + L.x(), z.end());
  pt.lambda = z[L.lambda()];
  return pt;
}

std::optional<Rational> lambda_extreme(const LinearProgram& face, const JointLayout& L,
                                       Sense sense) {
  LinearProgram lp = face;
  lp.objective.assign(L.size(), Rational(0));
  lp.objective[L.lambda()] = 1;
  lp.sense = sense;
  LpOutcome out = solve_lp(lp);
  if (!out.optimal()) return std::nullopt;
  return out.value;
}

PathPoint face_at(const BilinearGame& g, std::span<const Rational> beta, const Rational& a) {
  const JointLayout L = layout_of(g);
  const OptimalFace of = optimal_face(parametric_program(g, beta, a));
  if (of.outcome.value != 0)
    throw Error(ErrorCode::kDegenerateGame, "parametric optimum at " + to_string(a) + " is " +
                                                to_string(of.outcome.value));
  PathPoint pt = make_point(L, of.outcome.point);
  pt.tight = of.always_tight;
  const LinearProgram joint = joint_system(g, beta);
  pt.dimension = face_dimension(joint, pt.tight);
  const LinearProgram face = restrict_to_face(joint, pt.tight);
  pt.lambda_lo = lambda_extreme(face, L, Sense::kMinimize);
  pt.lambda_hi = lambda_extreme(face, L, Sense::kMaximize);
  return pt;
}

Rational h_value(const JointLayout& L, const PathPoint& pt, std::span<const Rational> gamma) {
  return pt.lambda - dot(gamma, std::span(pt.w).first(L.M));
}

}  // namespace

PathPoint edge_at(const BilinearGame& g, std::span<const Rational> beta, const Rational& a) {
  PathPoint pt = face_at(g, beta, a);
  if (pt.dimension > 1)
    throw Error(ErrorCode::kDegenerateFace,
                "face at " + to_string(a) + " has dimension " + std::to_string(pt.dimension));
  return pt;
}

std::optional<PathPoint> intersect_with_hplane(const BilinearGame& g,
                                               std::span<const Rational> beta,
                                               const PathPoint& edge,
                                               std::span<const Rational> gamma) {
  const JointLayout L = layout_of(g);
  LinearProgram lp = restrict_to_face(joint_system(g, beta), edge.tight);
  RatVector row(L.size(), Rational(0));
  row[L.lambda()] = 1;
  for (std::size_t i = 0; i < L.M; ++i) row[L.x() + i] = -gamma[i];
  lp.add_eq(row, 0);
  const LpOutcome out = solve_lp(lp);
  if (!out.optimal()) return std::nullopt;
  PathPoint pt = make_point(L, out.point);
  pt.tight = edge.tight;
  pt.dimension = edge.dimension;
  pt.lambda_lo = edge.lambda_lo;
  pt.lambda_hi = edge.lambda_hi;
  return pt;
}

namespace {

// Simplest rational strictly between lo < hi, by continued fractions.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl + 1) < hi) return Rational(fl + 1);
  const Rational flo = lo - Rational(fl), fhi = hi - Rational(fl);
  if (flo == 0) {
    Integer t;
    const Rational inv = 1 / fhi;
    mpz_fdiv_q(t.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    return Rational(fl) + 1 / Rational(t + 1);
  }
  return Rational(fl) + 1 / simplest_between(1 / fhi, 1 / flo);
}

}  // namespace

Rank1Report solve_rank1_detailed(const BilinearGame& g) {
  Rank1Report rep;
  const std::size_t rank = game_rank(g);
  if (rank == 0) {
    rep.zero_sum = true;
    rep.certificate = solve_zero_sum(g);
    return rep;
  }
  rep.split = decompose_rank1(g);
  const auto& gamma = rep.split.gamma;
  const auto& beta = rep.split.beta;
  std::tie(rep.gamma_min, rep.gamma_max) = gamma_bounds(g, gamma);
  const JointLayout L = layout_of(g);

  // Delta = l! Z^l bounds every vertex denominator of the joint system.
  Rational z = std::max({g.row_payoff().max_abs(), g.row_constraints().max_abs(),
                         g.col_constraints().max_abs(), max_abs(g.row_rhs()),
                         max_abs(g.col_rhs()), max_abs(gamma), max_abs(beta), Rational(1)});
  const std::size_t l = L.M + L.N + L.k1 + L.k2 + 1;
  const Integer delta = denominator_bound(Integer(z), l);
  const Rational width = rep.gamma_max - rep.gamma_min;
  rep.iteration_bound = (width > 0 ? log2_of(width) : 0.0) + 2 * log2_of(delta) + 1;

  auto finish = [&](const PathPoint& pt) {
    StrategyProfile s{RatVector(pt.w.begin(), pt.w.begin() + L.M),
                      RatVector(pt.v.begin(), pt.v.begin() + L.N)};
    const EquilibriumCertificate found = verify(g, s);
    if (!found.is_exact())
      throw std::logic_error("rank-1 intersection point is not an equilibrium");
    rep.certificate = snap_to_extreme(g, found);
    return rep;
  };
  // Returns the intersection if the face at a meets H_gamma, else records the side.
  auto probe = [&](const Rational& a, int& side) -> std::optional<PathPoint> {
    const PathPoint face = face_at(g, beta, a);
    if (auto hit = intersect_with_hplane(g, beta, face, gamma)) {
      side = 0;
      return hit;
    }
    side = h_value(L, face, gamma) < 0 ? -1 : 1;
    return std::nullopt;
  };

  int side = 0;
  if (auto hit = probe(rep.gamma_min, side)) return finish(*hit);
  if (auto hit = probe(rep.gamma_max, side)) return finish(*hit);

  Rational a1 = rep.gamma_min, a2 = rep.gamma_max;
  const Rational guard = 1 / Rational(delta * delta);
  while (a2 - a1 >= guard) {
    Rank1Step step;
    step.lo = a1;
    step.hi = a2;
    step.a = (a1 + a2) / 2;
    const PathPoint face = face_at(g, beta, step.a);
    step.edge_lo = face.lambda_lo;
    step.edge_hi = face.lambda_hi;
    step.face_dimension = face.dimension;
    ++rep.iterations;
    auto hit = intersect_with_hplane(g, beta, face, gamma);
    step.side = hit ? 0 : (h_value(L, face, gamma) < 0 ? -1 : 1);
    rep.steps.push_back(step);
    if (hit) return finish(*hit);
    if (step.side < 0) a1 = step.a;
    else a2 = step.a;
  }

  // Bisection narrowed below 1/Delta^2 without meeting H_gamma: only possible
  // on degenerate paths. Probe the edge ends next to the bracket and the
  // simplest rational inside it.
  std::vector<Rational> extra;
  const PathPoint f1 = face_at(g, beta, a1), f2 = face_at(g, beta, a2);
  if (f1.lambda_hi && *f1.lambda_hi > a1 && *f1.lambda_hi < a2) extra.push_back(*f1.lambda_hi);
  if (f2.lambda_lo && *f2.lambda_lo > a1 && *f2.lambda_lo < a2) extra.push_back(*f2.lambda_lo);
  if (a1 < a2) extra.push_back(simplest_between(a1, a2));
  for (const auto& a : extra) {
    ++rep.fallback_probes;
    if (auto hit = probe(a, side)) return finish(*hit);
  }
  throw Error(ErrorCode::kDegenerateGame, "bisection over lambda did not meet H_gamma");
}

EquilibriumCertificate solve_rank1(const BilinearGame& g) {
  return solve_rank1_detailed(g).certificate;
}

}  // namespace bilinear
