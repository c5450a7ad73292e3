#include "bilinear/oracle.hpp"

#include <algorithm>
#include <set>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

// Calls visit(subset) for every k-subset of {0, ..., n-1} in lexicographic order.
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

}  // namespace

std::vector<RatVector> enumerate_vertices(const LinearProgram& system) {
  const std::size_t n = system.num_vars();
  const std::size_t eq_rank = system.eq.rows() == 0 ? 0 : matrix_rank(system.eq);
  const std::size_t need = n - eq_rank;

  // Candidate tight constraints: inequality rows, then nonnegative variables.
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t r = 0; r < system.ineq.rows(); ++r) {
    rows.push_back(system.ineq.row(r));
    rhs.push_back(system.ineq_rhs[r]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!system.nonneg[j]) continue;
    RatVector unit(n, Rational(0));
    unit[j] = 1;
    rows.push_back(std::move(unit));
    rhs.push_back(0);
  }

  std::set<RatVector> found;
  for_each_subset(rows.size(), need, [&](const std::vector<std::size_t>& subset) {
    RatMatrix m(system.eq.rows() + subset.size(), n);
    RatVector b;
    for (std::size_t r = 0; r < system.eq.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = system.eq(r, c);
      b.push_back(system.eq_rhs[r]);
    }
    for (std::size_t s = 0; s < subset.size(); ++s) {
      const std::size_t r = system.eq.rows() + s;
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[subset[s]][c];
      b.push_back(rhs[subset[s]]);
    }
    auto x = solve_unique(m, b);
    if (x && is_feasible(system, *x)) found.insert(std::move(*x));
  });
  return {found.begin(), found.end()};
}

std::vector<LabeledVertex> labeled_vertices(const BrpPolytope& brp) {
  std::vector<LabeledVertex> out;
  for (auto& v : enumerate_vertices(brp.system)) {
    auto labels = labels_at(brp, v);
    out.push_back({std::move(v), std::move(labels)});
  }
  return out;
}

std::vector<EquilibriumCertificate> brute_force_equilibria(const BilinearGame& g,
                                                           std::size_t limit) {
  const std::size_t M = g.rows(), N = g.cols();
  if (M + N + g.row_duals() + g.col_duals() > limit)
    throw Error(ErrorCode::kTooLarge, "game exceeds the oracle size limit");
  const auto pv = labeled_vertices(build_brp_P(g));
  const auto qv = labeled_vertices(build_brp_Q(g));
  std::set<StrategyProfile> profiles;
  for (const auto& v : pv)
    for (const auto& w : qv)
      if (is_fully_labeled(v.labels, w.labels, M, N))
        profiles.insert({RatVector(w.point.begin(), w.point.begin() + M),
                         RatVector(v.point.begin(), v.point.begin() + N)});
  std::vector<EquilibriumCertificate> out;
  for (const auto& s : profiles) out.push_back(verify(g, s));
  return out;
}

namespace {

// Mixed strategy over `support` making the opponent indifferent across
// `against`: solves sum_s m(a, s) z_s = u for a in against, sum z = 1.
std::optional<std::pair<RatVector, Rational>> indifference(
    const RatMatrix& m, const std::vector<std::size_t>& against,
    const std::vector<std::size_t>& support) {
  const std::size_t k = support.size();
  RatMatrix sys(k + 1, k + 1);
  RatVector rhs(k + 1, Rational(0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t s = 0; s < k; ++s) sys(a, s) = m(against[a], support[s]);
    sys(a, k) = -1;
  }
  for (std::size_t s = 0; s < k; ++s) sys(k, s) = 1;
  rhs[k] = 1;
  auto sol = solve_square(sys, rhs);
  if (!sol) return std::nullopt;
  Rational u = (*sol)[k];
  sol->pop_back();
  return std::make_pair(std::move(*sol), std::move(u));
}

}  // namespace

std::vector<StrategyProfile> bimatrix_support_enumeration(const RatMatrix& A, const RatMatrix& B) {
  const std::size_t M = A.rows(), N = A.cols();
  if (B.rows() != M || B.cols() != N)
    throw Error(ErrorCode::kDimensionMismatch, "A and B differ in shape");
  if (M > 6 || N > 6) throw Error(ErrorCode::kTooLarge, "support enumeration is limited to 6 x 6");
  const RatMatrix Bt = B.transpose();
  std::set<StrategyProfile> out;
  for (std::size_t k = 1; k <= std::min(M, N); ++k) {
    for_each_subset(M, k, [&](const std::vector<std::size_t>& I) {
      for_each_subset(N, k, [&](const std::vector<std::size_t>& J) {
        auto ys = indifference(A, I, J);   // column mix equalising rows in I
        auto xs = indifference(Bt, J, I);  // row mix equalising columns in J
        if (!ys || !xs) return;
        RatVector y(N, Rational(0)), x(M, Rational(0));
        for (std::size_t s = 0; s < k; ++s) {
          if (ys->first[s] < 0 || xs->first[s] < 0) return;
          y[J[s]] = ys->first[s];
          x[I[s]] = xs->first[s];
        }
        const RatVector ay = A * y;
        const RatVector bx = left_multiply(x, B);
        for (std::size_t i = 0; i < M; ++i)
          if (ay[i] > ys->second) return;
        for (std::size_t j = 0; j < N; ++j)
          if (bx[j] > xs->second) return;
        out.insert({std::move(x), std::move(y)});
      });
    });
  }
  return {out.begin(), out.end()};
}

}  // namespace bilinear
