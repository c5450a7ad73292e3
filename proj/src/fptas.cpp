#include "bilinear/fptas.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "bilinear/errors.hpp"
#include "bilinear/zerosum.hpp"

namespace bilinear {

namespace {

std::pair<Rational, Rational> range_over(const RatMatrix& cons, const RatVector& rhs,
                                         const RatVector& weights) {
  LinearProgram lp = LinearProgram::with_vars(cons.cols(), true);
  lp.objective = weights;
  lp.eq = cons;
  lp.eq_rhs = rhs;
  const Rational hi = solve_lp(lp).value;
  lp.sense = Sense::kMinimize;
  return {solve_lp(lp).value, hi};
}

RankDecomposition with_bounds(const BilinearGame& g, std::vector<RankOneTerm> terms) {
  RankDecomposition d;
  d.terms = std::move(terms);
  for (const auto& t : d.terms) {
    auto [wl, wh] = range_over(g.row_constraints(), g.row_rhs(), t.alpha);
    auto [zl, zh] = range_over(g.col_constraints(), g.col_rhs(), t.beta);
    d.w.push_back(wl);
    d.w_hi.push_back(wh);
    d.z.push_back(zl);
    d.z_hi.push_back(zh);
  }
  return d;
}

// One player's half of the cell program: the best-response polytope of the
// opponent's problem restricted to bands on the strategy.
//   side_x: min f^T q over Q with bands on x^T alpha(i)
//   else:   min e^T p over P with bands on beta(i)^T y
LinearProgram half_program(const BilinearGame& g, const RankDecomposition& dec, bool side_x,
                           std::span<const Rational> lo, std::span<const Rational> hi,
                           const Rational& dual_bound) {
  const BrpPolytope brp = side_x ? build_brp_Q(g) : build_brp_P(g);
  LinearProgram lp = brp.system;
  lp.sense = Sense::kMinimize;
  const std::size_t s = side_x ? g.rows() : g.cols();
  const RatVector& rhs = side_x ? g.col_rhs() : g.row_rhs();
  for (std::size_t r = 0; r < rhs.size(); ++r) lp.objective[s + r] = rhs[r];
  for (std::size_t i = 0; i < dec.k(); ++i) {
    RatVector row(lp.num_vars(), Rational(0));
    const RatVector& f = side_x ? dec.terms[i].alpha : dec.terms[i].beta;
    std::copy(f.begin(), f.end(), row.begin());
    lp.add_ineq(row, hi[i]);
    lp.add_ineq(scale(Rational(-1), row), -lo[i]);
  }
  if (dual_bound > 0)
    for (std::size_t r = 0; r < rhs.size(); ++r) {
      RatVector row(lp.num_vars(), Rational(0));
      row[s + r] = 1;
      lp.add_ineq(row, dual_bound);
      row[s + r] = -1;
      lp.add_ineq(row, dual_bound);
    }
  return lp;
}

using Intervals = std::vector<std::pair<Rational, Rational>>;

Intervals multiplicative(const Rational& lo, const Rational& hi, const Rational& ratio) {
  Intervals out;
  Rational a = lo;
  do {
    out.emplace_back(a, std::min(Rational(a * ratio), hi));
    a *= ratio;
  } while (a < hi);
  return out;
}

Intervals additive(const Rational& lo, const Rational& hi, const std::optional<Rational>& step) {
  if (!step || lo == hi) return {{lo, hi}};
  Intervals out;
  Rational a = lo;
  do {
    out.emplace_back(a, std::min(Rational(a + *step), hi));
    a += *step;
  } while (a < hi);
  return out;
}

// Cartesian product of per-axis intervals, last axis fastest.
std::vector<std::pair<RatVector, RatVector>> product(const std::vector<Intervals>& axes) {
  std::vector<std::pair<RatVector, RatVector>> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    RatVector lo, hi;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      lo.push_back(axes[i][idx[i]].first);
      hi.push_back(axes[i][idx[i]].second);
    }
    out.emplace_back(std::move(lo), std::move(hi));
    std::size_t i = axes.size();
    while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
    if (i == 0) return out;
  }
}

struct HalfResult {
  bool feasible = false;
  RatVector strategy;
  Rational response;  // opponent's best-response value against the strategy
  RatVector images;   // x^T alpha(i) or beta(i)^T y
};

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t c = 0; c < n; ++c) fn(c);
    return;
  }
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < n; c += t) fn(c);
    });
  for (auto& th : pool) th.join();
}

std::vector<HalfResult> solve_halves(const BilinearGame& g, const RankDecomposition& dec,
                                     bool side_x,
                                     const std::vector<std::pair<RatVector, RatVector>>& cells,
                                     const Rational& dual_bound, unsigned jobs) {
  std::vector<HalfResult> out(cells.size());
  const std::size_t s = side_x ? g.rows() : g.cols();
  parallel_for(cells.size(), jobs, [&](std::size_t c) {
    const auto lp = half_program(g, dec, side_x, cells[c].first, cells[c].second, dual_bound);
    const LpOutcome res = solve_lp(lp);
    if (!res.optimal()) return;
    HalfResult& h = out[c];
    h.feasible = true;
    h.strategy.assign(res.point.begin(), res.point.begin() + s);
    h.response = side_x ? best_response_col(g, h.strategy).value
                        : best_response_row(g, h.strategy).value;
    for (const auto& t : dec.terms) h.images.push_back(dot(h.strategy, side_x ? t.alpha : t.beta));
  });
  return out;
}

enum class Measure { kAbsolute, kRelative };

struct Search {
  FptasReport rep;
  std::optional<Rational> best;
  RatVector x, y;
};

// Solves every cell of one grid and keeps the candidate with the smallest
// exact error. The cell program separates: its optimum on a pair of bands is
// the pair of half optima, so pairs are scored without another LP.
void search_grid(const BilinearGame& g, const RankDecomposition& dec,
                 const std::vector<Intervals>& x_axes, const std::vector<Intervals>& y_axes,
                 const Rational& dual_bound, Measure measure, unsigned jobs, Search& s) {
  const auto xc = product(x_axes), yc = product(y_axes);
  const auto xs = solve_halves(g, dec, true, xc, dual_bound, jobs);
  const auto ys = solve_halves(g, dec, false, yc, dual_bound, jobs);
  s.rep.programs += xc.size() + yc.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!xs[i].feasible) continue;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (!ys[j].feasible) continue;
      ++s.rep.feasible_pairs;
      Rational payoff;
      for (std::size_t t = 0; t < dec.k(); ++t) payoff += xs[i].images[t] * ys[j].images[t];
      const Rational total = xs[i].response + ys[j].response;
      Rational score = total - payoff;
      if (measure == Measure::kRelative && score != 0) {
        if (total <= 0) continue;  // undefined relative error; never preferred
        score /= total;
      }
      if (!s.best || score < *s.best) {
        s.best = score;
        s.x = xs[i].strategy;
        s.y = ys[j].strategy;
      }
    }
  }
}

// Runs the grid at eps rounded down to a power of two and at every coarser
// power of two until the grid is a single cell. Candidate sets then grow as
// eps shrinks, so the returned error is monotone in eps.
template <class Axes>
FptasReport run_ladder(const BilinearGame& g, const RankDecomposition& dec, const Rational& eps,
                       const Rational& dual_bound, Measure measure, unsigned jobs, Axes&& axes) {
  Rational level(1);
  while (level > eps) level /= 2;
  while (level * 2 <= eps) level *= 2;
  Search s;
  s.rep.decomposition = dec;
  for (bool first = true;; first = false, level *= 2) {
    std::vector<Intervals> xa, ya;
    axes(level, xa, ya);
    std::size_t nx = 1, ny = 1;
    for (const auto& a : xa) nx *= a.size();
    for (const auto& a : ya) ny *= a.size();
    if (first) {
      s.rep.grid_eps = level;
      s.rep.x_cells = nx;
      s.rep.y_cells = ny;
    }
    search_grid(g, dec, xa, ya, dual_bound, measure, jobs, s);
    ++s.rep.levels;
    if (nx == 1 && ny == 1) break;
  }
  if (!s.best) throw std::logic_error("grid search found no scored cell");
  s.rep.certificate = verify(g, {s.x, s.y});
  return s.rep;
}

void check_eps(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
}

}  // namespace

bool RankDecomposition::is_positive() const {
  for (const auto& t : terms) {
    for (const auto& v : t.alpha)
      if (v <= 0) return false;
    for (const auto& v : t.beta)
      if (v <= 0) return false;
  }
  for (const auto& v : w)
    if (v <= 0) return false;
  for (const auto& v : z)
    if (v <= 0) return false;
  return true;
}

RankDecomposition rank_decomposition(const BilinearGame& g) {
  return with_bounds(g, rank_factorize(g.payoff_sum(), g.payoff_sum().rows()));
}

RankDecomposition rank_decomposition(const BilinearGame& g, std::vector<RankOneTerm> terms) {
  for (const auto& t : terms)
    if (t.alpha.size() != g.rows() || t.beta.size() != g.cols())
      throw Error(ErrorCode::kDimensionMismatch, "factor lengths differ from the game");
  if (reconstruct(terms, g.rows(), g.cols()) != g.payoff_sum())
    throw Error(ErrorCode::kDimensionMismatch, "factors do not reproduce A + B");
  return with_bounds(g, std::move(terms));
}

LpOutcome cell_lp(const BilinearGame& g, const RankDecomposition& dec, const GridCell& cell,
                  const Rational& dual_bound) {
  const LinearProgram P = half_program(g, dec, false, cell.y_lo, cell.y_hi, dual_bound);
  const LinearProgram Q = half_program(g, dec, true, cell.x_lo, cell.x_hi, dual_bound);
  LinearProgram lp = LinearProgram::with_vars(P.num_vars() + Q.num_vars(), false);
  lp.sense = Sense::kMinimize;
  lp.objective = concat(P.objective, Q.objective);
  lp.eq = block_diagonal({P.eq, Q.eq});
  lp.eq_rhs = concat(P.eq_rhs, Q.eq_rhs);
  lp.ineq = block_diagonal({P.ineq, Q.ineq});
  lp.ineq_rhs = concat(P.ineq_rhs, Q.ineq_rhs);
  for (std::size_t j = 0; j < P.num_vars(); ++j) lp.nonneg[j] = P.nonneg[j];
  for (std::size_t j = 0; j < Q.num_vars(); ++j) lp.nonneg[P.num_vars() + j] = Q.nonneg[j];
  return solve_lp(lp);
}

FptasReport fptas_relative(const BilinearGame& g, const Rational& eps,
                           const RankDecomposition& dec, const FptasOptions& opt) {
  check_eps(eps);
  if (!dec.is_positive())
    throw Error(ErrorCode::kNonPositiveDecomposition,
                "the relative scheme needs positive factors and positive lower bounds");
  auto axes = [&](const Rational& level, std::vector<Intervals>& xa, std::vector<Intervals>& ya) {
    for (std::size_t i = 0; i < dec.k(); ++i) {
      xa.push_back(multiplicative(dec.w[i], dec.w_hi[i], 1 + level));
      ya.push_back(multiplicative(dec.z[i], dec.z_hi[i], 1 + level));
    }
  };
  return run_ladder(g, dec, eps, 0, Measure::kRelative, opt.jobs, axes);
}

FptasReport fptas_relative(const BilinearGame& g, const Rational& eps, const FptasOptions& opt) {
  return fptas_relative(g, eps, rank_decomposition(g), opt);
}

FptasReport fptas_absolute(const BilinearGame& g, const Rational& eps,
                           const RankDecomposition& dec, const FptasOptions& opt) {
  check_eps(eps);
  const Rational d = g.payoff_sum().max_abs();
  if (d == 0) {
    FptasReport rep;
    rep.zero_sum = true;
    rep.certificate = solve_zero_sum(g);
    return rep;
  }
  const Rational K = g.x_max() * d * g.y_max();
  const Rational two_k(2 * static_cast<long>(dec.k()));
  auto axes = [&](const Rational& level, std::vector<Intervals>& xa, std::vector<Intervals>& ya) {
    for (std::size_t i = 0; i < dec.k(); ++i) {
      const Rational S = std::max(abs(dec.w[i]), abs(dec.w_hi[i]));
      const Rational T = std::max(abs(dec.z[i]), abs(dec.z_hi[i]));
      using Step = std::optional<Rational>;
      xa.push_back(additive(dec.w[i], dec.w_hi[i],
                            T == 0 ? Step() : Step(level * K / (two_k * T))));
      ya.push_back(additive(dec.z[i], dec.z_hi[i],
                            S == 0 ? Step() : Step(level * K / (two_k * S))));
    }
  };
  // Dual box -l! Z^l <= p, q <= l! Z^l.
  Rational z = std::max({g.row_payoff().max_abs(), g.col_payoff().max_abs(),
                         g.row_constraints().max_abs(), g.col_constraints().max_abs(),
                         max_abs(g.row_rhs()), max_abs(g.col_rhs()), Rational(1)});
  const std::size_t l = g.rows() + g.cols() + g.row_duals() + g.col_duals();
  const Rational bound(denominator_bound(Integer(z), l));
  return run_ladder(g, dec, eps, bound, Measure::kAbsolute, opt.jobs, axes);
}

FptasReport fptas_absolute(const BilinearGame& g, const Rational& eps, const FptasOptions& opt) {
  return fptas_absolute(g, eps, rank_decomposition(g), opt);
}

}  // namespace bilinear
