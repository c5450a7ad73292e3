#include "bilinear/lp.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "bilinear/errors.hpp"

namespace bilinear {

LinearProgram LinearProgram::with_vars(std::size_t n, bool nonnegative) {
  LinearProgram lp;
  lp.objective.assign(n, Rational(0));
  lp.eq = RatMatrix(0, n);
  lp.ineq = RatMatrix(0, n);
  lp.nonneg.assign(n, nonnegative ? 1 : 0);
  return lp;
}

void LinearProgram::add_eq(std::span<const Rational> row, const Rational& rhs) {
  if (row.size() != num_vars()) throw Error(ErrorCode::kMalformedProgram, "equality width");
  eq = vstack(eq.rows() == 0 ? RatMatrix(0, num_vars()) : eq,
              RatMatrix::from_rows({RatVector(row.begin(), row.end())}, num_vars()));
  eq_rhs.push_back(rhs);
}

void LinearProgram::add_ineq(std::span<const Rational> row, const Rational& rhs) {
  if (row.size() != num_vars()) throw Error(ErrorCode::kMalformedProgram, "inequality width");
  ineq = vstack(ineq.rows() == 0 ? RatMatrix(0, num_vars()) : ineq,
                RatMatrix::from_rows({RatVector(row.begin(), row.end())}, num_vars()));
  ineq_rhs.push_back(rhs);
}

namespace {

void check_dimensions(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kMalformedProgram, what); };
  if (lp.nonneg.size() != n) bad("nonneg mask size");
  if (lp.eq.rows() != lp.eq_rhs.size()) bad("equality rhs size");
  if (lp.ineq.rows() != lp.ineq_rhs.size()) bad("inequality rhs size");
  if (lp.eq.rows() > 0 && lp.eq.cols() != n) bad("equality width");
  if (lp.ineq.rows() > 0 && lp.ineq.cols() != n) bad("inequality width");
}

// Dense simplex tableau B^{-1}[A | b] with the reduced-cost row kept in
// `obj` (obj[rhs] holds minus the objective value).
struct Tableau {
  std::size_t width = 0;  // number of columns, rhs stored at index width
  std::vector<RatVector> rows;
  RatVector obj;
  std::vector<std::size_t> basis;
  std::vector<char> barred;     // columns that may never enter
  std::vector<char> redundant;  // rows that are identically zero off artificials
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    RatVector& pr = rows[r];
    if (pr[c] != 1) {
      const Rational inv = 1 / pr[c];
      for (auto& v : pr)
        if (v != 0) v *= inv;
    }
    std::vector<std::size_t> nz;
    nz.reserve(width + 1);
    for (std::size_t j = 0; j <= width; ++j)
      if (pr[j] != 0) nz.push_back(j);
    Rational f;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      f = rows[i][c];
      RatVector& ri = rows[i];
      for (std::size_t j : nz) ri[j] -= f * pr[j];
    }
    if (obj[c] != 0) {
      f = obj[c];
      for (std::size_t j : nz) obj[j] -= f * pr[j];
    }
    basis[r] = c;
    ++pivots;
  }

  bool basis_degenerate() const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!redundant[i] && rows[i][width] == 0) return true;
    return false;
  }

  // Largest reduced cost while the basis is nondegenerate, Bland's
  // lowest-index rule otherwise. A cycle consists of degenerate pivots only,
  // and those all follow Bland's rule, so the method terminates.
  std::optional<std::size_t> entering() const {
    const bool bland = basis_degenerate();
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < width; ++j) {
      if (barred[j] || obj[j] <= 0) continue;
      if (bland) return j;
      if (!best || obj[j] > obj[*best]) best = j;
    }
    return best;
  }

  // Minimum ratio; ties go to the lowest basic column index.
  std::optional<std::size_t> leaving(std::size_t c) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (redundant[i] || rows[i][c] <= 0) continue;
      if (!best) {
        best = i;
        continue;
      }
      const Rational lhs = rows[i][width] * rows[*best][c];
      const Rational rhs = rows[*best][width] * rows[i][c];
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[*best])) best = i;
    }
    return best;
  }

  // Returns false if unbounded.
  bool run() {
    for (;;) {
      auto c = entering();
      if (!c) return true;
      auto r = leaving(*c);
      if (!r) return false;
      pivot(*r, *c);
    }
  }

  void set_costs(std::span<const Rational> costs) {
    obj.assign(width + 1, Rational(0));
    for (std::size_t j = 0; j < width; ++j) obj[j] = costs[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = costs[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width; ++j)
        if (rows[i][j] != 0) obj[j] -= cb * rows[i][j];
    }
  }
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  check_dimensions(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t n_eq = lp.eq.rows();
  const std::size_t n_ineq = lp.ineq.rows();
  const std::size_t m = n_eq + n_ineq;

  // Column layout: structural (+ then - part for free variables), slacks,
  // artificials.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus_col[j] = col++;
    if (!lp.nonneg[j]) minus_col[j] = col++;
  }
  const std::size_t n_struct = col;
  const std::size_t slack0 = n_struct;
  col += n_ineq;

  std::vector<int> sign(m, 1);
  std::vector<std::size_t> art_col(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r) {
    const Rational& rhs = r < n_eq ? lp.eq_rhs[r] : lp.ineq_rhs[r - n_eq];
    if (rhs < 0) sign[r] = -1;
    if (r < n_eq || sign[r] < 0) art_col[r] = col++;
  }
  const std::size_t n_art_begin = slack0 + n_ineq;

  Tableau t;
  t.width = col;
  t.rows.assign(m, RatVector(col + 1));
  t.basis.assign(m, 0);
  t.barred.assign(col, 0);
  t.redundant.assign(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    RatVector& row = t.rows[r];
    const bool is_eq = r < n_eq;
    const std::size_t src = is_eq ? r : r - n_eq;
    const RatMatrix& a = is_eq ? lp.eq : lp.ineq;
    const Rational s(sign[r]);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a(src, j);
      if (v == 0) continue;
      row[plus_col[j]] = s * v;
      if (minus_col[j] != SIZE_MAX) row[minus_col[j]] = -s * v;
    }
    if (!is_eq) row[slack0 + src] = s;
    row[col] = s * (is_eq ? lp.eq_rhs[src] : lp.ineq_rhs[src]);
    if (art_col[r] != SIZE_MAX) {
      row[art_col[r]] = 1;
      t.basis[r] = art_col[r];
      t.barred[art_col[r]] = 1;
    } else {
      t.basis[r] = slack0 + src;
    }
  }

  LpOutcome out;

  // Phase 1: maximise -sum(artificials).
  RatVector costs(col);
  bool any_art = false;
  for (std::size_t r = 0; r < m; ++r)
    if (art_col[r] != SIZE_MAX) {
      costs[art_col[r]] = -1;
      any_art = true;
    }
  if (any_art) {
    t.set_costs(costs);
    t.run();  // bounded above by 0
    if (t.obj[col] != 0) {  // -value > 0 means some artificial stays positive
      out.status = LpStatus::kInfeasible;
      out.pivots = t.pivots;
      return out;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis[r] < n_art_begin) continue;
      std::optional<std::size_t> c;
      for (std::size_t j = 0; j < n_art_begin; ++j)
        if (t.rows[r][j] != 0) {
          c = j;
          break;
        }
      if (c) {
        t.pivot(r, *c);
      } else {
        t.redundant[r] = 1;
        out.redundant_eq_rows.push_back(r);
      }
    }
  }

  // Phase 2.
  std::fill(costs.begin(), costs.end(), Rational(0));
  const bool maximize = lp.sense == Sense::kMaximize;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational c = maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    costs[plus_col[j]] = c;
    if (minus_col[j] != SIZE_MAX) costs[minus_col[j]] = -c;
  }
  t.set_costs(costs);
  const bool bounded = t.run();
  out.pivots = t.pivots;
  if (!bounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  RatVector std_x(col);
  for (std::size_t r = 0; r < m; ++r) std_x[t.basis[r]] = t.rows[r][col];
  out.point.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    out.point[j] = std_x[plus_col[j]];
    if (minus_col[j] != SIZE_MAX) out.point[j] -= std_x[minus_col[j]];
  }
  out.status = LpStatus::kOptimal;
  out.value = dot(lp.objective, out.point);

  // Duals of the sign-normalised rows come from the identity columns:
  // reduced cost of a zero-cost unit column e_r is -y_r.
  out.eq_duals.assign(n_eq, Rational(0));
  out.ineq_duals.assign(n_ineq, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t id = art_col[r] != SIZE_MAX ? art_col[r] : slack0 + (r - n_eq);
    const Rational y = -t.obj[id] * sign[r];
    if (r < n_eq) out.eq_duals[r] = y;
    else out.ineq_duals[r - n_eq] = y;
  }
  const RatVector c_max = maximize ? lp.objective : scale(Rational(-1), lp.objective);
  out.reduced_costs.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational acc = -c_max[j];
    for (std::size_t r = 0; r < n_eq; ++r) acc += lp.eq(r, j) * out.eq_duals[r];
    for (std::size_t r = 0; r < n_ineq; ++r) acc += lp.ineq(r, j) * out.ineq_duals[r];
    out.reduced_costs[j] = acc;
  }

  // Certificate: dual feasibility and strong duality, exactly.
  Rational dual_value = dot(lp.eq_rhs, out.eq_duals) + dot(lp.ineq_rhs, out.ineq_duals);
  const Rational primal_max = maximize ? out.value : Rational(-out.value);
  bool ok = dual_value == primal_max;
  for (std::size_t r = 0; r < n_ineq && ok; ++r) ok = out.ineq_duals[r] >= 0;
  for (std::size_t j = 0; j < n && ok; ++j)
    ok = lp.nonneg[j] ? out.reduced_costs[j] >= 0 : out.reduced_costs[j] == 0;
  if (!ok) throw std::logic_error("simplex produced an uncertified optimum");

  for (std::size_t r = 0; r < n_ineq; ++r)
    if (dot(lp.ineq.row_span(r), out.point) == lp.ineq_rhs[r]) out.tight.inequalities.push_back(r);
  for (std::size_t j = 0; j < n; ++j)
    if (lp.nonneg[j] && out.point[j] == 0) out.tight.zero_variables.push_back(j);
  return out;
}

bool is_feasible(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (lp.nonneg[j] && x[j] < 0) return false;
  for (std::size_t r = 0; r < lp.eq.rows(); ++r)
    if (dot(lp.eq.row_span(r), x) != lp.eq_rhs[r]) return false;
  for (std::size_t r = 0; r < lp.ineq.rows(); ++r)
    if (dot(lp.ineq.row_span(r), x) > lp.ineq_rhs[r]) return false;
  return true;
}

LinearProgram restrict_to_face(const LinearProgram& lp, const TightSet& tight) {
  LinearProgram out = lp;
  const std::size_t n = lp.num_vars();
  std::vector<RatVector> extra;
  RatVector extra_rhs;
  for (std::size_t r : tight.inequalities) {
    extra.push_back(lp.ineq.row(r));
    extra_rhs.push_back(lp.ineq_rhs[r]);
  }
  for (std::size_t j : tight.zero_variables) {
    RatVector unit(n);
    unit[j] = 1;
    extra.push_back(std::move(unit));
    extra_rhs.push_back(0);
  }
  out.eq = vstack(lp.eq.rows() == 0 ? RatMatrix(0, n) : lp.eq, RatMatrix::from_rows(extra, n));
  out.eq_rhs.insert(out.eq_rhs.end(), extra_rhs.begin(), extra_rhs.end());
  return out;
}

std::size_t face_dimension(const LinearProgram& lp, const TightSet& tight) {
  const std::size_t n = lp.num_vars();
  LinearProgram face = restrict_to_face(lp, tight);
  if (face.eq.rows() == 0) return n;
  return n - matrix_rank(face.eq);
}

OptimalFace optimal_face(const LinearProgram& lp) {
  OptimalFace face;
  face.outcome = solve_lp(lp);
  if (!face.outcome.optimal()) throw Error(ErrorCode::kNotOptimal, "program has no optimum");
  const LpOutcome& opt = face.outcome;
  const std::size_t n = lp.num_vars();

  // A positive optimal dual certifies tightness on the whole optimal face.
  struct Candidate {
    bool is_row;
    std::size_t index;
  };
  std::vector<Candidate> open;
  TightSet sure;
  for (std::size_t r : opt.tight.inequalities) {
    if (opt.ineq_duals[r] > 0) sure.inequalities.push_back(r);
    else open.push_back({true, r});
  }
  for (std::size_t j : opt.tight.zero_variables) {
    if (opt.reduced_costs[j] > 0) sure.zero_variables.push_back(j);
    else open.push_back({false, j});
  }

  // Remaining candidates: maximise sum of capped slacks t_c over the optimal
  // face; any candidate with positive slack at the optimum is not always
  // tight. Repeat until the optimum is zero.
  LinearProgram base = lp;
  base.add_eq(lp.objective, opt.value);
  while (!open.empty()) {
    const std::size_t k = open.size();
    LinearProgram aux;
    aux.sense = Sense::kMaximize;
    aux.objective.assign(n + k, Rational(0));
    aux.nonneg = base.nonneg;
    aux.nonneg.resize(n + k, 1);
    for (std::size_t i = 0; i < k; ++i) aux.objective[n + i] = 1;
    aux.eq = hstack(base.eq, RatMatrix(base.eq.rows(), k));
    aux.eq_rhs = base.eq_rhs;
    std::vector<RatVector> rows;
    RatVector rhs;
    for (std::size_t r = 0; r < base.ineq.rows(); ++r) {
      RatVector row = base.ineq.row(r);
      row.resize(n + k);
      rows.push_back(std::move(row));
      rhs.push_back(base.ineq_rhs[r]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      RatVector row(n + k);
      if (open[i].is_row) {
        // t + G_r x <= g_r
        auto g = base.ineq.row_span(open[i].index);
        std::copy(g.begin(), g.end(), row.begin());
        rhs.push_back(base.ineq_rhs[open[i].index]);
      } else {
        // t - x_j <= 0
        row[open[i].index] = -1;
        rhs.push_back(0);
      }
      row[n + i] = 1;
      rows.push_back(row);
      RatVector cap(n + k);
      cap[n + i] = 1;
      rows.push_back(std::move(cap));
      rhs.push_back(1);
    }
    aux.ineq = RatMatrix::from_rows(rows, n + k);
    aux.ineq_rhs = std::move(rhs);
    LpOutcome res = solve_lp(aux);
    if (!res.optimal()) throw std::logic_error("optimal-face probe failed");
    if (res.value == 0) break;
    std::vector<Candidate> still;
    for (std::size_t i = 0; i < k; ++i) {
      if (res.point[n + i] == 0) still.push_back(open[i]);
    }
    open = std::move(still);
  }
  for (const auto& c : open) {
    if (c.is_row) sure.inequalities.push_back(c.index);
    else sure.zero_variables.push_back(c.index);
  }
  std::sort(sure.inequalities.begin(), sure.inequalities.end());
  std::sort(sure.zero_variables.begin(), sure.zero_variables.end());
  face.always_tight = std::move(sure);
  face.dimension = face_dimension(lp, face.always_tight);
  face.is_unique_vertex = face.dimension == 0;
  return face;
}

PolytopeStatus is_polytope_compact(const RatMatrix& e_mat, std::span<const Rational> e_rhs) {
  const std::size_t n = e_mat.cols();
  if (e_mat.rows() != e_rhs.size())
    throw Error(ErrorCode::kDimensionMismatch, "polytope rhs size");
  LinearProgram feas = LinearProgram::with_vars(n, true);
  feas.eq = e_mat;
  feas.eq_rhs.assign(e_rhs.begin(), e_rhs.end());
  if (!solve_lp(feas).optimal()) return PolytopeStatus::kEmpty;

  LinearProgram cone = LinearProgram::with_vars(n, true);
  cone.objective.assign(n, Rational(1));
  cone.eq = e_mat;
  cone.eq_rhs.assign(e_mat.rows(), Rational(0));
  cone.add_ineq(RatVector(n, Rational(1)), 1);
  LpOutcome res = solve_lp(cone);
  return res.value == 0 ? PolytopeStatus::kCompact : PolytopeStatus::kUnbounded;
}

RatVector move_to_vertex(const LinearProgram& lp, RatVector x) {
  const std::size_t n = lp.num_vars();
  if (x.size() != n || !is_feasible(lp, x))
    throw Error(ErrorCode::kInvalidArgument, "start point is not feasible");
  while (true) {
    std::vector<RatVector> rows;
    for (std::size_t r = 0; r < lp.eq.rows(); ++r) rows.push_back(lp.eq.row(r));
    for (std::size_t r = 0; r < lp.ineq.rows(); ++r)
      if (dot(lp.ineq.row_span(r), x) == lp.ineq_rhs[r]) rows.push_back(lp.ineq.row(r));
    for (std::size_t j = 0; j < n; ++j)
      if (lp.nonneg[j] && x[j] == 0) {
        RatVector unit(n, Rational(0));
        unit[j] = 1;
        rows.push_back(std::move(unit));
      }
    auto d = kernel_vector(RatMatrix::from_rows(rows, n));
    if (!d) return x;

    // Longest step along +d or -d before another constraint becomes tight.
    auto step = [&](const RatVector& dir) -> std::optional<Rational> {
      std::optional<Rational> best;
      auto limit = [&](const Rational& t) {
        if (!best || t < *best) best = t;
      };
      for (std::size_t r = 0; r < lp.ineq.rows(); ++r) {
        const Rational rate = dot(lp.ineq.row_span(r), dir);
        if (rate > 0) limit((lp.ineq_rhs[r] - dot(lp.ineq.row_span(r), x)) / rate);
      }
      for (std::size_t j = 0; j < n; ++j)
        if (lp.nonneg[j] && dir[j] < 0) limit(x[j] / -dir[j]);
      return best;
    };
    auto t = step(*d);
    if (!t) {
      *d = scale(Rational(-1), *d);
      t = step(*d);
      if (!t) throw Error(ErrorCode::kInvalidArgument, "feasible region contains a line");
    }
    x = add(x, scale(*t, *d));
  }
}

}  // namespace bilinear
