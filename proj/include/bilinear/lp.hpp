#pragma once

#include <cstddef>
#include <vector>

#include "bilinear/matrix.hpp"

namespace bilinear {

enum class Sense { kMaximize, kMinimize };

// max/min c^T x  s.t.  eq x = eq_rhs,  ineq x <= ineq_rhs,  x_j >= 0 where
// nonneg[j] is set (other variables are free).
struct LinearProgram {
  RatVector objective;
  Sense sense = Sense::kMaximize;
  RatMatrix eq;
  RatVector eq_rhs;
  RatMatrix ineq;
  RatVector ineq_rhs;
  std::vector<char> nonneg;

  std::size_t num_vars() const noexcept { return objective.size(); }

  // An all-nonnegative or all-free program with no constraints yet.
  static LinearProgram with_vars(std::size_t n, bool nonnegative);
  void add_eq(std::span<const Rational> row, const Rational& rhs);
  void add_ineq(std::span<const Rational> row, const Rational& rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct TightSet {
  std::vector<std::size_t> inequalities;    // rows of ineq with zero slack
  std::vector<std::size_t> zero_variables;  // nonnegative variables at zero

  friend bool operator==(const TightSet&, const TightSet&) = default;
};

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  RatVector point;
  Rational value;
  TightSet tight;
  // Optimal duals of the maximisation form (for kMinimize: of max -c^T x):
  //   c_max = eq^T eq_duals + ineq^T ineq_duals - reduced_costs,
  // ineq_duals >= 0, reduced_costs >= 0 on nonnegative variables and 0 on
  // free ones, and value_max = eq_rhs . eq_duals + ineq_rhs . ineq_duals.
  RatVector eq_duals;
  RatVector ineq_duals;
  RatVector reduced_costs;
  // Equality rows found linearly dependent on earlier rows.
  std::vector<std::size_t> redundant_eq_rows;
  std::size_t pivots = 0;

  bool optimal() const noexcept { return status == LpStatus::kOptimal; }
};

// Exact two-phase simplex. Throws MalformedProgram on inconsistent dimensions.
LpOutcome solve_lp(const LinearProgram& lp);

struct OptimalFace {
  TightSet always_tight;  // constraints tight at every optimal point
  std::size_t dimension = 0;
  bool is_unique_vertex = false;
  LpOutcome outcome;
};

// Throws NotOptimal unless solve_lp(lp) is optimal.
OptimalFace optimal_face(const LinearProgram& lp);

// Dimension of {x : eq x = eq_rhs, tight rows at equality, zero variables = 0}
// counted as num_vars minus the rank of those rows.
std::size_t face_dimension(const LinearProgram& lp, const TightSet& tight);

// Program restricted to the face where each constraint in `tight` holds with
// equality. Same variables.
LinearProgram restrict_to_face(const LinearProgram& lp, const TightSet& tight);

enum class PolytopeStatus { kCompact, kUnbounded, kEmpty };

// {x : E x = e, x >= 0}: nonempty and bounded iff the recession cone
// {x : E x = 0, x >= 0, sum x <= 1} only attains sum x = 0.
PolytopeStatus is_polytope_compact(const RatMatrix& e_mat, std::span<const Rational> e_rhs);

// A vertex of the feasible region reached from the feasible point x by moving
// along null directions of the tight constraints. Throws InvalidArgument if x
// is infeasible or the region contains a line through x.
RatVector move_to_vertex(const LinearProgram& lp, RatVector x);

// True iff x satisfies every constraint of lp exactly.
bool is_feasible(const LinearProgram& lp, std::span<const Rational> x);

}  // namespace bilinear
