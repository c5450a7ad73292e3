#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bilinear/lp.hpp"
#include "bilinear/matrix.hpp"

namespace bilinear {

// Unvalidated six-tuple: payoffs x^T A y and x^T B y over
// X = {x : E x = e, x >= 0} and Y = {y : F y = f, y >= 0}.
struct GameData {
  RatMatrix A, B;
  RatMatrix E, F;
  RatVector e, f;
};

// A validated bilinear game. Entries are integers (payoffs scaled by a common
// positive factor, each constraint row by its own), constraint rows are
// linearly independent and both strategy polytopes are nonempty and bounded.
class BilinearGame {
 public:
  const RatMatrix& row_payoff() const noexcept { return a_; }
  const RatMatrix& col_payoff() const noexcept { return b_; }
  const RatMatrix& row_constraints() const noexcept { return e_mat_; }
  const RatMatrix& col_constraints() const noexcept { return f_mat_; }
  const RatVector& row_rhs() const noexcept { return e_; }
  const RatVector& col_rhs() const noexcept { return f_; }

  std::size_t rows() const noexcept { return a_.rows(); }        // M
  std::size_t cols() const noexcept { return a_.cols(); }        // N
  std::size_t row_duals() const noexcept { return e_mat_.rows(); }  // k1
  std::size_t col_duals() const noexcept { return f_mat_.rows(); }  // k2

  const RatMatrix& payoff_sum() const noexcept { return sum_; }  // A + B
  // max over X of sum x_i, max over Y of sum y_j.
  const Rational& x_max() const noexcept { return x_max_; }
  const Rational& y_max() const noexcept { return y_max_; }
  // Stored payoffs equal payoff_scale times the input payoffs.
  const Rational& payoff_scale() const noexcept { return payoff_scale_; }
  std::size_t bit_length() const noexcept { return bit_length_; }
  const std::vector<std::size_t>& dropped_row_constraints() const noexcept { return dropped_e_; }
  const std::vector<std::size_t>& dropped_col_constraints() const noexcept { return dropped_f_; }

  GameData data() const { return {a_, b_, e_mat_, f_mat_, e_, f_}; }

  friend BilinearGame validate(const GameData& raw);
  friend bool operator==(const BilinearGame& g, const BilinearGame& h) {
    return g.a_ == h.a_ && g.b_ == h.b_ && g.e_mat_ == h.e_mat_ && g.f_mat_ == h.f_mat_ &&
           g.e_ == h.e_ && g.f_ == h.f_;
  }

 private:
  BilinearGame() = default;

  RatMatrix a_, b_, e_mat_, f_mat_, sum_;
  RatVector e_, f_;
  Rational x_max_, y_max_, payoff_scale_{1};
  std::size_t bit_length_ = 0;
  std::vector<std::size_t> dropped_e_, dropped_f_;
};

// Throws DimensionMismatch, EmptyStrategySet or NonCompactStrategySet.
BilinearGame validate(const GameData& raw);

std::size_t game_rank(const BilinearGame& g);

struct StrategyProfile {
  RatVector x;
  RatVector y;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend bool operator<(const StrategyProfile& a, const StrategyProfile& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

bool in_row_strategies(const BilinearGame& g, std::span<const Rational> x);
bool in_col_strategies(const BilinearGame& g, std::span<const Rational> y);

struct BestResponse {
  Rational value;       // max over the player's polytope
  RatVector strategy;   // a maximiser
  RatVector dual;       // optimal dual of the constraint rows; rhs . dual == value
};

// max_{x in X} x^T A y with dual min e^T p s.t. E^T p >= A y.
// Throws InfeasibleStrategy if y is not in Y.
BestResponse best_response_row(const BilinearGame& g, std::span<const Rational> y);
// max_{y in Y} x^T B y with dual min f^T q s.t. F^T q >= B^T x.
BestResponse best_response_col(const BilinearGame& g, std::span<const Rational> x);

struct EquilibriumCertificate {
  StrategyProfile profile;
  RatVector p;            // row-player dual (from the best-response program)
  RatVector q;            // column-player dual
  Rational row_value;     // u = max_x' x'^T A y
  Rational col_value;     // v = max_y' x^T B y'
  Rational payoff_total;  // x^T (A + B) y
  Rational qp_residual;   // e.p + f.q - x^T(A+B)y
  // (u + v - x^T(A+B)y) / (x_max D y_max) with D = |A + B|. When D = 0 the
  // normaliser is 1 and degenerate_scale is set.
  Rational abs_eps;
  bool degenerate_scale = false;
  // (u + v - x^T(A+B)y) / (u + v); nullopt (undefined) if the gap is
  // positive and u + v <= 0.
  std::optional<Rational> rel_eps;

  bool is_exact() const { return qp_residual == 0; }
};

// Throws InfeasibleStrategy if the profile is outside X x Y.
EquilibriumCertificate verify(const BilinearGame& g, const StrategyProfile& profile);

// ---------------------------------------------------------------------------
// Best response polytopes. Labels 1..M belong to the row player's block and
// M+1..M+N to the column player's block; equality rows carry no label.

struct LabelSource {
  bool is_variable;   // nonnegativity of system variable `index`
  std::size_t index;  // otherwise row `index` of system.ineq
};

struct BrpPolytope {
  LinearProgram system;  // objective unused
  std::vector<LabelSource> labels;  // labels[L-1] is label L
  std::size_t M = 0;
  std::size_t N = 0;

  std::size_t num_vars() const noexcept { return system.num_vars(); }
  // Affine dimension bound: variables minus independent equalities.
  std::size_t dimension() const;
  // Label owning inequality row r / variable j, if any.
  std::optional<std::size_t> label_of_row(std::size_t r) const;
  std::optional<std::size_t> label_of_variable(std::size_t j) const;
  std::vector<std::size_t> labels_of(const TightSet& tight) const;
};

// P over (y, p): A_i y - p^T E^i <= 0 (label i), y_j >= 0 (label M+j), F y = f.
BrpPolytope build_brp_P(const BilinearGame& g);
// Q over (x, q): x_i >= 0 (label i), x^T B^j - q^T F^j <= 0 (label M+j), E x = e.
BrpPolytope build_brp_Q(const BilinearGame& g);

// Sorted labels (1-based) of the inequalities tight at point.
// Throws PointNotInPolytope.
std::vector<std::size_t> labels_at(const BrpPolytope& brp, std::span<const Rational> point);

bool is_fully_labeled(std::span<const std::size_t> v_labels,
                      std::span<const std::size_t> w_labels, std::size_t M, std::size_t N);

// More tight labelled inequalities than the polytope's dimension.
bool is_degenerate_point(const BrpPolytope& brp, std::span<const Rational> point);

// x^T (A+B) y - e^T p - f^T q for ((y,p),(x,q)) in P x Q; always <= 0 there.
// Throws PointNotInPolytope.
Rational qp_objective(const BilinearGame& g, std::span<const Rational> x,
                      std::span<const Rational> y, std::span<const Rational> p,
                      std::span<const Rational> q);

// (A', A'^T, E', E', e', e') with A' = [[0, A], [B^T, 0]], E' = diag(E, F),
// e' = (e, f). A symmetric equilibrium (z, z) with z = (x, y) maps to the
// equilibrium (x, y) of g.
BilinearGame symmetrize(const BilinearGame& g);
StrategyProfile split_symmetric(const BilinearGame& g, std::span<const Rational> z);
bool is_symmetric(const BilinearGame& g);

// Termination conditions for Lemke's method on the game's LCP: the only
// nonnegative solutions of E x = 0 and F y = 0 are zero, and A <= 0, B <= 0.
bool satisfies_lemke_termination(const BilinearGame& g);

}  // namespace bilinear

namespace bilinear {

// Moves an exact equilibrium to a vertex pair of P x Q on the face cut out by
// its labels, giving an extreme equilibrium. Returns c unchanged if it is not
// exact.
EquilibriumCertificate snap_to_extreme(const BilinearGame& g, const EquilibriumCertificate& c);

}  // namespace bilinear
