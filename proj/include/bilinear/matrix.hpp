#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "bilinear/rational.hpp"

namespace bilinear {

using RatVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static RatMatrix identity(std::size_t n);
  static RatMatrix filled(std::size_t rows, std::size_t cols, const Rational& value);
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Rational> row_span(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  RatVector row(std::size_t r) const;
  RatVector col(std::size_t c) const;
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  RatMatrix transpose() const;
  RatMatrix select_rows(std::span<const std::size_t> indices) const;

  // Largest absolute entry, |X| in the usual game-theory notation; 0 if empty.
  Rational max_abs() const;
  bool is_zero() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a);
RatMatrix operator*(const Rational& s, const RatMatrix& a);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

RatVector operator*(const RatMatrix& a, std::span<const Rational> x);
// x^T a as a row vector.
RatVector left_multiply(std::span<const Rational> x, const RatMatrix& a);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
// x^T a y without materialising intermediates.
Rational bilinear_form(std::span<const Rational> x, const RatMatrix& a,
                       std::span<const Rational> y);
RatMatrix outer(std::span<const Rational> a, std::span<const Rational> b);

RatVector add(std::span<const Rational> a, std::span<const Rational> b);
RatVector sub(std::span<const Rational> a, std::span<const Rational> b);
RatVector scale(const Rational& s, std::span<const Rational> a);
Rational sum(std::span<const Rational> a);
Rational max_abs(std::span<const Rational> a);

// [[a, b], [c, d]] with conforming blocks.
RatMatrix block(const RatMatrix& a, const RatMatrix& b, const RatMatrix& c,
                const RatMatrix& d);
RatMatrix block_diagonal(const std::vector<RatMatrix>& blocks);
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatVector concat(std::span<const Rational> a, std::span<const Rational> b);

// Least common multiple of all denominators (1 for an empty input).
Integer denominator_lcm(std::span<const Rational> values);

// Exact rank by fraction-free (Bareiss) elimination.
std::size_t matrix_rank(const RatMatrix& m);

// Indices of a maximal linearly independent subset of rows, chosen greedily in
// index order.
std::vector<std::size_t> independent_rows(const RatMatrix& m);

// Some nonzero d with m d = 0, or nullopt if the columns are independent.
std::optional<RatVector> kernel_vector(const RatMatrix& m);

// Unique solution of m x = rhs for square nonsingular m; nullopt if singular.
std::optional<RatVector> solve_square(const RatMatrix& m, std::span<const Rational> rhs);

// Unique solution of an overdetermined/square system if the columns are
// independent and the system is consistent; nullopt otherwise.
std::optional<RatVector> solve_unique(const RatMatrix& m, std::span<const Rational> rhs);

struct RankOneTerm {
  RatVector alpha;
  RatVector beta;
};

// Returns exactly matrix_rank(m) terms with sum alpha(i) beta(i)^T == m.
// Pivot: first nonzero entry in row-major order of the running residual.
// Throws RankExceeded if rank(m) > k.
std::vector<RankOneTerm> rank_factorize(const RatMatrix& m, std::size_t k);

RatMatrix reconstruct(const std::vector<RankOneTerm>& terms, std::size_t rows,
                      std::size_t cols);

// l! * Z^l, the Cramer-rule bound on vertex denominators of an integer system.
Integer denominator_bound(const Integer& z, std::size_t l);

}  // namespace bilinear
