#include "bilinear/matrix.hpp"

#include <algorithm>
#include <utility>

#include "bilinear/errors.hpp"

namespace bilinear {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::filled(std::size_t rows, std::size_t cols, const Rational& value) {
  RatMatrix m(rows, cols);
  std::fill(m.entries_.begin(), m.entries_.end(), value);
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::kDimensionMismatch, "ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + r * cols);
  }
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  auto s = row_span(r);
  return {s.begin(), s.end()};
}

RatVector RatMatrix::col(std::size_t c) const {
  RatVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::select_rows(std::span<const std::size_t> indices) const {
  RatMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(indices[i], c);
  return out;
}

Rational RatMatrix::max_abs() const { return bilinear::max_abs(entries_); }

bool RatMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& v) { return v == 0; });
}

namespace {

void require_same_shape(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
}

void require_same_size(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "vector sizes differ");
}

}  // namespace

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  require_same_shape(a, b);
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  require_same_shape(a, b);
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

RatMatrix operator-(const RatMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = -a(r, c);
  return out;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

RatVector operator*(const RatMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
  RatVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = dot(a.row_span(r), x);
  return out;
}

RatVector left_multiply(std::span<const Rational> x, const RatMatrix& a) {
  if (a.rows() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "vector-matrix product");
  RatVector out(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (x[r] == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += x[r] * a(r, c);
  }
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a, b);
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  }
  return acc;
}

Rational bilinear_form(std::span<const Rational> x, const RatMatrix& a,
                       std::span<const Rational> y) {
  if (a.rows() != x.size() || a.cols() != y.size())
    throw Error(ErrorCode::kDimensionMismatch, "bilinear form");
  Rational acc;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (x[r] == 0) continue;
    acc += x[r] * dot(a.row_span(r), y);
  }
  return acc;
}

RatMatrix outer(std::span<const Rational> a, std::span<const Rational> b) {
  RatMatrix out(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) out(r, c) = a[r] * b[c];
  return out;
}

RatVector add(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector sub(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector scale(const Rational& s, std::span<const Rational> a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Rational sum(std::span<const Rational> a) {
  Rational acc;
  for (const auto& v : a) acc += v;
  return acc;
}

Rational max_abs(std::span<const Rational> a) {
  Rational best;
  for (const auto& v : a) {
    Rational m = abs(v);
    if (m > best) best = m;
  }
  return best;
}

RatMatrix block(const RatMatrix& a, const RatMatrix& b, const RatMatrix& c,
                const RatMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw Error(ErrorCode::kDimensionMismatch, "block matrix");
  return vstack(hstack(a, b), hstack(c, d));
}

RatMatrix block_diagonal(const std::vector<RatMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  RatMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "hstack");
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw Error(ErrorCode::kDimensionMismatch, "vstack");
  RatMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

RatVector concat(std::span<const Rational> a, std::span<const Rational> b) {
  RatVector out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer l(1);
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  return l;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

// Each row multiplied by the lcm of its denominators; row scaling preserves
// rank and (with the right-hand side included) solutions.
IntRows integer_rows(const RatMatrix& m, std::span<const Rational> rhs = {}) {
  IntRows out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto span = m.row_span(r);
    Integer l = denominator_lcm(span);
    if (!rhs.empty()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs[r].get_den().get_mpz_t());
    auto& row = out[r];
    row.reserve(m.cols() + (rhs.empty() ? 0 : 1));
    for (const auto& v : span) row.emplace_back(v.get_num() * (l / v.get_den()));
    if (!rhs.empty()) row.emplace_back(rhs[r].get_num() * (l / rhs[r].get_den()));
  }
  return out;
}

// Fraction-free echelon form in place over the first `cols` columns. Returns
// the pivot columns. Every stored entry stays an integer minor of the input,
// so the division by the previous pivot is exact.
std::vector<std::size_t> bareiss_echelon(IntRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t width = rows == 0 ? 0 : a[0].size();
  Integer prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < width; ++j) {
        Integer t = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  IntRows a = integer_rows(m);
  return bareiss_echelon(a, m.cols()).size();
}

std::optional<RatVector> kernel_vector(const RatMatrix& m) {
  const std::size_t n = m.cols();
  if (n == 0) return std::nullopt;
  if (m.rows() == 0) {
    RatVector d(n, Rational(0));
    d[0] = 1;
    return d;
  }
  IntRows a = integer_rows(m);
  const auto pivots = bareiss_echelon(a, n);
  if (pivots.size() == n) return std::nullopt;
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  RatVector d(n, Rational(0));
  d[free_col] = 1;
  for (std::size_t r = pivots.size(); r-- > 0;) {
    const std::size_t c = pivots[r];
    Rational acc;
    for (std::size_t j = c + 1; j < n; ++j)
      if (d[j] != 0) acc += Rational(a[r][j]) * d[j];
    d[c] = -acc / Rational(a[r][c]);
  }
  return d;
}

std::vector<std::size_t> independent_rows(const RatMatrix& m) {
  std::vector<std::size_t> chosen;
  std::vector<RatVector> basis;  // reduced rows, each with a leading pivot
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RatVector v = m.row(r);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[lead[b]] == 0) continue;
      Rational f = v[lead[b]] / basis[b][lead[b]];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * basis[b][c];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) continue;
    lead.push_back(static_cast<std::size_t>(it - v.begin()));
    basis.push_back(std::move(v));
    chosen.push_back(r);
  }
  return chosen;
}

std::optional<RatVector> solve_square(const RatMatrix& m, std::span<const Rational> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n)
    throw Error(ErrorCode::kDimensionMismatch, "solve_square expects a square system");
  if (n == 0) return RatVector{};
  IntRows a = integer_rows(m, rhs);
  auto pivots = bareiss_echelon(a, n);
  if (pivots.size() != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(a[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(a[i][j]) * x[j];
    x[i] = acc / Rational(a[i][i]);
  }
  return x;
}

std::optional<RatVector> solve_unique(const RatMatrix& m, std::span<const Rational> rhs) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (rhs.size() != rows) throw Error(ErrorCode::kDimensionMismatch, "solve_unique rhs");
  if (rows < n) return std::nullopt;
  IntRows a = integer_rows(m, rhs);
  auto pivots = bareiss_echelon(a, n);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = n; i < rows; ++i)
    if (a[i][n] != 0) return std::nullopt;  // inconsistent
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(a[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(a[i][j]) * x[j];
    x[i] = acc / Rational(a[i][i]);
  }
  return x;
}

std::vector<RankOneTerm> rank_factorize(const RatMatrix& m, std::size_t k) {
  const std::size_t rank = matrix_rank(m);
  if (rank > k) {
    throw Error(ErrorCode::kRankExceeded,
                "rank " + std::to_string(rank) + " exceeds " + std::to_string(k));
  }
  std::vector<RankOneTerm> terms;
  RatMatrix residual = m;
  while (terms.size() < rank) {
    std::size_t pr = 0, pc = 0;
    bool found = false;
    for (std::size_t r = 0; r < residual.rows() && !found; ++r)
      for (std::size_t c = 0; c < residual.cols() && !found; ++c)
        if (residual(r, c) != 0) {
          pr = r;
          pc = c;
          found = true;
        }
    RankOneTerm term;
    term.beta = residual.row(pr);
    term.alpha = residual.col(pc);
    const Rational pivot = residual(pr, pc);
    for (auto& a : term.alpha) a /= pivot;
    for (std::size_t r = 0; r < residual.rows(); ++r) {
      if (term.alpha[r] == 0) continue;
      for (std::size_t c = 0; c < residual.cols(); ++c)
        residual(r, c) -= term.alpha[r] * term.beta[c];
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

RatMatrix reconstruct(const std::vector<RankOneTerm>& terms, std::size_t rows,
                      std::size_t cols) {
  RatMatrix out(rows, cols);
  for (const auto& t : terms) out = out + outer(t.alpha, t.beta);
  return out;
}

Integer denominator_bound(const Integer& z, std::size_t l) {
  Integer fact(1);
  for (std::size_t i = 2; i <= l; ++i) fact *= static_cast<unsigned long>(i);
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), z.get_mpz_t(), l);
  return fact * power;
}

}  // namespace bilinear
