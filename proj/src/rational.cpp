#include "bilinear/rational.hpp"

#include <cmath>

#include "bilinear/errors.hpp"

namespace bilinear {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  return make_rational(Integer(num), Integer(den));
}

namespace {

bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num;
  Integer den(1);
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) {
      throw Error(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
    }
  } else {
    auto den_text = text.substr(slash + 1);
    if (!parse_integer(text.substr(0, slash), num) || den_text.empty() ||
        den_text[0] == '-' || den_text[0] == '+' || !parse_integer(den_text, den)) {
      throw Error(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'");
    }
    if (den == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool is_canonical(const Rational& r) {
  if (r.get_den() <= 0) return false;
  Integer g;
  Integer n = ::abs(r.get_num());
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), r.get_den().get_mpz_t());
  return g == 1;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

double log2_of(const Integer& z) {
  if (z <= 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const Rational& r) {
  if (r <= 0) return -INFINITY;
  return log2_of(r.get_num()) - log2_of(r.get_den());
}

}  // namespace bilinear
