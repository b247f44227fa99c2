#include "padic/rational.hpp"

#include <cctype>

namespace padic {

BigInt default_guard() { return BigInt(1) << 20; }

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Prime::Prime(const BigInt& p) : p_(p) {
  if (!is_prime(p_)) throw InputError(p_.get_str() + " is not prime");
}

// ---------------------------------------------------------------------------
// ExtInt

const BigInt& ExtInt::value() const {
  if (kind_ != Kind::Finite) throw InvariantError("value() of an infinite ExtInt");
  return value_;
}

bool operator==(const ExtInt& a, const ExtInt& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtInt::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != ExtInt::Kind::Finite) return std::strong_ordering::equal;
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtInt operator+(const ExtInt& a, const ExtInt& b) {
  if (a.is_finite() && b.is_finite()) return ExtInt(BigInt(a.value_ + b.value_));
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    throw InvariantError("ExtInt: ∞ + (−∞) is undefined outside pivot functions");
  return a.is_finite() ? b : a;
}

ExtInt operator-(const ExtInt& a) {
  switch (a.kind_) {
    case ExtInt::Kind::PosInf: return ExtInt::neg_inf();
    case ExtInt::Kind::NegInf: return ExtInt::pos_inf();
    default: return ExtInt(BigInt(-a.value_));
  }
}

std::string ExtInt::to_string() const {
  switch (kind_) {
    case Kind::PosInf: return "inf";
    case Kind::NegInf: return "-inf";
    default: return value_.get_str();
  }
}

ExtInt pivot_sum(const ExtInt& a, const ExtInt& b) {
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtInt::pos_inf();
  return a + b;
}

// ---------------------------------------------------------------------------
// Rationals

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) throw InputError("malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  return make_rational(parse_integer(num), parse_integer(den));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::size_t ceil_log2(const BigInt& n) {
  BigInt a = abs(n);
  if (a == 0) throw InputError("ceil_log2(0)");
  const std::size_t bits = bit_length(a);
  // Exact powers of two have log equal to bits - 1.
  return mpz_scan1(a.get_mpz_t(), 0) == bits - 1 ? bits - 1 : bits;
}

std::size_t remove_factor(BigInt& n, const Prime& p) {
  if (n == 0) throw InvariantError("remove_factor(0)");
  if (p.is_two()) {
    const auto count = mpz_scan1(n.get_mpz_t(), 0);
    n >>= count;
    return count;
  }
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.value().get_mpz_t());
}

ExtInt vp(const Rational& q, const Prime& p) {
  if (q == 0) return ExtInt::pos_inf();
  BigInt num = q.get_num();
  BigInt den = q.get_den();
  const auto up = remove_factor(num, p);
  const auto down = remove_factor(den, p);
  return ExtInt(BigInt(BigInt(up) - BigInt(down)));
}

BigInt leading_digit(const Rational& q, const Prime& p) {
  if (q == 0) throw InputError("leading_digit of zero");
  BigInt num = q.get_num();
  BigInt den = q.get_den();
  remove_factor(num, p);
  remove_factor(den, p);
  // The unit part num/den is congruent to num·den⁻¹ modulo p.
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.value().get_mpz_t());
  BigInt digit = num * inv;
  mpz_fdiv_r(digit.get_mpz_t(), digit.get_mpz_t(), p.value().get_mpz_t());
  return digit;
}

Rational prime_power(const Prime& p, const BigInt& e, const BigInt& guard) {
  const BigInt mag = abs(e);
  if (mag > guard || !mag.fits_ulong_p())
    throw GuardError("exponent " + e.get_str() + " exceeds materialization guard " +
                     guard.get_str());
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), p.value().get_mpz_t(), mag.get_ui());
  if (e >= 0) return Rational(power);
  return make_rational(1, power);
}

}  // namespace padic
