#pragma once

// Exact scalar layer: GMP-backed integers and rationals, primes, extended
// integers and p-adic valuations.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padic {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Malformed input: non-prime modulus, dimension mismatch, bad syntax.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A power-sum exponent is too large to materialize as a plain rational.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (a solver produced a bad witness).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Absolute exponent up to which power sums may be expanded (2^20).
BigInt default_guard();

/// A validated prime number.
class Prime {
 public:
  explicit Prime(const BigInt& p);
  explicit Prime(unsigned long p) : Prime(BigInt(p)) {}

  const BigInt& value() const { return p_; }
  bool is_two() const { return p_ == 2; }
  std::string to_string() const { return p_.get_str(); }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Prime& a, const Prime& b) {
    const int c = cmp(a.p_, b.p_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  BigInt p_;
};

bool is_prime(const BigInt& n);

/// Element of Z ∪ {−∞, +∞}.
class ExtInt {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtInt() = default;
  ExtInt(const BigInt& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtInt(long v) : value_(v) {}           // NOLINT(google-explicit-constructor)

  static ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Throws InvariantError on an infinite value.
  const BigInt& value() const;

  friend bool operator==(const ExtInt& a, const ExtInt& b);
  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b);

  /// Rejects ∞ + (−∞); use pivot_sum where that convention applies.
  friend ExtInt operator+(const ExtInt& a, const ExtInt& b);
  friend ExtInt operator-(const ExtInt& a);
  friend ExtInt operator-(const ExtInt& a, const ExtInt& b) { return a + (-b); }

  std::string to_string() const;

 private:
  explicit ExtInt(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  BigInt value_ = 0;
};

/// Sum with the convention ∞ + (−∞) := ∞, used only inside pivot functions.
ExtInt pivot_sum(const ExtInt& a, const ExtInt& b);

Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "a", "-a", "a/b". Throws InputError on malformed text or b = 0.
Rational parse_rational(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

/// Number of bits of |n|; 0 for n = 0.
std::size_t bit_length(const BigInt& n);

/// ceil(log2 |n|) for n != 0.
std::size_t ceil_log2(const BigInt& n);

/// Strips all factors p from n (n != 0) and returns how many were removed.
std::size_t remove_factor(BigInt& n, const Prime& p);

/// p-adic valuation; +∞ exactly for q = 0.
ExtInt vp(const Rational& q, const Prime& p);

/// The unique i in {1, …, p−1} with vp(q − i·p^vp(q)) > vp(q). q must be nonzero.
BigInt leading_digit(const Rational& q, const Prime& p);

/// p^e as an exact rational. Throws GuardError when |e| > guard.
Rational prime_power(const Prime& p, const BigInt& e, const BigInt& guard);

}  // namespace padic
