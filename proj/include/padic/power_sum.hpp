#pragma once

#include <span>
#include <string>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

struct Term {
  Rational coeff;
  BigInt exponent;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A finite formal sum Σ aᵢ·p^cᵢ with rational aᵢ and integer cᵢ.
///
/// Normal form: exponents strictly increasing, no zero coefficients. The
/// coefficients may carry any valuation, so a normalized power sum can still
/// denote zero (for instance 1·2⁰ − ½·2¹); powersum_val is the exact test.
/// Exponents may be astronomically large; nothing here expands p^c unless
/// asked to via powersum_materialize.
class PowerSum {
 public:
  explicit PowerSum(Prime p) : prime_(std::move(p)) {}
  PowerSum(Prime p, std::vector<Term> terms);

  static PowerSum constant(const Prime& p, const Rational& value);
  static PowerSum monomial(const Prime& p, const Rational& coeff, const BigInt& exponent);

  const Prime& prime() const { return prime_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  PowerSum& operator+=(const PowerSum& other);
  PowerSum& operator-=(const PowerSum& other);
  PowerSum& operator*=(const Rational& r);

  friend PowerSum operator+(PowerSum a, const PowerSum& b) { return a += b; }
  friend PowerSum operator-(PowerSum a, const PowerSum& b) { return a -= b; }
  friend PowerSum operator*(PowerSum a, const Rational& r) { return a *= r; }
  friend PowerSum operator*(const Rational& r, PowerSum a) { return a *= r; }

  /// Structural equality of normal forms (same prime, same term list).
  friend bool operator==(const PowerSum&, const PowerSum&) = default;

  /// "a@c + a@c …", "0" when empty.
  std::string to_string() const;

 private:
  void check_prime(const PowerSum& other) const;

  Prime prime_;
  std::vector<Term> terms_;
};

PowerSum powersum_add(const PowerSum& s, const PowerSum& t);
PowerSum powersum_scale(const PowerSum& s, const Rational& r);

/// vp of the represented value, computed without expanding any power of p.
ExtInt powersum_val(const PowerSum& s);

/// Exact value; throws GuardError when some |exponent| exceeds guard.
Rational powersum_materialize(const PowerSum& s, const BigInt& guard);

}  // namespace padic
