#include "padic/power_sum.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace padic {

namespace {

// Sorts by exponent, merges duplicates and drops zero coefficients.
void normalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

PowerSum::PowerSum(Prime p, std::vector<Term> terms) : prime_(std::move(p)), terms_(std::move(terms)) {
  normalize_terms(terms_);
}

PowerSum PowerSum::constant(const Prime& p, const Rational& value) {
  return monomial(p, value, 0);
}

PowerSum PowerSum::monomial(const Prime& p, const Rational& coeff, const BigInt& exponent) {
  PowerSum s(p);
  if (coeff != 0) s.terms_.push_back({coeff, exponent});
  return s;
}

void PowerSum::check_prime(const PowerSum& other) const {
  if (prime_ != other.prime_)
    throw InputError("power sums over different primes (" + prime_.to_string() + " vs " +
                     other.prime_.to_string() + ")");
}

PowerSum& PowerSum::operator+=(const PowerSum& other) {
  check_prime(other);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exponent < b->exponent)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exponent < a->exponent) {
      merged.push_back(*b++);
    } else {
      Rational sum = a->coeff + b->coeff;
      if (sum != 0) merged.push_back({std::move(sum), a->exponent});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

PowerSum& PowerSum::operator-=(const PowerSum& other) {
  return *this += other * Rational(-1);
}

PowerSum& PowerSum::operator*=(const Rational& r) {
  if (r == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= r;
  return *this;
}

std::string PowerSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += padic::to_string(terms_[i].coeff) + "@" + terms_[i].exponent.get_str();
  }
  return out;
}

PowerSum powersum_add(const PowerSum& s, const PowerSum& t) { return s + t; }

PowerSum powersum_scale(const PowerSum& s, const Rational& r) { return s * r; }

ExtInt powersum_val(const PowerSum& s) {
  const Prime& p = s.prime();
  // (exponent, unit coefficient) pairs, smallest exponent on top.
  using Entry = std::pair<BigInt, Rational>;
  auto later = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);

  auto push_unit = [&](Rational a, BigInt c) {
    if (a == 0) return;
    const ExtInt v = vp(a, p);
    const Rational shift = prime_power(p, -v.value(), abs(v.value()));
    heap.emplace(BigInt(c + v.value()), Rational(a * shift));
  };
  for (const auto& t : s.terms()) push_unit(t.coeff, t.exponent);

  while (!heap.empty()) {
    Entry lowest = heap.top();
    heap.pop();
    if (heap.empty() || heap.top().first != lowest.first) return ExtInt(lowest.first);
    Entry second = heap.top();
    heap.pop();
    push_unit(lowest.second + second.second, lowest.first);
  }
  return ExtInt::pos_inf();
}

Rational powersum_materialize(const PowerSum& s, const BigInt& guard) {
  for (const auto& t : s.terms())
    if (abs(t.exponent) > guard)
      throw GuardError("power-sum exponent " + t.exponent.get_str() +
                       " exceeds materialization guard " + guard.get_str());
  Rational total = 0;
  for (const auto& t : s.terms()) total += t.coeff * prime_power(s.prime(), t.exponent, guard);
  return total;
}

}  // namespace padic
