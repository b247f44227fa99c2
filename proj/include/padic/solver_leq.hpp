#pragma once

#include "padic/instance.hpp"
#include "padic/linalg.hpp"

namespace padic {

/// A·x = b with vp(x_j) ≤ c_j (c_j may be +∞) and vp(x_j) ∉ D_j.
struct LeqProblem {
  QMatrix a;
  QVector b;
  Prime prime;
  std::vector<ExtInt> bounds;
  std::vector<std::vector<BigInt>> excluded;

  void validate() const;
};

/// Internals of a solve, exposed for auditing the witness construction.
struct LeqTrace {
  SolutionSpace space;
  std::vector<ExtInt> thresholds;  // c′_j = inf(Z ∖ C_j)
  BigInt spread = 0;               // e
};

/// Whether vp-value v lies in C_j = (−∞, c] ∖ D (or (Z ∪ {∞}) ∖ D when c = ∞).
bool leq_admits(const ExtInt& v, const ExtInt& bound, const std::vector<BigInt>& excluded);

/// inf(Z ∖ C_j): min(D ∪ {c + 1}), or min D / +∞ when c = ∞.
ExtInt leq_threshold(const ExtInt& bound, const std::vector<BigInt>& excluded);

/// Polynomial-time decision. On Sat the witness is
/// x = y₀ + Σ_k p^(−2ke)·y_k kept in power-sum form.
Verdict solve_leq(const LeqProblem& prob, LeqTrace* trace = nullptr);

}  // namespace padic
