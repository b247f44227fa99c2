#pragma once

#include "padic/instance.hpp"
#include "padic/linalg.hpp"

namespace padic {

/// A·x = b with vp(x_j) ≥ c_j (c_j may be −∞), and for p = 2 additionally
/// vp(x_j) = c_j wherever exact[j] is set.
struct GeqProblem {
  QMatrix a;
  QVector b;
  Prime prime;
  std::vector<ExtInt> bounds;
  std::vector<std::uint8_t> exact;

  /// Fills exact with zeros when empty; throws InputError on violations of
  /// exact[j] ⇒ (p = 2 and c_j finite).
  void validate();
};

struct GeqTrace {
  EchelonResult echelon;
  QVector rhs;                      // U·b
  std::vector<ExtInt> bounds;       // c permuted by σ
  std::vector<std::uint8_t> exact;  // δ permuted by σ
  std::size_t failed_row = 0;
};

/// Polynomial-time decision via the f-minimal echelon form with
/// f(a, j) = vp(a) + c_j + δ_j/2. On Sat the witness is built by
/// back-substitution in power-sum form; every coordinate uses exponents
/// from {0} ∪ {c_j}.
Verdict solve_geq(GeqProblem prob, GeqTrace* trace = nullptr);

}  // namespace padic
