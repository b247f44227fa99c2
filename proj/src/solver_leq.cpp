#include "padic/solver_leq.hpp"

#include <algorithm>

namespace padic {

void LeqProblem::validate() const {
  if (b.size() != a.rows()) throw InputError("LeqProblem: rhs length does not match rows");
  if (bounds.size() != a.cols() || excluded.size() != a.cols())
    throw InputError("LeqProblem: one bound and one exclusion set per column required");
  for (const auto& c : bounds)
    if (c.is_neg_inf()) throw InputError("LeqProblem: bound −∞ is not allowed");
}

bool leq_admits(const ExtInt& v, const ExtInt& bound, const std::vector<BigInt>& excluded) {
  if (v > bound) return false;
  if (!v.is_finite()) return true;  // v = ∞ only reaches here when bound = ∞
  return std::find(excluded.begin(), excluded.end(), v.value()) == excluded.end();
}

ExtInt leq_threshold(const ExtInt& bound, const std::vector<BigInt>& excluded) {
  ExtInt t = bound.is_finite() ? ExtInt(BigInt(bound.value() + 1)) : ExtInt::pos_inf();
  for (const auto& d : excluded) t = std::min(t, ExtInt(d));
  return t;
}

Verdict solve_leq(const LeqProblem& prob, LeqTrace* trace) {
  prob.validate();
  const std::size_t n = prob.a.cols();
  const Prime& p = prob.prime;

  auto space = solve_affine(prob.a, prob.b);
  if (!space) return Verdict::unsat("inconsistent_equations", "A·x = b has no rational solution");

  // A coordinate untouched by the kernel is fixed to y₀ⱼ.
  for (std::size_t j = 0; j < n; ++j) {
    const bool fixed = std::all_of(space->basis.begin(), space->basis.end(),
                                   [&](const QVector& y) { return y[j] == 0; });
    if (!fixed) continue;
    const ExtInt v = vp(space->particular[j], p);
    if (!leq_admits(v, prob.bounds[j], prob.excluded[j]))
      return Verdict::unsat("fixed_coordinate",
                            "coordinate " + std::to_string(j) + " is fixed to " +
                                to_string(space->particular[j]) + " with v_" + p.to_string() +
                                " = " + v.to_string() + " outside its allowed set",
                            {j});
  }

  std::vector<ExtInt> thresholds(n);
  BigInt max_val = 0;
  BigInt shift = 0;
  for (std::size_t j = 0; j < n; ++j) {
    thresholds[j] = leq_threshold(prob.bounds[j], prob.excluded[j]);
    if (thresholds[j].is_finite()) shift = std::max(shift, BigInt(-thresholds[j].value()));
    auto visit = [&](const Rational& y) {
      if (y != 0) max_val = std::max(max_val, BigInt(abs(vp(y, p).value())));
    };
    visit(space->particular[j]);
    for (const auto& y : space->basis) visit(y[j]);
  }
  const BigInt e = max_val + shift + 1;

  Witness witness;
  witness.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> terms;
    if (space->particular[j] != 0) terms.push_back({space->particular[j], 0});
    for (std::size_t k = 0; k < space->dimension(); ++k) {
      const Rational& y = space->basis[k][j];
      if (y != 0) terms.push_back({y, BigInt(-2 * BigInt(k + 1) * e)});
    }
    witness.emplace_back(PowerSum(p, std::move(terms)));
  }

  if (trace) *trace = LeqTrace{std::move(*space), std::move(thresholds), e};
  return Verdict::sat(std::move(witness));
}

}  // namespace padic
