#include "padic/solver_geq.hpp"

#include "padic/power_sum.hpp"

namespace padic {

void GeqProblem::validate() {
  if (b.size() != a.rows()) throw InputError("GeqProblem: rhs length does not match rows");
  if (bounds.size() != a.cols()) throw InputError("GeqProblem: one bound per column required");
  if (exact.empty()) exact.assign(bounds.size(), 0);
  if (exact.size() != bounds.size()) throw InputError("GeqProblem: exact flags length mismatch");
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    if (bounds[j].is_pos_inf()) throw InputError("GeqProblem: bound +∞ is not allowed");
    if (exact[j] && (!prime.is_two() || !bounds[j].is_finite()))
      throw InputError("GeqProblem: exact valuation flags require p = 2 and a finite bound");
  }
}

Verdict solve_geq(GeqProblem prob, GeqTrace* trace) {
  prob.validate();
  const Prime& p = prob.prime;
  const std::size_t m = prob.a.rows();
  const std::size_t n = prob.a.cols();

  EchelonResult ech = f_minimal_echelon(prob.a, PivotSpec(p, prob.bounds, prob.exact));
  const QVector rhs = ech.u * prob.b;
  std::vector<ExtInt> c(n);
  std::vector<std::uint8_t> delta(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = prob.bounds[ech.sigma[j]];
    delta[j] = prob.exact[ech.sigma[j]];
  }
  const QMatrix& b = ech.b;
  const std::size_t k = ech.rank();

  auto finish = [&](Verdict v, std::size_t failed_row) {
    if (trace) *trace = GeqTrace{std::move(ech), rhs, c, delta, failed_row};
    return v;
  };

  // Condition (1): zero rows need zero right-hand sides.
  for (std::size_t i = k; i < m; ++i)
    if (rhs[i] != 0)
      return finish(Verdict::unsat("inconsistent_equations", "A·x = b has no rational solution"), i);

  // b_i − Σ_{j ≥ j_i} δ_j a_ij p^{c_j} as a power sum.
  auto shifted_rhs = [&](std::size_t i) {
    PowerSum s = PowerSum::constant(p, rhs[i]);
    for (std::size_t j = i; j < n; ++j)
      if (delta[j] && b(i, j) != 0) s -= PowerSum::monomial(p, b(i, j), c[j].value());
    return s;
  };

  // Condition (2): vp(a_{i j_i}) + c_{j_i} + δ_{j_i} ≤ vp(shifted rhs). Pivot j_i = i.
  for (std::size_t i = 0; i < k; ++i) {
    if (c[i].is_neg_inf()) continue;  // left side is −∞
    const ExtInt lhs = vp(b(i, i), p) + c[i] + ExtInt(long(delta[i]));
    const ExtInt rhs_val = powersum_val(shifted_rhs(i));
    if (lhs > rhs_val) {
      const std::size_t var = ech.sigma[i];
      return finish(Verdict::unsat("valuation_bound",
                                   "row " + std::to_string(i) + " of the echelon form needs valuation " +
                                       lhs.to_string() + " but its right-hand side has " +
                                       rhs_val.to_string() + " (pivot variable " +
                                       std::to_string(var) + ")",
                                   {var}),
                    i);
    }
  }

  // Non-pivots get p^{c_j} (0 when unconstrained); pivots by back-substitution.
  std::vector<PowerSum> y(n, PowerSum(p));
  for (std::size_t j = k; j < n; ++j)
    if (c[j].is_finite()) y[j] = PowerSum::monomial(p, 1, c[j].value());
  for (std::size_t i = k; i-- > 0;) {
    PowerSum acc = PowerSum::constant(p, rhs[i]);
    for (std::size_t j = i + 1; j < n; ++j)
      if (b(i, j) != 0 && !y[j].empty()) acc -= y[j] * b(i, j);
    y[i] = std::move(acc) * Rational(1 / b(i, i));
  }

  Witness witness(n, Value(Rational(0)));
  for (std::size_t j = 0; j < n; ++j) witness[ech.sigma[j]] = std::move(y[j]);
  return finish(Verdict::sat(std::move(witness)), k);
}

}  // namespace padic
