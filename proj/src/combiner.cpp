#include "padic/combiner.hpp"

namespace padic {

GeqProblem to_geq_problem(const NormalizedInstance& inst, const PrimeProfile& pp) {
  GeqProblem prob{inst.equation_matrix(), inst.equation_rhs(), pp.prime, {}, {}};
  for (const auto& v : pp.vars) {
    if (v.upper.is_finite() && !v.exact) throw InputError("variable has an upper valuation bound");
    prob.bounds.push_back(v.lower);
    prob.exact.push_back(v.exact ? 1 : 0);
  }
  return prob;
}

LeqProblem to_leq_problem(const NormalizedInstance& inst, const PrimeProfile& pp) {
  LeqProblem prob{inst.equation_matrix(), inst.equation_rhs(), pp.prime, {}, {}};
  for (const auto& v : pp.vars) {
    if (!v.lower.is_neg_inf()) throw InputError("variable has a lower valuation bound");
    prob.bounds.push_back(v.upper);
    prob.excluded.push_back(v.excluded);
  }
  return prob;
}

Verdict solve_single_prime(const Instance& inst, const SolveOptions& opts) {
  inst.validate();
  if (!inst.orders.empty()) throw InputError("solve_single_prime: order constraints present");
  NormalizeResult nr = normalize(inst);
  if (auto* bad = std::get_if<ImmediateUnsat>(&nr))
    return Verdict::unsat("empty_window", bad->reason, {bad->var});
  const auto& norm = std::get<NormalizedInstance>(nr);
  if (norm.primes.size() > 1) throw InputError("solve_single_prime: more than one prime");

  if (norm.primes.empty()) {
    auto space = solve_affine(norm.equation_matrix(), norm.equation_rhs());
    if (!space) return Verdict::unsat("inconsistent_equations", "A·x = b has no rational solution");
    return Verdict::sat(Witness(space->particular.begin(), space->particular.end()));
  }

  const PrimeProfile& pp = norm.primes.front();
  const Fragment frag = classify_kinds(pp.prime, pp.kinds);
  Verdict v;
  switch (frag) {
    case Fragment::GeqP: v = solve_geq(to_geq_problem(norm, pp)); break;
    case Fragment::LeqP: v = solve_leq(to_leq_problem(norm, pp)); break;
    case Fragment::None: {
      auto space = solve_affine(norm.equation_matrix(), norm.equation_rhs());
      v = space ? Verdict::sat(Witness(space->particular.begin(), space->particular.end()))
                : Verdict::unsat("inconsistent_equations", "A·x = b has no rational solution");
      break;
    }
    case Fragment::Hard: {
      CompleteOptions co;
      co.window = opts.window;
      co.threads = opts.threads;
      co.guard = opts.guard;
      v = solve_complete(norm, co);
      break;
    }
  }
  v.diagnostics.insert(v.diagnostics.begin(),
                       "p=" + pp.prime.to_string() + " fragment " + to_string(frag));
  return v;
}

LPSystem order_system(const Instance& inst) {
  LPSystem sys;
  sys.num_vars = inst.size();
  for (const auto& e : inst.equations) {
    sys.eq_lhs.push_back(e.coeffs);
    sys.eq_rhs.push_back(e.rhs);
  }
  for (const auto& o : inst.orders) {
    if (o.rel == OrdRel::Le) {
      sys.weak_lhs.push_back(o.coeffs);
      sys.weak_rhs.push_back(o.rhs);
    } else {
      sys.strict_lhs.push_back(o.coeffs);
      sys.strict_rhs.push_back(o.rhs);
    }
  }
  return sys;
}

namespace {

std::string render_certificate(const FarkasCertificate& c) {
  auto list = [](const QVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
  };
  return "Farkas multipliers: equations " + list(c.y) + ", weak " + list(c.z) + ", strict " + list(c.w);
}

}  // namespace

Verdict solve_combined(const Instance& inst, const SolveOptions& opts, CombinedTrace* trace) {
  inst.validate();
  CombinedTrace local;
  CombinedTrace& tr = trace ? *trace : local;
  tr = {};

  const LPSystem sys = order_system(inst);
  tr.strictify = strictify(sys);
  const StrictifyResult& st = tr.strictify;
  if (!st.feasible) {
    Verdict v = Verdict::unsat("order_infeasible",
                               "equations and order constraints have no common rational solution");
    v.diagnostics = st.trace;
    if (st.certificate) v.diagnostics.push_back(render_certificate(*st.certificate));
    return v;
  }

  // φ_= extended by the weak constraints that cannot hold strictly.
  Instance base;
  base.variables = inst.variables;
  for (std::size_t i = 0; i < st.residual.eq_lhs.size(); ++i)
    base.equations.push_back({st.residual.eq_lhs[i], st.residual.eq_rhs[i]});

  const std::vector<Prime> primes = inst.primes();
  if (primes.empty()) {
    Verdict v = Verdict::sat(Witness(st.strict_point.begin(), st.strict_point.end()));
    v.diagnostics = st.trace;
    return v;
  }

  std::optional<Verdict> unknown;
  for (const Prime& p : primes) {
    Instance part = base;
    for (const auto& c : inst.valuations)
      if (c.prime == p) part.valuations.push_back(c);
    Verdict v = solve_single_prime(part, opts);
    tr.per_prime.emplace_back(p, v);
    if (v.is_unsat()) {
      Verdict out = Verdict::unsat(v.code, "p=" + p.to_string() + ": " + v.reason, v.variables);
      out.diagnostics = st.trace;
      out.diagnostics.insert(out.diagnostics.end(), v.diagnostics.begin(), v.diagnostics.end());
      return out;
    }
    if (v.is_unknown() && !unknown) unknown = Verdict::unknown(v.code, "p=" + p.to_string() + ": " + v.reason, v.variables);
  }
  if (unknown) {
    unknown->diagnostics = st.trace;
    return *unknown;
  }

  // A lone prime without order constraints: its witness solves the whole instance.
  if (primes.size() == 1 && inst.orders.empty()) {
    Verdict v = tr.per_prime.front().second;
    v.diagnostics.insert(v.diagnostics.begin(), st.trace.begin(), st.trace.end());
    return v;
  }
  Verdict out = Verdict::sat_without_witness(
      "each prime is satisfiable together with the equations and the order part is strictly "
      "feasible; no combined witness is constructed");
  out.diagnostics = st.trace;
  for (const auto& [p, v] : tr.per_prime) {
    std::string line = "p=" + p.to_string() + " witness:";
    if (v.witness)
      for (std::size_t j = 0; j < v.witness->size(); ++j)
        line += " " + inst.variables[j] + "=" + to_string((*v.witness)[j]);
    out.diagnostics.push_back(std::move(line));
  }
  return out;
}

Verdict solve(const Instance& inst, const SolveOptions& opts) {
  inst.validate();
  if (inst.orders.empty() && inst.primes().size() <= 1) return solve_single_prime(inst, opts);
  return solve_combined(inst, opts);
}

}  // namespace padic
