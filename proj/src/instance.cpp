#include "padic/instance.hpp"

#include <algorithm>

namespace padic {

const char* to_string(ValRel r) {
  switch (r) {
    case ValRel::Le: return "<=";
    case ValRel::Ge: return ">=";
    case ValRel::Eq: return "==";
    case ValRel::Ne: return "!=";
    case ValRel::Lt: return "<";
    case ValRel::Gt: return ">";
  }
  return "?";
}

const char* to_string(OrdRel r) { return r == OrdRel::Lt ? "<" : "<="; }

std::optional<std::size_t> Instance::index_of(const std::string& name) const {
  const auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

void Instance::validate() const {
  const std::size_t n = variables.size();
  for (const auto& e : equations)
    if (e.coeffs.size() != n) throw InputError("equation has wrong number of coefficients");
  for (const auto& o : orders)
    if (o.coeffs.size() != n) throw InputError("order constraint has wrong number of coefficients");
  for (const auto& v : valuations)
    if (v.var >= n) throw InputError("valuation constraint references an undeclared variable");
}

std::vector<Prime> Instance::primes() const {
  std::vector<Prime> out;
  for (const auto& v : valuations)
    if (std::find(out.begin(), out.end(), v.prime) == out.end()) out.push_back(v.prime);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

QMatrix matrix_of(const std::vector<Equation>& eqs, std::size_t n) {
  QMatrix a(eqs.size(), n);
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = eqs[i].coeffs[j];
  return a;
}

QVector rhs_of(const std::vector<Equation>& eqs) {
  QVector b;
  b.reserve(eqs.size());
  for (const auto& e : eqs) b.push_back(e.rhs);
  return b;
}

}  // namespace

QMatrix Instance::equation_matrix() const { return matrix_of(equations, variables.size()); }
QVector Instance::equation_rhs() const { return rhs_of(equations); }
QMatrix NormalizedInstance::equation_matrix() const { return matrix_of(equations, variables.size()); }
QVector NormalizedInstance::equation_rhs() const { return rhs_of(equations); }

const PrimeProfile* NormalizedInstance::profile_for(const Prime& p) const {
  for (const auto& pp : primes)
    if (pp.prime == p) return &pp;
  return nullptr;
}

bool VarProfile::admits(const ExtInt& v) const {
  if (v.is_pos_inf()) return allow_zero;
  if (v < lower || v > upper) return false;
  return !std::binary_search(excluded.begin(), excluded.end(), v.value());
}

// ---------------------------------------------------------------------------

NormalizeResult normalize(const Instance& inst) {
  inst.validate();
  NormalizedInstance out;
  out.variables = inst.variables;
  out.equations = inst.equations;
  out.orders = inst.orders;

  for (const Prime& p : inst.primes()) {
    PrimeProfile pp{p, std::vector<VarProfile>(inst.size()), {}};
    std::vector<bool> has_eq(inst.size(), false);
    for (const auto& c : inst.valuations) {
      if (c.prime != p) continue;
      VarProfile& prof = pp.vars[c.var];
      ValRel rel = c.rel;
      BigInt bound = c.bound;
      if (rel == ValRel::Lt) {
        rel = ValRel::Le;
        bound -= 1;
      } else if (rel == ValRel::Gt) {
        rel = ValRel::Ge;
        bound += 1;
      }
      switch (rel) {
        case ValRel::Ge:
          pp.kinds.ge = true;
          prof.lower = std::max(prof.lower, ExtInt(bound));
          break;
        case ValRel::Le:
          pp.kinds.le = true;
          prof.upper = std::min(prof.upper, ExtInt(bound));
          prof.allow_zero = false;
          break;
        case ValRel::Eq:
          pp.kinds.eq = true;
          prof.lower = std::max(prof.lower, ExtInt(bound));
          prof.upper = std::min(prof.upper, ExtInt(bound));
          prof.allow_zero = false;
          has_eq[c.var] = true;
          break;
        case ValRel::Ne:
          pp.kinds.ne = true;
          prof.excluded.push_back(bound);
          break;
        default: break;
      }
    }

    for (std::size_t j = 0; j < inst.size(); ++j) {
      VarProfile& prof = pp.vars[j];
      auto& d = prof.excluded;
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
      std::erase_if(d, [&](const BigInt& x) { return ExtInt(x) < prof.lower || ExtInt(x) > prof.upper; });

      if (prof.lower > prof.upper)
        return ImmediateUnsat{p, j, "empty valuation window [" + prof.lower.to_string() + ", " +
                                        prof.upper.to_string() + "] for " + inst.variables[j]};
      if (prof.lower.is_finite() && prof.upper.is_finite()) {
        const BigInt width = prof.upper.value() - prof.lower.value() + 1;
        if (BigInt(d.size()) >= width)
          return ImmediateUnsat{p, j, "every valuation in [" + prof.lower.to_string() + ", " +
                                          prof.upper.to_string() + "] is excluded for " +
                                          inst.variables[j]};
      }
      // δ flags exist only for p = 2; = at p ≥ 3 stays an l = u window.
      prof.exact = p.is_two() && has_eq[j];
    }
    out.primes.push_back(std::move(pp));
  }
  return out;
}

Instance to_instance(const NormalizedInstance& n) {
  Instance inst;
  inst.variables = n.variables;
  inst.equations = n.equations;
  inst.orders = n.orders;
  for (const auto& pp : n.primes) {
    for (std::size_t j = 0; j < pp.vars.size(); ++j) {
      const VarProfile& prof = pp.vars[j];
      const bool equal = prof.lower.is_finite() && prof.lower == prof.upper;
      if (equal && (prof.exact || !pp.prime.is_two())) {
        inst.valuations.push_back({pp.prime, j, ValRel::Eq, prof.lower.value()});
      } else {
        if (prof.lower.is_finite()) inst.valuations.push_back({pp.prime, j, ValRel::Ge, prof.lower.value()});
        if (prof.upper.is_finite()) inst.valuations.push_back({pp.prime, j, ValRel::Le, prof.upper.value()});
      }
      for (const auto& d : prof.excluded) inst.valuations.push_back({pp.prime, j, ValRel::Ne, d});
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::None: return "NONE";
    case Fragment::GeqP: return "GEQ_P";
    case Fragment::LeqP: return "LEQ_P";
    case Fragment::Hard: return "HARD";
  }
  return "?";
}

const char* complexity_label(Fragment f) {
  return f == Fragment::Hard ? "NP-complete" : "in P";
}

Fragment classify_kinds(const Prime& p, const KindSet& k) {
  if (!k.any()) return Fragment::None;
  const bool lower_side = p.is_two() ? (k.ge || k.eq) : k.ge;
  const bool upper_side = k.le || k.ne;
  if (!p.is_two() && k.eq) return Fragment::Hard;
  if (lower_side && upper_side) return Fragment::Hard;
  return lower_side ? Fragment::GeqP : Fragment::LeqP;
}

FragmentClass classify(const NormalizedInstance& n) {
  FragmentClass fc;
  for (const auto& pp : n.primes) fc.per_prime.emplace_back(pp.prime, classify_kinds(pp.prime, pp.kinds));
  fc.has_order = !n.orders.empty();
  fc.multi_prime = n.primes.size() > 1;
  return fc;
}

// ---------------------------------------------------------------------------

BigInt rational_height(const Rational& q) {
  if (q == 0) return 1;
  return BigInt(1) + BigInt(ceil_log2(q.get_num())) + BigInt(ceil_log2(q.get_den()));
}

BigInt instance_size(const Instance& inst) {
  const std::size_t n = inst.size();
  std::size_t s = 0;
  BigInt total = 0;
  if (!inst.equations.empty()) {
    s = std::max({s, inst.equations.size(), n});
    for (const auto& e : inst.equations) {
      for (const auto& a : e.coeffs) total += rational_height(a);
      total += rational_height(e.rhs);
    }
  }
  if (!inst.orders.empty()) {
    s = std::max({s, inst.orders.size(), n});
    for (const auto& o : inst.orders) {
      for (const auto& a : o.coeffs) total += rational_height(a);
      total += rational_height(o.rhs);
    }
  }
  // Each prime and bound is a 1×1 matrix.
  for (const auto& v : inst.valuations) {
    s = std::max<std::size_t>(s, 1);
    total += rational_height(Rational(v.prime.value())) + rational_height(Rational(v.bound));
  }
  return BigInt(s) + total;
}

// ---------------------------------------------------------------------------

const char* to_string(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(const Value& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return to_string(*q);
  return std::get<PowerSum>(v).to_string();
}

Verdict Verdict::sat(Witness w, std::string reason) {
  Verdict v;
  v.status = Status::Sat;
  v.witness = std::move(w);
  v.code = "sat";
  v.reason = std::move(reason);
  return v;
}

Verdict Verdict::sat_without_witness(std::string reason) {
  Verdict v;
  v.status = Status::Sat;
  v.code = "sat_decision_only";
  v.reason = std::move(reason);
  return v;
}

Verdict Verdict::unsat(std::string code, std::string reason, std::vector<std::size_t> vars) {
  Verdict v;
  v.status = Status::Unsat;
  v.code = std::move(code);
  v.reason = std::move(reason);
  v.variables = std::move(vars);
  return v;
}

Verdict Verdict::unknown(std::string code, std::string reason, std::vector<std::size_t> vars) {
  Verdict v;
  v.status = Status::Unknown;
  v.code = std::move(code);
  v.reason = std::move(reason);
  v.variables = std::move(vars);
  return v;
}

}  // namespace padic
