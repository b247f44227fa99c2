#include "padic/testkit.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace padic {

void Graph::validate() const {
  for (const auto& [u, v] : edges) {
    if (u == v) throw InputError("graph: self-loop at vertex " + std::to_string(u));
    if (u >= vertices || v >= vertices) throw InputError("graph: edge endpoint out of range");
  }
}

Graph Graph::complete(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g{n, {}};
  if (n < 3) throw InputError("graph: a cycle needs at least 3 vertices");
  for (std::size_t u = 0; u < n; ++u) g.edges.emplace_back(std::min(u, (u + 1) % n), std::max(u, (u + 1) % n));
  return g;
}

Graph Graph::random(std::uint64_t seed, std::size_t n, double density) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.edges.emplace_back(u, v);
  return g;
}

Instance encode_coloring(const Graph& g, const Prime& p, unsigned long e) {
  g.validate();
  if (e == 0) throw InputError("encode_coloring: e must be positive");
  Instance inst;
  const std::size_t n = g.vertices;
  const std::size_t total = n + g.edges.size();
  for (std::size_t v = 0; v < n; ++v) inst.variables.push_back("x" + std::to_string(v));
  for (std::size_t k = 0; k < g.edges.size(); ++k) inst.variables.push_back("w" + std::to_string(k));
  for (std::size_t v = 0; v < n; ++v) inst.valuations.push_back({p, v, ValRel::Ge, 0});
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto [u, v] = g.edges[k];
    const std::size_t w = n + k;
    QVector row(total);
    row[v] = 1;
    row[w] = 1;
    row[u] = -1;
    inst.equations.push_back({std::move(row), 0});
    inst.valuations.push_back({p, w, ValRel::Le, BigInt(e - 1)});
    inst.valuations.push_back({p, w, ValRel::Ge, 0});
  }
  return inst;
}

bool brute_color(const Graph& g, std::size_t k) {
  g.validate();
  if (g.vertices > 10) throw InputError("brute_color: at most 10 vertices");
  std::vector<std::vector<std::size_t>> adj(g.vertices);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::size_t> color(g.vertices, k);
  std::function<bool(std::size_t)> assign = [&](std::size_t v) {
    if (v == g.vertices) return true;
    for (std::size_t c = 0; c < k; ++c) {
      if (std::any_of(adj[v].begin(), adj[v].end(), [&](std::size_t u) { return color[u] == c; })) continue;
      color[v] = c;
      if (assign(v + 1)) return true;
    }
    color[v] = k;
    return false;
  };
  return assign(0);
}

bool smith_oracle_geq(const GeqProblem& prob, const BigInt& guard) {
  GeqProblem checked = prob;
  checked.validate();
  const Prime& p = prob.prime;
  const std::size_t m = prob.a.rows();
  const std::size_t n = prob.a.cols();
  std::vector<std::size_t> bounded, unbounded;
  for (std::size_t j = 0; j < n; ++j) {
    if (checked.exact[j]) throw InputError("smith_oracle_geq: exact valuation flags are not supported");
    if (prob.bounds[j].is_neg_inf()) {
      unbounded.push_back(j);
    } else if (abs(prob.bounds[j].value()) > guard) {
      throw GuardError("smith_oracle_geq: bound " + prob.bounds[j].to_string() + " exceeds guard");
    } else {
      bounded.push_back(j);
    }
  }

  // Unconstrained columns: Ax = b is solvable in x_F iff N·(b − A_G x_G) = 0
  // for a basis N of the left kernel of A_F.
  std::vector<QVector> left;
  if (unbounded.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      QVector e(m);
      e[i] = 1;
      left.push_back(std::move(e));
    }
  } else {
    QMatrix aft(unbounded.size(), m);
    for (std::size_t r = 0; r < unbounded.size(); ++r)
      for (std::size_t i = 0; i < m; ++i) aft(r, i) = prob.a(i, unbounded[r]);
    left = solve_affine(aft, QVector(unbounded.size()))->basis;
  }

  // Reduced system over z_j = x_j / p^{c_j} ∈ ℤ_(p).
  QMatrix red(left.size(), bounded.size());
  QVector rhs(left.size());
  for (std::size_t r = 0; r < left.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) rhs[r] += left[r][i] * prob.b[i];
    for (std::size_t c = 0; c < bounded.size(); ++c) {
      const std::size_t j = bounded[c];
      Rational s = 0;
      for (std::size_t i = 0; i < m; ++i) s += left[r][i] * prob.a(i, j);
      red(r, c) = s * prime_power(p, prob.bounds[j].value(), guard);
    }
  }
  if (bounded.empty()) return std::all_of(rhs.begin(), rhs.end(), [](const Rational& q) { return q == 0; });

  auto [z, zr] = clear_denominators(red, rhs);
  const SmithForm snf = smith_normal_form(z);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    BigInt ub = 0;
    for (std::size_t k = 0; k < z.rows(); ++k) ub += snf.u(i, k) * zr[k];
    if (i >= snf.rank) {
      if (ub != 0) return false;
    } else if (vp(Rational(snf.d(i, i)), p) > vp(Rational(ub), p)) {
      return false;
    }
  }
  return true;
}

namespace {

// Uniform representation for one check: a power sum in `prime`, or a rational.
struct Evaluator {
  const Witness& w;
  const BigInt& guard;

  Rational materialize(std::size_t j) const {
    if (const auto* q = std::get_if<Rational>(&w[j])) return *q;
    return powersum_materialize(std::get<PowerSum>(w[j]), guard);
  }
  // Exact zero test of Σ coeffs_j w_j − rhs.
  bool residual_zero(const QVector& coeffs, const Rational& rhs) const {
    bool mixed = false;
    std::optional<Prime> p;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0) continue;
      if (const auto* s = std::get_if<PowerSum>(&w[j])) {
        if (p && *p != s->prime()) mixed = true;
        p = s->prime();
      }
    }
    if (!p || mixed) {
      Rational r = -rhs;
      for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (coeffs[j] != 0) r += coeffs[j] * materialize(j);
      return r == 0;
    }
    PowerSum r = PowerSum::constant(*p, -rhs);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0) continue;
      if (const auto* q = std::get_if<Rational>(&w[j])) r += PowerSum::constant(*p, *q * coeffs[j]);
      else r += std::get<PowerSum>(w[j]) * coeffs[j];
    }
    return powersum_val(r).is_pos_inf();
  }
  ExtInt valuation(std::size_t j, const Prime& p) const {
    if (const auto* q = std::get_if<Rational>(&w[j])) return vp(*q, p);
    const auto& s = std::get<PowerSum>(w[j]);
    if (s.prime() == p) return powersum_val(s);
    return vp(powersum_materialize(s, guard), p);
  }
};

bool holds(ValRel rel, const ExtInt& v, const BigInt& c) {
  const ExtInt b(c);
  switch (rel) {
    case ValRel::Le: return v <= b;
    case ValRel::Ge: return v >= b;
    case ValRel::Eq: return v == b;
    case ValRel::Ne: return v != b;
    case ValRel::Lt: return v < b;
    case ValRel::Gt: return v > b;
  }
  return false;
}

}  // namespace

WitnessCheck verify_witness(const Instance& inst, const Witness& w, const BigInt& guard) {
  inst.validate();
  if (w.size() != inst.size())
    return {false, "witness has " + std::to_string(w.size()) + " coordinates, expected " +
                       std::to_string(inst.size())};
  Evaluator ev{w, guard};
  try {
    for (std::size_t i = 0; i < inst.equations.size(); ++i)
      if (!ev.residual_zero(inst.equations[i].coeffs, inst.equations[i].rhs))
        return {false, "equation " + std::to_string(i) + " has a nonzero residual"};
    for (const auto& c : inst.valuations) {
      const ExtInt v = ev.valuation(c.var, c.prime);
      if (!holds(c.rel, v, c.bound))
        return {false, "valuation: v_" + c.prime.to_string() + "(" + inst.variables[c.var] + ") = " +
                           v.to_string() + " violates " + to_string(c.rel) + " " + c.bound.get_str()};
    }
    for (std::size_t i = 0; i < inst.orders.size(); ++i) {
      const auto& o = inst.orders[i];
      Rational s = 0;
      for (std::size_t j = 0; j < o.coeffs.size(); ++j)
        if (o.coeffs[j] != 0) s += o.coeffs[j] * ev.materialize(j);
      const bool ok = o.rel == OrdRel::Lt ? s < o.rhs : s <= o.rhs;
      if (!ok) return {false, "order constraint " + std::to_string(i) + " is violated"};
    }
  } catch (const GuardError& e) {
    return {false, std::string("cannot materialize witness: ") + e.what()};
  }
  return {};
}

namespace {

BigInt draw(std::mt19937_64& rng, long lo, long hi) {
  return BigInt(std::uniform_int_distribution<long>(lo, hi)(rng));
}

BigInt draw_nonzero(std::mt19937_64& rng, long mag) {
  long v = 0;
  while (v == 0) v = std::uniform_int_distribution<long>(-mag, mag)(rng);
  return BigInt(v);
}

// A constraint on a variable whose planted value has valuation v (∞ for 0).
ValuationConstraint planted_constraint(std::mt19937_64& rng, const Prime& p, std::size_t var, Fragment frag,
                                       const ExtInt& v, long bound_max) {
  const BigInt slack = draw(rng, 0, 2);
  const BigInt other = draw(rng, -bound_max, bound_max);
  const bool zero = v.is_pos_inf();
  auto ne = [&] {
    BigInt d = other;
    if (!zero && d == v.value()) d += 1;
    return ValuationConstraint{p, var, ValRel::Ne, d};
  };
  switch (frag) {
    case Fragment::GeqP: {
      if (!zero && p.is_two() && std::bernoulli_distribution(0.25)(rng))
        return {p, var, ValRel::Eq, v.value()};
      return {p, var, ValRel::Ge, zero ? other : BigInt(v.value() - slack)};
    }
    case Fragment::LeqP:
      if (zero || std::bernoulli_distribution(0.4)(rng)) return ne();
      return {p, var, ValRel::Le, BigInt(v.value() + slack)};
    default: {
      const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
      if (zero) return kind < 2 ? ValuationConstraint{p, var, ValRel::Ge, other} : ne();
      switch (kind) {
        case 0: return {p, var, ValRel::Ge, BigInt(v.value() - slack)};
        case 1: return {p, var, ValRel::Le, BigInt(v.value() + slack)};
        case 2: return {p, var, ValRel::Eq, v.value()};
        default: return ne();
      }
    }
  }
}

ValuationConstraint free_constraint(std::mt19937_64& rng, const Prime& p, std::size_t var, Fragment frag,
                                    long bound_max) {
  const BigInt c = draw(rng, -bound_max, bound_max);
  switch (frag) {
    case Fragment::GeqP:
      if (p.is_two() && std::bernoulli_distribution(0.25)(rng)) return {p, var, ValRel::Eq, c};
      return {p, var, ValRel::Ge, c};
    case Fragment::LeqP:
      return {p, var, std::bernoulli_distribution(0.5)(rng) ? ValRel::Le : ValRel::Ne, c};
    default: {
      static constexpr ValRel kinds[] = {ValRel::Ge, ValRel::Le, ValRel::Eq, ValRel::Ne};
      return {p, var, kinds[std::uniform_int_distribution<int>(0, 3)(rng)], c};
    }
  }
}

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomParams& params) {
  std::mt19937_64 rng(seed);
  const std::size_t n = params.vars;
  const std::size_t m = params.equations;
  std::vector<Prime> primes;
  for (auto q : params.primes) primes.emplace_back(q);

  Instance inst;
  for (std::size_t j = 0; j < n; ++j) inst.variables.push_back("x" + std::to_string(j));

  // Hidden solution: ± unit · Π p^k, occasionally 0.
  QVector hidden(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::bernoulli_distribution(0.1)(rng)) continue;
    Rational x = Rational(draw_nonzero(rng, params.coeff_max));
    for (const auto& p : primes) {
      const long k = std::uniform_int_distribution<long>(-params.bound_max, params.bound_max)(rng);
      x *= prime_power(p, k, 1024);
    }
    hidden[j] = x;
  }

  for (std::size_t i = 0; i < m; ++i) {
    QVector row(n);
    if (params.row_support == 0 || params.row_support >= n) {
      for (auto& a : row) a = draw(rng, -params.coeff_max, params.coeff_max);
    } else {
      std::vector<std::size_t> cols(n);
      for (std::size_t j = 0; j < n; ++j) cols[j] = j;
      std::shuffle(cols.begin(), cols.end(), rng);
      for (std::size_t k = 0; k < params.row_support; ++k) row[cols[k]] = draw_nonzero(rng, params.coeff_max);
    }
    Rational rhs = 0;
    if (params.planted) {
      for (std::size_t j = 0; j < n; ++j) rhs += row[j] * hidden[j];
    } else {
      rhs = Rational(draw(rng, -params.coeff_max, params.coeff_max));
    }
    inst.equations.push_back({std::move(row), rhs});
  }

  if (params.fragment != Fragment::None) {
    std::bernoulli_distribution use(params.constraint_rate);
    for (const auto& p : primes)
      for (std::size_t j = 0; j < n; ++j) {
        if (!use(rng)) continue;
        if (params.planted) {
          const ExtInt v = vp(hidden[j], p);
          inst.valuations.push_back(planted_constraint(rng, p, j, params.fragment, v, params.bound_max));
          // Hard instances get a second, window-closing side half of the time.
          if (params.fragment == Fragment::Hard && v.is_finite() && std::bernoulli_distribution(0.5)(rng)) {
            inst.valuations.push_back({p, j, ValRel::Ge, BigInt(v.value() - draw(rng, 0, 2))});
            inst.valuations.push_back({p, j, ValRel::Le, BigInt(v.value() + draw(rng, 0, 2))});
          }
        } else {
          inst.valuations.push_back(free_constraint(rng, p, j, params.fragment, params.bound_max));
          if (params.fragment == Fragment::Hard && std::bernoulli_distribution(0.5)(rng)) {
            const BigInt lo = draw(rng, -params.bound_max, params.bound_max);
            inst.valuations.push_back({p, j, ValRel::Ge, lo});
            inst.valuations.push_back({p, j, ValRel::Le, BigInt(lo + draw(rng, 0, 3))});
          }
        }
      }
  }

  std::bernoulli_distribution order(params.order_rate);
  for (std::size_t j = 0; j < n; ++j) {
    if (!order(rng)) continue;
    QVector coeffs(n);
    coeffs[j] = 1;
    const bool strict = std::bernoulli_distribution(0.5)(rng);
    Rational rhs = params.planted ? Rational(hidden[j] + (strict ? 1 : 0))
                                  : Rational(draw(rng, -params.coeff_max, params.coeff_max));
    inst.orders.push_back({std::move(coeffs), strict ? OrdRel::Lt : OrdRel::Le, rhs});
  }
  return inst;
}

GeqProblem random_geq_problem(std::uint64_t seed, std::size_t vars, std::size_t equations, long coeff_max,
                              long cmin, long cmax, const Prime& p) {
  std::mt19937_64 rng(seed);
  GeqProblem prob{QMatrix(equations, vars), QVector(equations), p, {}, {}};
  for (std::size_t i = 0; i < equations; ++i)
    for (std::size_t j = 0; j < vars; ++j) prob.a(i, j) = draw(rng, -coeff_max, coeff_max);
  for (std::size_t j = 0; j < vars; ++j) prob.bounds.emplace_back(draw(rng, cmin, cmax));
  prob.exact.assign(vars, 0);
  if (std::bernoulli_distribution(0.5)(rng)) {
    // Right-hand side from a point whose valuations straddle the bounds.
    QVector x(vars);
    for (std::size_t j = 0; j < vars; ++j) {
      const long k = prob.bounds[j].value().get_si() + std::uniform_int_distribution<long>(-1, 2)(rng);
      x[j] = Rational(draw_nonzero(rng, coeff_max)) * prime_power(p, k, 1024);
    }
    prob.b = prob.a * x;
  } else {
    for (auto& v : prob.b) v = Rational(draw(rng, -coeff_max, coeff_max)) * prime_power(p, draw(rng, cmin, cmax), 1024);
  }
  return prob;
}

bool perturb_witness(const Instance& inst, Witness& w, std::uint64_t seed) {
  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < inst.size(); ++j)
    if (std::any_of(inst.equations.begin(), inst.equations.end(),
                    [&](const Equation& e) { return e.coeffs[j] != 0; }))
      candidates.push_back(j);
  if (candidates.empty()) return false;
  std::mt19937_64 rng(seed);
  const std::size_t j = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  if (auto* q = std::get_if<Rational>(&w[j])) {
    *q += 1;
    return true;
  }
  auto& s = std::get<PowerSum>(w[j]);
  if (s.empty()) {
    s = PowerSum::constant(s.prime(), 1);
    return true;
  }
  std::vector<Term> terms(s.terms().begin(), s.terms().end());
  Term& t = terms[std::uniform_int_distribution<std::size_t>(0, terms.size() - 1)(rng)];
  t.coeff += t.coeff == -1 ? 2 : 1;
  s = PowerSum(s.prime(), std::move(terms));
  return true;
}

}  // namespace padic
