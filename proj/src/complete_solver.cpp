#include "padic/complete_solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>

namespace padic {

namespace {

// Working variable z with x_origin = offset + scale · z.
struct WorkVar {
  std::size_t origin = 0;
  VarProfile prof;
  Rational offset = 0;
  Rational scale = 1;
};

struct Node {
  QMatrix a;
  QVector b;
  std::vector<WorkVar> vars;
  std::size_t depth = 0;
};

enum class VarKind : std::uint8_t { Free, Geq, Leq, Mixed };

struct Outcome {
  Status status = Status::Unknown;
  std::vector<std::pair<std::size_t, PowerSum>> values;  // origin -> value of x
  std::string code;
  std::string reason;
  std::vector<std::size_t> culprits;  // origins

  static Outcome unsat(std::string code, std::string reason, std::vector<std::size_t> vars = {}) {
    return {Status::Unsat, {}, std::move(code), std::move(reason), std::move(vars)};
  }
  static Outcome unknown(std::string code, std::string reason, std::vector<std::size_t> vars = {}) {
    return {Status::Unknown, {}, std::move(code), std::move(reason), std::move(vars)};
  }
};

bool window_empty(const VarProfile& v) {
  if (v.lower > v.upper) return true;
  if (v.lower.is_finite() && v.upper.is_finite())
    return BigInt(v.excluded.size()) >= BigInt(v.upper.value() - v.lower.value() + 1);
  return false;
}

void prune_excluded(VarProfile& v) {
  std::erase_if(v.excluded,
                [&](const BigInt& d) { return ExtInt(d) < v.lower || ExtInt(d) > v.upper; });
}

class Search {
 public:
  Search(Prime p, const CompleteOptions& opts) : p_(std::move(p)), opts_(opts) {}

  Outcome solve(Node node);

  std::size_t nodes() const { return nodes_; }
  std::size_t leaves() const { return leaves_; }
  std::size_t pruned() const { return pruned_; }
  bool window_used() const { return window_used_; }

 private:
  VarKind kind_of(const VarProfile& v) const {
    if (v.is_free()) return VarKind::Free;
    if (v.lower.is_neg_inf()) return VarKind::Leq;
    if (v.upper.is_pos_inf() && v.excluded.empty()) return VarKind::Geq;
    if (v.exact) return VarKind::Geq;
    return VarKind::Mixed;
  }

  void canonicalize(VarProfile& v) const {
    prune_excluded(v);
    if (p_.is_two() && v.lower.is_finite() && v.lower == v.upper) {
      v.exact = true;
      v.allow_zero = false;
    }
  }

  std::optional<Outcome> propagate(Node& node) const;
  Outcome search_component(Node node);
  Outcome leaf_geq(const Node& node);
  Outcome leaf_leq(const Node& node);
  Outcome branch(const Node& node, std::size_t var);
  std::optional<Outcome> refute_by_relaxation(const Node& node);
  PowerSum lift(const WorkVar& w, const PowerSum& z) const {
    return PowerSum::constant(p_, w.offset) + z * w.scale;
  }
  PowerSum isolated_value(const VarProfile& v) const;

  Prime p_;
  CompleteOptions opts_;
  std::atomic<std::size_t> nodes_{0};
  std::atomic<std::size_t> leaves_{0};
  std::atomic<std::size_t> pruned_{0};
  std::atomic<bool> window_used_{false};
  std::atomic<bool> stop_{false};
};

// Raises lower bounds using vp(a_j x_j) ≥ min(vp(b), min_{k≠j} vp(a_k) + l_k).
// A variable whose bound reaches +∞ must be zero and is eliminated.
std::optional<Outcome> Search::propagate(Node& node) const {
  const std::size_t m = node.a.rows();
  const std::size_t n = node.a.cols();
  for (auto& w : node.vars) {
    canonicalize(w.prof);
    if (window_empty(w.prof))
      return Outcome::unsat("empty_window", "valuation window is empty", {w.origin});
  }
  std::vector<std::vector<ExtInt>> va(m, std::vector<ExtInt>(n, ExtInt::pos_inf()));
  std::vector<ExtInt> vb(m);
  for (std::size_t i = 0; i < m; ++i) {
    vb[i] = vp(node.b[i], p_);
    for (std::size_t j = 0; j < n; ++j)
      if (node.a(i, j) != 0) va[i][j] = vp(node.a(i, j), p_);
  }

  const std::size_t rounds = opts_.propagation_rounds ? opts_.propagation_rounds : std::max<std::size_t>(4 * n, 1);
  for (std::size_t round = 0; round < rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      // Two smallest vp(a_k) + l_k over the row, and the number of −∞ terms.
      std::size_t unbounded = 0;
      std::size_t unbounded_at = n;
      ExtInt first = ExtInt::pos_inf(), second = ExtInt::pos_inf();
      std::size_t first_at = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (node.a(i, k) == 0) continue;
        const ExtInt& l = node.vars[k].prof.lower;
        if (l.is_neg_inf()) {
          ++unbounded;
          unbounded_at = k;
          continue;
        }
        const ExtInt t = va[i][k] + l;
        if (t < first) {
          second = first;
          first = t;
          first_at = k;
        } else if (t < second) {
          second = t;
        }
      }
      if (unbounded > 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (node.a(i, j) == 0) continue;
        if (unbounded == 1 && unbounded_at != j) continue;
        ExtInt bound = std::min(vb[i], j == first_at ? second : first);
        WorkVar& w = node.vars[j];
        if (bound.is_pos_inf()) {
          if (!w.prof.allow_zero)
            return Outcome::unsat("forced_zero", "equations force a variable excluding 0 to be 0",
                                  {w.origin});
          for (std::size_t r = 0; r < m; ++r) {
            node.a(r, j) = 0;
            va[r][j] = ExtInt::pos_inf();
          }
          w.scale = 0;
          w.prof = VarProfile{};
          changed = true;
          break;  // row statistics are stale
        }
        bound = bound - va[i][j];
        if (bound > w.prof.lower) {
          w.prof.lower = bound;
          canonicalize(w.prof);
          if (window_empty(w.prof))
            return Outcome::unsat("propagation", "propagated lower bound empties the window",
                                  {w.origin});
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return std::nullopt;
}

PowerSum Search::isolated_value(const VarProfile& v) const {
  if (v.allow_zero) return PowerSum(p_);
  // upper is finite here; walk down to the first admissible valuation.
  BigInt val = v.upper.value();
  while (std::binary_search(v.excluded.begin(), v.excluded.end(), val)) val -= 1;
  return PowerSum::monomial(p_, 1, val);
}

Outcome Search::solve(Node node) {
  if (stop_) return Outcome::unknown("cancelled", "cancelled");
  if (auto fail = propagate(node)) return *fail;

  const std::size_t m = node.a.rows();
  const std::size_t n = node.a.cols();
  for (std::size_t i = 0; i < m; ++i)
    if (node.a.row_is_zero(i) && node.b[i] != 0)
      return Outcome::unsat("inconsistent_equations", "an equation reduced to 0 = nonzero");

  // Connected components of the variable/equation incidence graph.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(n, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t anchor = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (node.a(i, j) == 0) continue;
      touched[j] = true;
      if (anchor == n) anchor = j;
      else parent[find(j)] = find(anchor);
    }
  }

  Outcome result{Status::Sat, {}, {}, {}, {}};
  std::optional<Outcome> unknown;
  for (std::size_t j = 0; j < n; ++j) {
    if (touched[j]) continue;
    const WorkVar& w = node.vars[j];
    result.values.emplace_back(w.origin, lift(w, isolated_value(w.prof)));
  }
  for (std::size_t root = 0; root < n; ++root) {
    if (!touched[root] || find(root) != root) continue;
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < n; ++j)
      if (touched[j] && find(j) == root) cols.push_back(j);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j : cols)
        if (node.a(i, j) != 0) {
          rows.push_back(i);
          break;
        }
    Node sub;
    sub.depth = node.depth;
    sub.a = QMatrix(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) sub.a(r, c) = node.a(rows[r], cols[c]);
      sub.b.push_back(node.b[rows[r]]);
    }
    for (std::size_t c : cols) sub.vars.push_back(node.vars[c]);

    Outcome part = search_component(std::move(sub));
    if (part.status == Status::Unsat) return part;
    if (part.status == Status::Unknown) {
      if (!unknown) unknown = std::move(part);
      continue;
    }
    for (auto& v : part.values) result.values.push_back(std::move(v));
  }
  if (unknown) return *unknown;
  return result;
}

Outcome Search::leaf_geq(const Node& node) {
  ++leaves_;
  GeqProblem prob{node.a, node.b, p_, {}, {}};
  for (const auto& w : node.vars) {
    prob.bounds.push_back(w.prof.lower);
    prob.exact.push_back(w.prof.exact ? 1 : 0);
  }
  Verdict v = solve_geq(std::move(prob));
  if (!v.is_sat()) {
    std::vector<std::size_t> origins;
    for (std::size_t j : v.variables) origins.push_back(node.vars[j].origin);
    return Outcome::unsat("leaf_geq", v.reason, origins);
  }
  Outcome out{Status::Sat, {}, {}, {}, {}};
  for (std::size_t j = 0; j < node.vars.size(); ++j)
    out.values.emplace_back(node.vars[j].origin, lift(node.vars[j], std::get<PowerSum>((*v.witness)[j])));
  return out;
}

Outcome Search::leaf_leq(const Node& node) {
  ++leaves_;
  LeqProblem prob{node.a, node.b, p_, {}, {}};
  for (const auto& w : node.vars) {
    prob.bounds.push_back(w.prof.upper);
    prob.excluded.push_back(w.prof.excluded);
  }
  Verdict v = solve_leq(prob);
  if (!v.is_sat()) {
    std::vector<std::size_t> origins;
    for (std::size_t j : v.variables) origins.push_back(node.vars[j].origin);
    return Outcome::unsat("leaf_leq", v.reason, origins);
  }
  Outcome out{Status::Sat, {}, {}, {}, {}};
  for (std::size_t j = 0; j < node.vars.size(); ++j)
    out.values.emplace_back(node.vars[j].origin, lift(node.vars[j], std::get<PowerSum>((*v.witness)[j])));
  return out;
}

// Dropping the upper side (resp. the lower side) of every window yields a
// system the ≥-solver (resp. ≤-solver) decides exactly; Unsat there closes the node.
std::optional<Outcome> Search::refute_by_relaxation(const Node& node) {
  GeqProblem geq{node.a, node.b, p_, {}, {}};
  LeqProblem leq{node.a, node.b, p_, {}, {}};
  for (const auto& w : node.vars) {
    geq.bounds.push_back(w.prof.lower);
    geq.exact.push_back(w.prof.exact ? 1 : 0);
    leq.bounds.push_back(w.prof.upper);
    leq.excluded.push_back(w.prof.excluded);
  }
  if (Verdict v = solve_geq(std::move(geq)); v.is_unsat()) {
    ++pruned_;
    return Outcome::unsat("relaxation_geq", "the ≥-relaxation is unsatisfiable: " + v.reason);
  }
  if (Verdict v = solve_leq(leq); v.is_unsat()) {
    ++pruned_;
    return Outcome::unsat("relaxation_leq", "the ≤/≠-relaxation is unsatisfiable: " + v.reason);
  }
  return std::nullopt;
}

Outcome Search::search_component(Node node) {
  if (stop_) return Outcome::unknown("cancelled", "cancelled");
  if (++nodes_ > opts_.max_nodes)
    return Outcome::unknown("node_budget", "node budget of " + std::to_string(opts_.max_nodes) + " exhausted");

  bool has_geq = false, has_leq = false;
  std::vector<std::size_t> mixed;
  for (std::size_t j = 0; j < node.vars.size(); ++j) {
    switch (kind_of(node.vars[j].prof)) {
      case VarKind::Geq: has_geq = true; break;
      case VarKind::Leq: has_leq = true; break;
      case VarKind::Mixed: mixed.push_back(j); break;
      case VarKind::Free: break;
    }
  }
  if (mixed.empty() && !has_leq) return leaf_geq(node);
  if (mixed.empty() && !has_geq) return leaf_leq(node);
  if (auto refuted = refute_by_relaxation(node)) return *refuted;

  if (mixed.empty()) {
    std::vector<std::size_t> involved;
    for (const auto& w : node.vars)
      if (kind_of(w.prof) != VarKind::Free) involved.push_back(w.origin);
    if (!opts_.window)
      return Outcome::unknown("unbounded_mix",
                              "an equation component links ≥-constrained and ≤/≠-constrained "
                              "variables without finite windows",
                              involved);
    window_used_ = true;
    for (auto& w : node.vars)
      if (kind_of(w.prof) == VarKind::Leq) w.prof.lower = std::max(w.prof.lower, ExtInt(*opts_.window));
    return solve(std::move(node));
  }

  // Smallest finite window first (exact values have width 1), then ≥/≠ splits.
  std::size_t pick = mixed.front();
  std::optional<BigInt> best_width;
  for (std::size_t j : mixed) {
    const VarProfile& v = node.vars[j].prof;
    if (!v.upper.is_finite()) continue;
    BigInt width = v.upper.value() - v.lower.value() + 1 - BigInt(v.excluded.size());
    if (!best_width || width < *best_width) {
      best_width = width;
      pick = j;
    }
  }
  return branch(node, pick);
}

Outcome Search::branch(const Node& node, std::size_t var) {
  const WorkVar& w = node.vars[var];
  const VarProfile& prof = w.prof;

  // Exact valuations to enumerate, plus an optional raised-bound child.
  BigInt top = prof.upper.is_finite() ? prof.upper.value() : prof.excluded.back();
  if (BigInt(top - prof.lower.value()) >= BigInt(opts_.max_window_width))
    return Outcome::unknown("window_too_wide",
                            "valuation window of width " + BigInt(top - prof.lower.value() + 1).get_str() +
                                " exceeds the enumeration limit",
                            {w.origin});

  std::vector<Node> children;
  if (!prof.upper.is_finite()) {
    Node raised = node;
    raised.depth = node.depth + 1;
    VarProfile& r = raised.vars[var].prof;
    r.lower = ExtInt(BigInt(top + 1));
    r.excluded.clear();
    children.push_back(std::move(raised));
  }
  for (BigInt v = prof.lower.value(); v <= top; v += 1) {
    if (std::binary_search(prof.excluded.begin(), prof.excluded.end(), v)) continue;
    if (p_.is_two()) {
      Node child = node;
      child.depth = node.depth + 1;
      child.vars[var].prof = VarProfile{ExtInt(v), ExtInt(v), {}, true, false};
      children.push_back(std::move(child));
      continue;
    }
    // x = i·p^v + p^(v+1)·y with fresh y, vp(y) ≥ 0.
    Rational low, high;
    try {
      low = prime_power(p_, v, opts_.guard);
      high = prime_power(p_, BigInt(v + 1), opts_.guard);
    } catch (const GuardError& e) {
      return Outcome::unknown("guard", e.what(), {w.origin});
    }
    for (BigInt i = 1; i < p_.value(); i += 1) {
      Node child = node;
      child.depth = node.depth + 1;
      const Rational shift = Rational(i) * low;
      for (std::size_t r = 0; r < child.a.rows(); ++r) {
        if (child.a(r, var) == 0) continue;
        child.b[r] -= child.a(r, var) * shift;
        child.a(r, var) *= high;
      }
      WorkVar& cw = child.vars[var];
      cw.offset += cw.scale * shift;
      cw.scale *= high;
      cw.prof = VarProfile{ExtInt(0L), ExtInt::pos_inf(), {}, false, true};
      children.push_back(std::move(child));
    }
  }

  std::optional<Outcome> unknown;
  auto absorb = [&](Outcome o) -> std::optional<Outcome> {
    if (o.status == Status::Sat) return o;
    if (o.status == Status::Unknown && !unknown && o.code != "cancelled") unknown = std::move(o);
    return std::nullopt;
  };

  if (opts_.threads > 1 && node.depth == 0 && children.size() > 1) {
    std::optional<Outcome> found;
    for (std::size_t start = 0; start < children.size() && !found; start += opts_.threads) {
      std::vector<std::future<Outcome>> batch;
      for (std::size_t c = start; c < std::min(children.size(), start + opts_.threads); ++c)
        batch.push_back(std::async(std::launch::async, [this, child = std::move(children[c])]() mutable {
          Outcome o = solve(std::move(child));
          if (o.status == Status::Sat) stop_ = true;
          return o;
        }));
      for (auto& f : batch)
        if (auto sat = absorb(f.get()); sat && !found) found = std::move(sat);
    }
    if (found) return *found;
  } else {
    for (auto& child : children)
      if (auto sat = absorb(solve(std::move(child)))) return *sat;
  }
  if (unknown) return *unknown;
  return Outcome::unsat("exhausted", "every branch is unsatisfiable", {w.origin});
}

// Exact check of a candidate against the equations and windows it came from.
bool satisfies(const NormalizedInstance& inst, const PrimeProfile& pp, const std::vector<PowerSum>& x) {
  for (const auto& e : inst.equations) {
    PowerSum residual = PowerSum::constant(pp.prime, -e.rhs);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (e.coeffs[j] != 0) residual += x[j] * e.coeffs[j];
    if (!powersum_val(residual).is_pos_inf()) return false;
  }
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!pp.vars[j].admits(powersum_val(x[j]))) return false;
  return true;
}

}  // namespace

Verdict solve_complete(const NormalizedInstance& inst, const CompleteOptions& opts, CompleteStats* stats) {
  if (inst.primes.size() > 1) throw InputError("solve_complete handles a single prime");
  if (!inst.orders.empty()) throw InputError("solve_complete does not handle order constraints");
  const std::size_t n = inst.size();
  const QMatrix a = inst.equation_matrix();
  const QVector b = inst.equation_rhs();

  if (inst.primes.empty()) {
    auto space = solve_affine(a, b);
    if (!space) return Verdict::unsat("inconsistent_equations", "A·x = b has no rational solution");
    return Verdict::sat(Witness(space->particular.begin(), space->particular.end()));
  }

  const PrimeProfile& pp = inst.primes.front();
  Node root;
  root.a = a;
  root.b = b;
  for (std::size_t j = 0; j < n; ++j) root.vars.push_back(WorkVar{j, pp.vars[j], 0, 1});

  Search search(pp.prime, opts);
  Outcome out = search.solve(std::move(root));
  if (stats) *stats = CompleteStats{search.nodes(), search.leaves(), search.pruned(), search.window_used()};

  auto names = [&](const std::vector<std::size_t>& vars) {
    std::string s;
    for (std::size_t j : vars) s += (s.empty() ? "" : ", ") + inst.variables[j];
    return s;
  };

  switch (out.status) {
    case Status::Sat: {
      std::vector<PowerSum> x(n, PowerSum(pp.prime));
      std::vector<bool> assigned(n, false);
      for (auto& [origin, value] : out.values) {
        x[origin] = std::move(value);
        assigned[origin] = true;
      }
      if (std::find(assigned.begin(), assigned.end(), false) != assigned.end())
        throw InvariantError("complete solver left a variable unassigned");
      if (!satisfies(inst, pp, x)) throw InvariantError("complete solver produced an invalid witness");
      Verdict v = Verdict::sat(Witness(x.begin(), x.end()));
      v.diagnostics.push_back("nodes=" + std::to_string(search.nodes()));
      return v;
    }
    case Status::Unsat: {
      if (search.window_used())
        return Verdict::unknown("unsat_within_window",
                                "Unsat within window " + opts.window->get_str() + ": " + out.reason,
                                out.culprits);
      Verdict v = Verdict::unsat(out.code, out.reason, out.culprits);
      if (!out.culprits.empty()) v.diagnostics.push_back("variables: " + names(out.culprits));
      return v;
    }
    default: {
      Verdict v = Verdict::unknown(out.code, out.reason, out.culprits);
      if (!out.culprits.empty()) v.diagnostics.push_back("variables: " + names(out.culprits));
      return v;
    }
  }
}

}  // namespace padic
