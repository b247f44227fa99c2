#include <doctest.h>

#include <random>

#include "padic/complete_solver.hpp"
#include "padic/testkit.hpp"
#include "support/oracles.hpp"

using namespace padic;

namespace {

NormalizedInstance norm(const Instance& inst) {
  auto r = normalize(inst);
  REQUIRE(std::holds_alternative<NormalizedInstance>(r));
  return std::get<NormalizedInstance>(r);
}

// Decides single-prime instances whose variables are either ≥-only or carry
// a finite window, by enumerating valuation and leading digit of each
// windowed variable and handing the residual ≥-problem to the Smith oracle.
bool enumerate_oracle(const Instance& inst, const Prime& p) {
  const NormalizedInstance n = norm(inst);
  const std::vector<VarProfile>& vars = n.primes.at(0).vars;
  const QMatrix a = n.equation_matrix();
  const QVector b = n.equation_rhs();

  std::vector<std::size_t> windowed;
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (vars[j].upper.is_finite()) windowed.push_back(j);

  std::vector<std::pair<long, long>> choice(windowed.size());  // (valuation, digit)
  const long pv = p.value().get_si();
  auto advance = [&](std::size_t k) {
    const VarProfile& v = vars[windowed[k]];
    if (++choice[k].second < pv) return true;
    choice[k].second = 1;
    do ++choice[k].first;
    while (choice[k].first <= v.upper.value().get_si() && !v.admits(ExtInt(choice[k].first)));
    return choice[k].first <= v.upper.value().get_si();
  };
  for (std::size_t k = 0; k < windowed.size(); ++k) {
    const VarProfile& v = vars[windowed[k]];
    choice[k] = {v.lower.value().get_si() - 1, pv - 1};
    if (!advance(k)) return false;
  }

  for (;;) {
    GeqProblem prob{a, b, p, {}, {}};
    for (std::size_t j = 0; j < vars.size(); ++j) prob.bounds.push_back(vars[j].lower);
    for (std::size_t k = 0; k < windowed.size(); ++k) {
      const std::size_t j = windowed[k];
      const auto [val, digit] = choice[k];
      for (std::size_t i = 0; i < a.rows(); ++i) {
        prob.b[i] -= a(i, j) * digit * oracle::naive_pow(p.value(), val);
        prob.a(i, j) = a(i, j) * oracle::naive_pow(p.value(), val + 1);
      }
      prob.bounds[j] = ExtInt(0);
    }
    if (smith_oracle_geq(prob)) return true;

    std::size_t k = 0;
    for (; k < windowed.size(); ++k) {
      if (advance(k)) break;
      const VarProfile& v = vars[windowed[k]];
      choice[k] = {v.lower.value().get_si() - 1, pv - 1};
      advance(k);
    }
    if (k == windowed.size()) return false;
  }
}

Instance random_mixed(std::mt19937_64& rng, const Prime& p) {
  Instance inst;
  const std::size_t n = 2 + rng() % 2, m = 1 + rng() % 2;
  for (std::size_t j = 0; j < n; ++j) inst.variables.push_back("x" + std::to_string(j));
  for (std::size_t i = 0; i < m; ++i) {
    QVector row(n);
    for (auto& c : row) c = long(rng() % 11) - 5;
    inst.equations.push_back({row, long(rng() % 19) - 9});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (rng() % 2) {
      if (rng() % 5) inst.valuations.push_back({p, j, ValRel::Ge, long(rng() % 5) - 2});
      continue;
    }
    const long l = long(rng() % 4) - 2;
    inst.valuations.push_back({p, j, ValRel::Ge, l});
    inst.valuations.push_back({p, j, ValRel::Le, l + long(rng() % 2)});
    if (rng() % 3 == 0) inst.valuations.push_back({p, j, ValRel::Ne, l});
  }
  return inst;
}

}  // namespace

TEST_CASE("coloring examples") {
  const Prime p3(3UL), p2(2UL);
  CHECK(solve_complete(norm(encode_coloring(Graph::complete(3), p3, 1))).is_sat());
  CHECK(solve_complete(norm(encode_coloring(Graph::complete(4), p3, 1))).is_unsat());
  CHECK(solve_complete(norm(encode_coloring(Graph::complete(4), p2, 2))).is_sat());
  CHECK(solve_complete(norm(encode_coloring(Graph::complete(5), p2, 2))).is_unsat());
}

TEST_CASE("mixed example yields a verified witness") {
  Instance inst;
  inst.variables = {"x", "y"};
  inst.equations = {{{1, 1}, 1}};
  const Prime p(3UL);
  inst.valuations = {{p, 0, ValRel::Ge, 0}, {p, 0, ValRel::Le, 0}, {p, 1, ValRel::Ge, 0}};
  const Verdict v = solve_complete(norm(inst));
  REQUIRE(v.is_sat());
  CHECK(verify_witness(inst, *v.witness).ok);
}

TEST_CASE("digit substitution preserves satisfiability") {
  std::mt19937_64 rng(61);
  int sat = 0, unsat = 0;
  for (int k = 0; k < 200; ++k) {
    const Prime p(k % 2 ? 3UL : 2UL);
    const Instance inst = random_mixed(rng, p);
    if (inst.valuations.empty() || !std::holds_alternative<NormalizedInstance>(normalize(inst))) continue;
    const Verdict v = solve_complete(norm(inst));
    REQUIRE_FALSE(v.is_unknown());
    REQUIRE(v.is_sat() == enumerate_oracle(inst, p));
    if (v.is_sat()) {
      ++sat;
      CHECK(verify_witness(inst, *v.witness).ok);
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 20);
  CHECK(unsat > 20);
}

TEST_CASE("pure fragments are decided at a single leaf") {
  std::mt19937_64 rng(62);
  for (int k = 0; k < 50; ++k) {
    RandomParams rp;
    rp.fragment = k % 2 ? Fragment::GeqP : Fragment::LeqP;
    rp.primes = {k % 3 ? 3UL : 2UL};
    rp.planted = k % 4 != 0;
    Instance inst = random_instance(rng(), rp);
    // One row touching every variable keeps the instance in one component.
    inst.equations.push_back({QVector(inst.size(), 1), 0});
    auto r = normalize(inst);
    if (!std::holds_alternative<NormalizedInstance>(r)) continue;
    CompleteStats stats;
    const Verdict v = solve_complete(std::get<NormalizedInstance>(r), {}, &stats);
    CHECK_FALSE(v.is_unknown());
    CHECK(stats.nodes <= 1);
  }
}

TEST_CASE("unbounded mixes need a window") {
  // x + y + z = 0 and y = z force vp(x) = vp(y), which the bounds forbid.
  Instance inst;
  inst.variables = {"x", "y", "z"};
  inst.equations = {{{1, 1, 1}, 0}, {{0, 1, -1}, 0}};
  const Prime p(3UL);
  inst.valuations = {{p, 0, ValRel::Ge, 0}, {p, 1, ValRel::Le, -1}, {p, 2, ValRel::Le, -1}};
  const Verdict open = solve_complete(norm(inst));
  CHECK(open.is_unknown());
  CHECK(open.code == "unbounded_mix");

  CompleteOptions opts;
  opts.window = BigInt(-3);
  const Verdict windowed = solve_complete(norm(inst), opts);
  CHECK(windowed.is_unknown());
  CHECK(windowed.code == "unsat_within_window");

  // Dropping y = z leaves a Sat instance that the window finds.
  inst.equations.pop_back();
  const Verdict sat = solve_complete(norm(inst), opts);
  REQUIRE(sat.is_sat());
  CHECK(verify_witness(inst, *sat.witness).ok);
}

TEST_CASE("budgets report Unknown") {
  CompleteOptions opts;
  opts.max_nodes = 1;
  const Verdict v = solve_complete(norm(encode_coloring(Graph::complete(4), Prime(3UL), 1)), opts);
  CHECK(v.is_unknown());
  CHECK(v.code == "node_budget");

  Instance wide;
  wide.variables = {"x", "y"};
  wide.equations = {{{1, 1}, 1}};
  const Prime p(3UL);
  wide.valuations = {{p, 0, ValRel::Ge, -100000}, {p, 0, ValRel::Le, 100000}, {p, 1, ValRel::Ge, 1},
                     {p, 1, ValRel::Ne, 5}};
  const Verdict w = solve_complete(norm(wide));
  CHECK_FALSE(w.is_unsat());
}

TEST_CASE("threads do not change verdicts") {
  for (std::size_t n = 3; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const NormalizedInstance inst = norm(encode_coloring(Graph::random(seed, n, 0.7), Prime(3UL), 1));
      CompleteOptions multi;
      multi.threads = 3;
      CHECK(solve_complete(inst).status == solve_complete(inst, multi).status);
    }
}

TEST_CASE("order constraints and several primes are rejected") {
  Instance inst;
  inst.variables = {"x"};
  inst.valuations = {{Prime(2UL), 0, ValRel::Ge, 0}, {Prime(3UL), 0, ValRel::Ge, 0}};
  CHECK_THROWS_AS(solve_complete(norm(inst)), InputError);
}
