#include <doctest.h>

#include <random>

#include "padic/combiner.hpp"
#include "padic/testkit.hpp"

using namespace padic;

TEST_CASE("graphs") {
  CHECK(Graph::complete(4).edges.size() == 6);
  CHECK(Graph::cycle(5).edges.size() == 5);
  Graph loop{2, {{1, 1}}};
  CHECK_THROWS_AS(loop.validate(), InputError);
  CHECK(Graph::random(7, 6, 0.5).edges == Graph::random(7, 6, 0.5).edges);
}

TEST_CASE("brute coloring") {
  CHECK(brute_color(Graph::complete(3), 3));
  CHECK_FALSE(brute_color(Graph::complete(4), 3));
  CHECK(brute_color(Graph::cycle(6), 2));
  CHECK_FALSE(brute_color(Graph::cycle(5), 2));
}

TEST_CASE("coloring encoding layout") {
  const Instance inst = encode_coloring(Graph::complete(3), Prime(3UL), 1);
  CHECK(inst.size() == 3 + 3);
  CHECK(inst.equations.size() == 3);
  CHECK(inst.variables.front() == "x0");
  CHECK(inst.variables.back() == "w2");
}

TEST_CASE("encoder agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Graph g = Graph::random(seed, 3 + seed % 4, 0.6);
    for (auto [pv, e] : {std::pair{3UL, 1UL}, std::pair{2UL, 2UL}, std::pair{2UL, 1UL}}) {
      const Prime p(pv);
      const std::size_t colors = std::size_t(std::pow(double(pv), double(e)));
      const Verdict v = solve(encode_coloring(g, p, e));
      REQUIRE_FALSE(v.is_unknown());
      CHECK(v.is_sat() == brute_color(g, colors));
    }
  }
}

TEST_CASE("Smith oracle examples") {
  const auto line = [](long rhs, unsigned long p, ExtInt c) {
    return GeqProblem{QMatrix::from_rows({{1, 1}}, 2), {rhs}, Prime(p), {c, c}, {}};
  };
  CHECK_FALSE(smith_oracle_geq(line(1, 2, 1)));
  CHECK(smith_oracle_geq(line(2, 2, 1)));
  CHECK(smith_oracle_geq(line(1, 3, 0)));
  CHECK(smith_oracle_geq(line(1, 2, ExtInt::neg_inf())));
  CHECK_THROWS_AS(smith_oracle_geq(line(1, 2, 100), 64), GuardError);
  GeqProblem two{QMatrix::from_rows({{2, 0}, {0, 1}}, 2), {1, 0}, Prime(2UL), {0, 0}, {}};
  CHECK_FALSE(smith_oracle_geq(two));
}

TEST_CASE("verify_witness examples") {
  Instance inst;
  inst.variables = {"x", "y"};
  inst.equations = {{{1, 1}, 1}};
  const Prime p(2UL);
  inst.valuations = {{p, 0, ValRel::Le, -1}};
  CHECK(verify_witness(inst, {Value(Rational(5, 4)), Value(Rational(-1, 4))}).ok);
  CHECK(verify_witness(inst, {Value(Rational(3, 4)), Value(Rational(1, 4))}).ok);

  const WitnessCheck eq = verify_witness(inst, {Value(Rational(1)), Value(Rational(1))});
  CHECK_FALSE(eq.ok);
  CHECK_FALSE(eq.violation.empty());
  CHECK_FALSE(verify_witness(inst, {Value(Rational(1)), Value(Rational(0))}).ok);

  inst.orders = {{{1, 0}, OrdRel::Lt, 1}};
  CHECK_FALSE(verify_witness(inst, {Value(Rational(5, 4)), Value(Rational(-1, 4))}).ok);
  CHECK(verify_witness(inst, {Value(Rational(3, 4)), Value(Rational(1, 4))}).ok);
}

TEST_CASE("perturbed witnesses are rejected") {
  std::mt19937_64 rng(91);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    RandomParams rp;
    rp.fragment = k % 2 ? Fragment::GeqP : Fragment::LeqP;
    rp.primes = {k % 3 ? 3UL : 2UL};
    const Instance inst = random_instance(rng(), rp);
    const Verdict v = solve(inst);
    if (!v.is_sat()) continue;
    REQUIRE(verify_witness(inst, *v.witness).ok);
    Witness bad = *v.witness;
    if (!perturb_witness(inst, bad, rng())) continue;
    CHECK_FALSE(verify_witness(inst, bad).ok);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("generators are deterministic") {
  RandomParams rp;
  rp.fragment = Fragment::Hard;
  rp.primes = {2, 5};
  rp.order_rate = 0.3;
  const Instance a = random_instance(123, rp), b = random_instance(123, rp);
  CHECK(a.variables == b.variables);
  REQUIRE(a.equations.size() == b.equations.size());
  for (std::size_t i = 0; i < a.equations.size(); ++i) CHECK(a.equations[i].coeffs == b.equations[i].coeffs);
  CHECK(a.valuations.size() == b.valuations.size());
  CHECK(a.orders.size() == b.orders.size());

  const GeqProblem g1 = random_geq_problem(5, 3, 2, 9, -2, 2, Prime(3UL));
  const GeqProblem g2 = random_geq_problem(5, 3, 2, 9, -2, 2, Prime(3UL));
  CHECK(g1.a == g2.a);
  CHECK(g1.b == g2.b);
}
