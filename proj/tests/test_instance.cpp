#include <doctest.h>

#include <random>

#include "padic/instance.hpp"
#include "padic/testkit.hpp"

using namespace padic;

namespace {

Instance one_var(std::vector<ValuationConstraint> vals) {
  Instance inst;
  inst.variables = {"x"};
  inst.valuations = std::move(vals);
  return inst;
}

const Prime P2(2UL), P3(3UL), P5(5UL);

}  // namespace

TEST_CASE("validation rejects dangling references") {
  Instance inst = one_var({{P2, 1, ValRel::Ge, 0}});
  CHECK_THROWS_AS(inst.validate(), InputError);
  Instance ragged;
  ragged.variables = {"x", "y"};
  ragged.equations.push_back({{1}, 0});
  CHECK_THROWS_AS(ragged.validate(), InputError);
}

TEST_CASE("normalize merges windows") {
  auto r = normalize(one_var({{P3, 0, ValRel::Ge, 2}, {P3, 0, ValRel::Ge, 5}}));
  REQUIRE(std::holds_alternative<NormalizedInstance>(r));
  const VarProfile& v = std::get<NormalizedInstance>(r).primes[0].vars[0];
  CHECK(v.lower == ExtInt(5));
  CHECK(v.upper.is_pos_inf());
  CHECK(v.allow_zero);

  CHECK(std::holds_alternative<ImmediateUnsat>(normalize(one_var({{P2, 0, ValRel::Ge, 3}, {P2, 0, ValRel::Le, 1}}))));
  CHECK(std::holds_alternative<ImmediateUnsat>(normalize(one_var({{P5, 0, ValRel::Eq, 1}, {P5, 0, ValRel::Ne, 1}}))));
  CHECK(std::holds_alternative<ImmediateUnsat>(
      normalize(one_var({{P5, 0, ValRel::Ge, 0}, {P5, 0, ValRel::Lt, 2}, {P5, 0, ValRel::Ne, 0}, {P5, 0, ValRel::Ne, 1}}))));
}

TEST_CASE("strict forms are sugar and = sets flags only at p = 2") {
  auto r = std::get<NormalizedInstance>(normalize(one_var({{P3, 0, ValRel::Gt, 1}, {P3, 0, ValRel::Lt, 4}})));
  const VarProfile& v = r.primes[0].vars[0];
  CHECK(v.lower == ExtInt(2));
  CHECK(v.upper == ExtInt(3));
  CHECK_FALSE(v.allow_zero);

  auto two = std::get<NormalizedInstance>(normalize(one_var({{P2, 0, ValRel::Eq, 1}})));
  CHECK(two.primes[0].vars[0].exact);
  auto three = std::get<NormalizedInstance>(normalize(one_var({{P3, 0, ValRel::Eq, 1}})));
  CHECK_FALSE(three.primes[0].vars[0].exact);
  CHECK(three.primes[0].vars[0].lower == three.primes[0].vars[0].upper);
}

TEST_CASE("classification table") {
  auto frag = [](const Instance& inst) {
    return classify(std::get<NormalizedInstance>(normalize(inst))).per_prime.at(0).second;
  };
  CHECK(frag(one_var({{P3, 0, ValRel::Ge, 1}})) == Fragment::GeqP);
  CHECK(frag(one_var({{P3, 0, ValRel::Eq, 0}})) == Fragment::Hard);
  CHECK(frag(one_var({{P2, 0, ValRel::Ge, 1}, {P2, 0, ValRel::Eq, 3}})) == Fragment::GeqP);
  CHECK(frag(one_var({{P2, 0, ValRel::Le, 1}, {P2, 0, ValRel::Ne, 0}})) == Fragment::LeqP);
  CHECK(frag(one_var({{P2, 0, ValRel::Eq, 1}, {P2, 0, ValRel::Ne, 5}})) == Fragment::Hard);
  CHECK(frag(one_var({{P5, 0, ValRel::Ge, 1}, {P5, 0, ValRel::Ne, 3}})) == Fragment::Hard);
  CHECK(complexity_label(Fragment::GeqP) == std::string("in P"));
  CHECK(complexity_label(Fragment::Hard) == std::string("NP-complete"));

  KindSet none;
  CHECK(classify_kinds(P3, none) == Fragment::None);
}

TEST_CASE("classification depends only on the kind set") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    RandomParams rp;
    rp.fragment = Fragment::Hard;
    rp.primes = {rng() % 2 ? 2UL : 3UL};
    Instance inst = random_instance(rng(), rp);
    auto n1 = normalize(inst);
    Instance shuffled = inst;
    std::shuffle(shuffled.valuations.begin(), shuffled.valuations.end(), rng);
    if (!shuffled.valuations.empty()) shuffled.valuations.push_back(shuffled.valuations.front());
    auto n2 = normalize(shuffled);
    if (!std::holds_alternative<NormalizedInstance>(n1)) {
      CHECK(std::holds_alternative<ImmediateUnsat>(n2));
      continue;
    }
    REQUIRE(std::holds_alternative<NormalizedInstance>(n2));
    CHECK(classify(std::get<NormalizedInstance>(n1)).per_prime == classify(std::get<NormalizedInstance>(n2)).per_prime);
  }
}

TEST_CASE("normalize is idempotent through to_instance") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    RandomParams rp;
    rp.fragment = k % 3 == 0 ? Fragment::GeqP : (k % 3 == 1 ? Fragment::LeqP : Fragment::Hard);
    rp.primes = {2, 3};
    rp.planted = k % 2 == 0;
    const Instance inst = random_instance(rng(), rp);
    auto first = normalize(inst);
    if (!std::holds_alternative<NormalizedInstance>(first)) continue;
    const auto& n1 = std::get<NormalizedInstance>(first);
    auto second = normalize(to_instance(n1));
    REQUIRE(std::holds_alternative<NormalizedInstance>(second));
    const auto& n2 = std::get<NormalizedInstance>(second);
    REQUIRE(n1.primes.size() == n2.primes.size());
    for (std::size_t i = 0; i < n1.primes.size(); ++i) CHECK(n1.primes[i].vars == n2.primes[i].vars);
  }
}

TEST_CASE("profiles admit exactly the valuations the constraints allow") {
  VarProfile v;
  v.lower = ExtInt(-1);
  v.upper = ExtInt(3);
  v.excluded = {1};
  v.allow_zero = false;
  CHECK(v.admits(ExtInt(-1)));
  CHECK_FALSE(v.admits(ExtInt(1)));
  CHECK_FALSE(v.admits(ExtInt(4)));
  CHECK_FALSE(v.admits(ExtInt::pos_inf()));
  VarProfile free;
  CHECK(free.admits(ExtInt::pos_inf()));
  CHECK(free.is_free());
}

TEST_CASE("size measure") {
  CHECK(rational_height(Rational(1)) == 1);
  CHECK(rational_height(Rational(0)) == 1);
  CHECK(rational_height(Rational(3, 8)) == 1 + 2 + 3);
  CHECK(rational_height(Rational(-5)) == 1 + 3);

  Instance inst;
  inst.variables = {"x", "y"};
  inst.equations = {{{1, -1}, 0}, {{-1, 1}, 0}};
  CHECK(instance_size(inst) == 8);
}
