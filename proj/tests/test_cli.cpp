#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "padic/cli.hpp"
#include "padic/combiner.hpp"
#include "padic/testkit.hpp"

using namespace padic;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

ParseError parse_error(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("parse examples") {
  const Instance inst = parse_instance("vars x y\neq 1 x + 1 y = 1\nval 2 : v(x) >= 1");
  CHECK(inst.variables == std::vector<std::string>{"x", "y"});
  REQUIRE(inst.equations.size() == 1);
  CHECK(inst.equations[0].coeffs == QVector{1, 1});
  CHECK(inst.equations[0].rhs == 1);
  REQUIRE(inst.valuations.size() == 1);
  CHECK(inst.valuations[0].prime == Prime(2UL));
  CHECK(inst.valuations[0].rel == ValRel::Ge);

  const Instance ord = parse_instance("vars x\nord 1/2 x < 3");
  REQUIRE(ord.orders.size() == 1);
  CHECK(ord.orders[0].coeffs[0] == Rational(1, 2));
  CHECK(ord.orders[0].rel == OrdRel::Lt);

  const Instance sugar = parse_instance("vars x y  # two\n\n eq x - 2/3 y = -1/2\nval 5 : v(y) != -7");
  CHECK(sugar.equations[0].coeffs == QVector{1, Rational(-2, 3)});
  CHECK(sugar.equations[0].rhs == Rational(-1, 2));
  CHECK(sugar.valuations[0].bound == -7);

  const Instance big = parse_instance("vars x\nval 2 : v(x) <= -1048576000000000000000");
  CHECK(big.valuations[0].bound == BigInt("-1048576000000000000000"));
}

TEST_CASE("parse errors carry positions") {
  const ParseError four = parse_error("vars x\nval 4 : v(x) >= 0");
  CHECK(four.line() == 2);
  CHECK(four.column() == 5);
  CHECK(std::string(four.what()).find("4 is not prime") != std::string::npos);

  const ParseError unknown = parse_error("vars x\neq x + y = 1");
  CHECK(unknown.line() == 2);
  CHECK(unknown.column() == 8);
  CHECK(std::string(unknown.what()).find("unknown variable") != std::string::npos);

  CHECK(parse_error("vars x\nord x = 1").line() == 2);
  CHECK(parse_error("vars v").line() == 1);
  CHECK(parse_error("vars x\neq x = 1/0").line() == 2);
  CHECK(parse_error("frobnicate").column() == 1);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(111);
  for (int k = 0; k < 100; ++k) {
    RandomParams rp;
    rp.fragment = Fragment::Hard;
    rp.primes = {2, 3, 7};
    rp.order_rate = 0.4;
    const Instance inst = random_instance(rng(), rp);
    const Instance back = parse_instance(serialize_instance(inst));
    CHECK(back.variables == inst.variables);
    REQUIRE(back.equations.size() == inst.equations.size());
    for (std::size_t i = 0; i < inst.equations.size(); ++i) {
      CHECK(back.equations[i].coeffs == inst.equations[i].coeffs);
      CHECK(back.equations[i].rhs == inst.equations[i].rhs);
    }
    REQUIRE(back.valuations.size() == inst.valuations.size());
    for (std::size_t i = 0; i < inst.valuations.size(); ++i) {
      CHECK(back.valuations[i].prime == inst.valuations[i].prime);
      CHECK(back.valuations[i].var == inst.valuations[i].var);
      CHECK(back.valuations[i].rel == inst.valuations[i].rel);
      CHECK(back.valuations[i].bound == inst.valuations[i].bound);
    }
    REQUIRE(back.orders.size() == inst.orders.size());
    for (std::size_t i = 0; i < inst.orders.size(); ++i) {
      CHECK(back.orders[i].coeffs == inst.orders[i].coeffs);
      CHECK(back.orders[i].rel == inst.orders[i].rel);
      CHECK(back.orders[i].rhs == inst.orders[i].rhs);
    }
    CHECK(serialize_instance(back) == serialize_instance(inst));
  }
}

TEST_CASE("JSON verdicts follow the schema and round-trip witnesses") {
  const Instance inst = parse_instance("vars x y\neq x + y = 1\nval 2 : v(x) <= -1");
  const Verdict v = solve(inst);
  REQUIRE(v.is_sat());
  const auto doc = nlohmann::json::parse(verdict_to_json(inst, v, 1.5));
  CHECK(doc["status"] == "sat");
  CHECK(doc["fragment"]["2"] == "LEQ_P");
  CHECK(doc["stats"]["size"].is_number_integer());
  CHECK(doc["stats"]["time_ms"] == 1.5);
  const auto& x = doc["witness"]["x"];
  CHECK(x["p"] == 2);
  REQUIRE(x["terms"].is_array());
  for (const auto& t : x["terms"]) {
    CHECK(t[0].is_string());
    CHECK(t[1].is_number_integer());
  }
  const Witness back = witness_from_json(inst, doc.dump());
  CHECK(verify_witness(inst, back).ok);

  const Verdict u = solve(parse_instance("vars x\neq x = 1\nval 2 : v(x) <= -1"));
  const auto udoc = nlohmann::json::parse(verdict_to_json(inst, u, 0));
  CHECK(udoc["status"] == "unsat");
  CHECK_FALSE(udoc.contains("witness"));
}

TEST_CASE("exit codes") {
  const std::string k3 = serialize_instance(encode_coloring(Graph::complete(3), Prime(3UL), 1));
  CHECK(run({"solve", "--text", k3}).code == kSat);
  CHECK(run({"solve", "--text", "vars x;eq x = 1;val 2 : v(x) <= -1"}).code == kUnsat);
  CHECK(run({"solve", "--text", "vars x y z;eq x + y + z = 0;eq y - z = 0;val 3 : v(x) >= 0;"
                                "val 3 : v(y) <= -1;val 3 : v(z) <= -1"})
            .code == kUnknown);
  const Run bad = run({"solve", "--text", "vars x;val 4 : v(x) >= 0"});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"solve", "--bogus"}).code == kUsage);
  CHECK(run({}).code == kUsage);
}

TEST_CASE("solve output and witness rendering") {
  const Run r = run({"solve", "-w", "--text", "vars x y;eq x + y = 1;val 2 : v(x) <= -1"});
  CHECK(r.code == kSat);
  CHECK(r.out.rfind("sat", 0) == 0);
  CHECK(r.out.find("x = ") != std::string::npos);
  CHECK(r.out.find('@') != std::string::npos);
}

TEST_CASE("classify") {
  const Run hard = run({"classify", "--text", "vars x;val 3 : v(x) == 0"});
  CHECK(hard.code == 0);
  CHECK(hard.out.find("p=3: HARD (NP-complete fragment)") != std::string::npos);
  CHECK(hard.out.find("overall: NP-complete") != std::string::npos);
  const Run easy = run({"classify", "--text", "vars x;val 2 : v(x) == 0;val 2 : v(x) >= -3"});
  CHECK(easy.out.find("p=2: GEQ_P (polynomial-time fragment)") != std::string::npos);
  CHECK(easy.out.find("overall: in P") != std::string::npos);
}

TEST_CASE("gen and oracle") {
  const Run g = run({"gen", "coloring", "--graph", "complete:4", "-p", "3", "-e", "1"});
  REQUIRE(g.code == 0);
  CHECK(run({"solve", "--text", g.out}).code == kUnsat);

  const Run r1 = run({"gen", "random", "--seed", "5", "--fragment", "geq", "--primes", "3"});
  const Run r2 = run({"gen", "random", "--seed", "5", "--fragment", "geq", "--primes", "3"});
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  const Run o = run({"oracle", "--text", r1.out});
  const Run s = run({"solve", "--text", r1.out});
  CHECK(o.code == s.code);

  CHECK(run({"oracle", "--text", "vars x;val 3 : v(x) <= 0"}).code == kUsage);
}

TEST_CASE("bench prints a series") {
  const Run b = run({"bench", "--fragment", "leq", "--sizes", "4,8", "--reps", "1"});
  REQUIRE(b.code == 0);
  CHECK(b.out.rfind("n,size,time_ms,status\n", 0) == 0);
  CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 3);
}
