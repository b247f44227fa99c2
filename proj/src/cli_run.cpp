#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic/cli.hpp"
#include "padic/combiner.hpp"
#include "padic/testkit.hpp"

namespace padic {

namespace {

using Clock = std::chrono::steady_clock;

struct InputSpec {
  std::string path;
  std::string text;
};

std::string read_input(const InputSpec& in) {
  if (!in.text.empty()) {
    // Inline text may spell line breaks as a literal "\n" or as ';'.
    std::string s;
    for (std::size_t i = 0; i < in.text.size(); ++i) {
      if (in.text[i] == '\\' && i + 1 < in.text.size() && in.text[i + 1] == 'n') {
        s += '\n';
        ++i;
      } else {
        s += in.text[i] == ';' ? '\n' : in.text[i];
      }
    }
    return s;
  }
  if (in.path.empty() || in.path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(in.path);
  if (!f) throw InputError("cannot open '" + in.path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

BigInt resolve_guard(const std::string& flag) {
  if (!flag.empty()) return BigInt(flag);
  if (const char* env = std::getenv("PADIC_GUARD"); env && *env) {
    try {
      return BigInt(env);
    } catch (const std::invalid_argument&) {
      throw InputError(std::string("PADIC_GUARD is not an integer: ") + env);
    }
  }
  return default_guard();
}

BigInt parse_bigint(const std::string& s, const char* what) {
  try {
    return BigInt(s);
  } catch (const std::invalid_argument&) {
    throw InputError(std::string(what) + " must be an integer, got '" + s + "'");
  }
}

int exit_for(Status s) {
  switch (s) {
    case Status::Sat: return kSat;
    case Status::Unsat: return kUnsat;
    case Status::Unknown: return kUnknown;
  }
  return kInvariant;
}

Graph parse_graph(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto count = [&](std::size_t k) -> std::size_t {
    if (parts.size() <= k) throw InputError("graph spec '" + spec + "' is missing a field");
    return std::stoul(parts[k]);
  };
  if (parts.empty()) throw InputError("empty graph spec");
  if (parts[0] == "complete") return Graph::complete(count(1));
  if (parts[0] == "cycle") return Graph::cycle(count(1));
  if (parts[0] == "random") {
    const double density = parts.size() > 2 ? std::stod(parts[2]) : 0.5;
    return Graph::random(seed, count(1), density);
  }
  if (parts[0] == "edges") {
    Graph g{count(1), {}};
    if (parts.size() > 2) {
      std::stringstream es(parts[2]);
      for (std::string e; std::getline(es, e, ',');) {
        const auto dash = e.find('-');
        if (dash == std::string::npos) throw InputError("edge '" + e + "' is not of the form u-v");
        const std::size_t u = std::stoul(e.substr(0, dash)), v = std::stoul(e.substr(dash + 1));
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
    g.validate();
    return g;
  }
  throw InputError("unknown graph kind '" + parts[0] + "' (complete, cycle, random, edges)");
}

Fragment parse_fragment(const std::string& s) {
  if (s == "geq") return Fragment::GeqP;
  if (s == "leq") return Fragment::LeqP;
  if (s == "hard") return Fragment::Hard;
  if (s == "none") return Fragment::None;
  throw InputError("unknown fragment '" + s + "' (geq, leq, hard, none)");
}

void print_verdict(std::ostream& out, const Instance& inst, const Verdict& v, bool witness) {
  out << to_string(v.status);
  if (!v.reason.empty()) out << ": " << v.reason;
  out << '\n';
  for (const auto& d : v.diagnostics) out << "  " << d << '\n';
  if (witness && v.witness) out << render_witness(inst, *v.witness);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decides linear equations with p-adic valuation and order constraints over the rationals."};
  app.require_subcommand(1);

  InputSpec input;
  std::string guard_flag;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input.path, "Instance file ('-' or omitted: stdin)");
    sub->add_option("-t,--text", input.text, "Inline instance text (';' separates lines)");
  };

  bool want_witness = false, want_json = false;
  std::string window_flag;
  unsigned threads = 1;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance");
  add_input(solve_cmd);
  solve_cmd->add_flag("-w,--witness", want_witness, "Print the witness");
  solve_cmd->add_flag("--json", want_json, "Emit one JSON document");
  solve_cmd->add_option("--window", window_flag, "Assume vp(x) >= W for unbounded <=-variables in mixed components");
  solve_cmd->add_option("--threads", threads, "Branch exploration threads")->check(CLI::Range(1u, 256u));
  solve_cmd->add_option("--guard", guard_flag, "Largest exponent magnitude that may be materialized");

  std::string witness_path;
  auto* check_cmd = app.add_subcommand("check", "Verify a witness file (JSON) against an instance");
  check_cmd->add_option("input", input.path, "Instance file")->required();
  check_cmd->add_option("witness", witness_path, "Witness JSON file")->required();
  check_cmd->add_option("--guard", guard_flag, "Materialization guard");

  auto* classify_cmd = app.add_subcommand("classify", "Print the fragment of each prime");
  add_input(classify_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  std::uint64_t seed = 1;
  std::string graph_spec = "complete:3";
  unsigned long gp = 3, ge = 1;
  auto* gen_color = gen_cmd->add_subcommand("coloring", "Graph coloring encoding");
  gen_color->add_option("--graph", graph_spec, "complete:N, cycle:N, random:N[:DENSITY], edges:N:0-1,1-2");
  gen_color->add_option("-p,--prime", gp, "Prime");
  gen_color->add_option("-e", ge, "Exponent (p^e colors)")->check(CLI::PositiveNumber);
  gen_color->add_option("--seed", seed, "Seed for random graphs");

  RandomParams rp;
  std::string fragment_name = "geq";
  bool unplanted = false;
  auto* gen_random = gen_cmd->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("--seed", seed, "Seed");
  gen_random->add_option("--fragment", fragment_name, "geq, leq, hard or none");
  gen_random->add_option("--vars", rp.vars, "Variables");
  gen_random->add_option("--equations", rp.equations, "Equations");
  gen_random->add_option("--primes", rp.primes, "Primes")->delimiter(',');
  gen_random->add_option("--coeff", rp.coeff_max, "Coefficient magnitude");
  gen_random->add_option("--bound", rp.bound_max, "Bound magnitude");
  gen_random->add_option("--support", rp.row_support, "Nonzeros per equation (0: dense)");
  gen_random->add_option("--orders", rp.order_rate, "Order constraint rate per variable");
  gen_random->add_flag("--unplanted", unplanted, "Draw the right-hand side and bounds independently");

  std::string oracle_guard = "64";
  auto* oracle_cmd = app.add_subcommand("oracle", "Smith normal form cross-check of a >=-instance");
  add_input(oracle_cmd);
  oracle_cmd->add_option("--guard", oracle_guard, "Largest |c| the oracle accepts");

  std::vector<std::size_t> sizes = {8, 16, 32, 64, 128};
  std::size_t reps = 3;
  auto* bench_cmd = app.add_subcommand("bench", "Instance size against wall time for a doubling series");
  bench_cmd->add_option("--fragment", fragment_name, "geq or leq");
  bench_cmd->add_option("--sizes", sizes, "Variable counts")->delimiter(',');
  bench_cmd->add_option("--reps", reps, "Repetitions per size (median reported)")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed, "Seed");
  bench_cmd->add_flag("--json", want_json, "Emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*solve_cmd) {
      const Instance inst = parse_instance(read_input(input));
      SolveOptions opts;
      opts.guard = resolve_guard(guard_flag);
      opts.threads = threads;
      if (!window_flag.empty()) opts.window = parse_bigint(window_flag, "--window");
      const auto t0 = Clock::now();
      Verdict v;
      try {
        v = solve(inst, opts);
      } catch (const GuardError& e) {
        v = Verdict::unknown("guard", e.what());
      }
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      if (want_json) out << verdict_to_json(inst, v, ms) << '\n';
      else print_verdict(out, inst, v, want_witness);
      return exit_for(v.status);
    }
    if (*check_cmd) {
      const Instance inst = parse_instance(read_input(input));
      const Witness w = witness_from_json(inst, read_input({witness_path, {}}));
      const WitnessCheck c = verify_witness(inst, w, resolve_guard(guard_flag));
      if (c.ok) {
        out << "accept\n";
        return 0;
      }
      out << "reject: " << c.violation << '\n';
      return 1;
    }
    if (*classify_cmd) {
      const Instance inst = parse_instance(read_input(input));
      bool hard = false;
      for (const auto& [p, f] : fragments_of(inst)) {
        hard |= f == Fragment::Hard;
        out << "p=" << p.to_string() << ": " << to_string(f) << " ("
            << (f == Fragment::Hard ? "NP-complete fragment" : "polynomial-time fragment") << ")\n";
      }
      if (!inst.orders.empty()) out << "order constraints: strictification by linear programming (polynomial-time)\n";
      out << "overall: " << (hard ? "NP-complete" : "in P") << '\n';
      return 0;
    }
    if (*gen_cmd) {
      if (*gen_color) {
        out << serialize_instance(encode_coloring(parse_graph(graph_spec, seed), Prime(gp), ge));
        return 0;
      }
      rp.fragment = parse_fragment(fragment_name);
      rp.planted = !unplanted;
      out << serialize_instance(random_instance(seed, rp));
      return 0;
    }
    if (*oracle_cmd) {
      const Instance inst = parse_instance(read_input(input));
      if (!inst.orders.empty() || inst.primes().size() != 1)
        throw InputError("oracle needs exactly one prime and no order constraints");
      NormalizeResult nr = normalize(inst);
      if (std::holds_alternative<ImmediateUnsat>(nr)) {
        out << "unsat\n";
        return kUnsat;
      }
      const auto& norm = std::get<NormalizedInstance>(nr);
      const PrimeProfile& pp = norm.primes.front();
      if (classify_kinds(pp.prime, pp.kinds) != Fragment::GeqP || pp.kinds.eq)
        throw InputError("oracle accepts only >= constraints");
      const bool sat = smith_oracle_geq(to_geq_problem(norm, pp), parse_bigint(oracle_guard, "--guard"));
      out << (sat ? "sat" : "unsat") << '\n';
      return sat ? kSat : kUnsat;
    }
    if (*bench_cmd) {
      const Fragment frag = parse_fragment(fragment_name);
      if (frag != Fragment::GeqP && frag != Fragment::LeqP) throw InputError("bench supports geq and leq");
      nlohmann::json rows = nlohmann::json::array();
      if (!want_json) out << "n,size,time_ms,status\n";
      for (std::size_t n : sizes) {
        RandomParams bp;
        bp.fragment = frag;
        bp.vars = n;
        bp.equations = std::max<std::size_t>(1, n / 2);
        bp.row_support = std::min<std::size_t>(3, n);
        bp.primes = {frag == Fragment::GeqP ? 2UL : 3UL};
        const Instance inst = random_instance(seed + n, bp);
        std::vector<double> times;
        Verdict v;
        for (std::size_t r = 0; r < reps; ++r) {
          const auto t0 = Clock::now();
          v = solve(inst);
          times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        const std::string size = instance_size(inst).get_str();
        if (want_json) rows.push_back({{"n", n}, {"size", size}, {"time_ms", median}, {"status", to_string(v.status)}});
        else out << n << ',' << size << ',' << median << ',' << to_string(v.status) << '\n';
      }
      if (want_json) out << rows.dump() << '\n';
      return 0;
    }
  } catch (const InvariantError& e) {
    err << "internal invariant failure: " << e.what() << '\n';
    return kInvariant;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kUnknown;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

}  // namespace padic
