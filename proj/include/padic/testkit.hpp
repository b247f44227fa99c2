#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "padic/instance.hpp"
#include "padic/solver_geq.hpp"
#include "padic/solver_leq.hpp"

namespace padic {

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws InputError on self-loops or out-of-range endpoints.
  void validate() const;

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  /// Each of the n(n−1)/2 possible edges independently with probability density.
  static Graph random(std::uint64_t seed, std::size_t n, double density);
};

/// Variables x_v with vp(x_v) ≥ 0; per edge {u, v} a fresh w with
/// x_v + w − x_u = 0, vp(w) ≤ e−1 and vp(w) ≥ 0. Satisfiable iff g is
/// p^e-colorable.
Instance encode_coloring(const Graph& g, const Prime& p, unsigned long e);

/// Exhaustive k-coloring check; at most 10 vertices.
bool brute_color(const Graph& g, std::size_t k);

/// Independent ≥-decider over ℤ_(p) via Smith normal form. Requires δ = 0 and
/// |c_j| ≤ guard for finite c_j; throws GuardError or InputError otherwise.
bool smith_oracle_geq(const GeqProblem& prob, const BigInt& guard = 64);

struct WitnessCheck {
  bool ok = true;
  std::string violation;
};

/// Exact check of every equation, valuation and order constraint. Order
/// constraints and cross-prime uses materialize power sums under guard.
WitnessCheck verify_witness(const Instance& inst, const Witness& w, const BigInt& guard = default_guard());

struct RandomParams {
  /// Which constraint kinds to draw: GeqP (≥, plus = at p = 2), LeqP (≤, ≠),
  /// Hard (all kinds), None (equations only).
  Fragment fragment = Fragment::GeqP;
  std::size_t vars = 4;
  std::size_t equations = 3;
  long coeff_max = 9;
  long bound_max = 3;
  std::vector<unsigned long> primes = {2};
  /// Probability that a variable receives a constraint per prime.
  double constraint_rate = 0.8;
  /// Nonzeros per equation row; 0 means dense.
  std::size_t row_support = 0;
  /// Build b from a hidden solution and keep its constraints consistent.
  bool planted = true;
  /// Probability of adding an order constraint per variable.
  double order_rate = 0;
};

Instance random_instance(std::uint64_t seed, const RandomParams& params);

/// A·x = b with vp(x_j) ≥ c_j, c_j uniform in [cmin, cmax] (δ = 0).
GeqProblem random_geq_problem(std::uint64_t seed, std::size_t vars, std::size_t equations, long coeff_max,
                              long cmin, long cmax, const Prime& p);

/// Changes one term of one coordinate so its value differs. The coordinate
/// is drawn among those with a nonzero equation column, so some equation
/// breaks. Returns false when no such coordinate exists.
bool perturb_witness(const Instance& inst, Witness& w, std::uint64_t seed);

}  // namespace padic
