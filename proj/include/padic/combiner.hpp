#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "padic/complete_solver.hpp"
#include "padic/instance.hpp"
#include "padic/lp.hpp"
#include "padic/solver_geq.hpp"
#include "padic/solver_leq.hpp"

namespace padic {

struct SolveOptions {
  std::optional<BigInt> window;
  unsigned threads = 1;
  BigInt guard = default_guard();
};

/// The ≥-problem of one prime: c = lower bounds, δ = exact flags.
GeqProblem to_geq_problem(const NormalizedInstance& inst, const PrimeProfile& pp);
/// The ≤/≠-problem of one prime: c = upper bounds, D = excluded sets.
LeqProblem to_leq_problem(const NormalizedInstance& inst, const PrimeProfile& pp);

/// Decides an order-free instance with at most one prime by routing it to
/// the solver of its fragment.
Verdict solve_single_prime(const Instance& inst, const SolveOptions& opts = {});

struct CombinedTrace {
  StrictifyResult strictify;
  std::vector<std::pair<Prime, Verdict>> per_prime;
};

/// The system of equations and order constraints of inst.
LPSystem order_system(const Instance& inst);

/// Strictifies the order part, then decides equations plus each prime's
/// constraints separately. Sat with several primes or with order
/// constraints carries no witness; per-prime witnesses go to the diagnostics.
Verdict solve_combined(const Instance& inst, const SolveOptions& opts = {}, CombinedTrace* trace = nullptr);

/// Entry point for arbitrary instances.
Verdict solve(const Instance& inst, const SolveOptions& opts = {});

}  // namespace padic
