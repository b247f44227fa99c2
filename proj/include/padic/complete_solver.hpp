#pragma once

#include <optional>

#include "padic/instance.hpp"
#include "padic/solver_geq.hpp"
#include "padic/solver_leq.hpp"

namespace padic {

struct CompleteOptions {
  /// When set, ≤-type variables that still interact with ≥-type variables
  /// assume vp(x) ≥ window. Sat stays sound; Unsat becomes "Unsat within window".
  std::optional<BigInt> window;
  /// Values > 1 explore the first branching level concurrently.
  unsigned threads = 1;
  /// Largest |exponent| a digit substitution may materialize.
  BigInt guard = default_guard();
  /// Propagation rounds per node; 0 means 4 · (number of variables).
  std::size_t propagation_rounds = 0;
  std::size_t max_nodes = 2'000'000;
  /// Finite windows wider than this are not enumerated (verdict Unknown).
  std::size_t max_window_width = 4096;
};

struct CompleteStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t pruned = 0;
  bool window_used = false;
};

/// Complete decision procedure for one prime and any mix of ≥, ≤, =, ≠.
///
/// Per node: lower bounds are propagated through the equations, the system
/// is split into connected components, and each component is either handed
/// to a polynomial leaf solver (all ≥-type or all ≤/≠-type), refuted by one
/// of the two relaxations, or split on a variable with a mixed window:
/// exact valuations v become digit substitutions x = i·p^v + p^(v+1)·y
/// (a δ flag when p = 2), finite windows are enumerated, and ≥ combined
/// with ≠ splits into the excluded range and a raised lower bound.
///
/// Throws InputError for more than one prime or for order constraints.
Verdict solve_complete(const NormalizedInstance& inst, const CompleteOptions& opts = {},
                       CompleteStats* stats = nullptr);

}  // namespace padic
