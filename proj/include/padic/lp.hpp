#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/linalg.hpp"

namespace padic {

/// A·x = b, C·x ≤ d, E·x < f over free rational x.
struct LPSystem {
  std::size_t num_vars = 0;
  std::vector<QVector> eq_lhs;
  QVector eq_rhs;
  std::vector<QVector> weak_lhs;
  QVector weak_rhs;
  std::vector<QVector> strict_lhs;
  QVector strict_rhs;

  /// Throws InputError on mismatched dimensions.
  void validate() const;
};

/// Multipliers y (free), z ≥ 0, w ≥ 0 with Aᵀy + Cᵀz + Eᵀw = 0 and either
/// bᵀy + dᵀz + fᵀw < 0, or bᵀy + dᵀz + fᵀw ≤ 0 with some w > 0.
struct FarkasCertificate {
  QVector y;
  QVector z;
  QVector w;
};

struct LPResult {
  bool feasible = false;
  QVector witness;
  std::optional<FarkasCertificate> certificate;
};

/// Exact check that the certificate proves sys infeasible.
bool check_certificate(const LPSystem& sys, const FarkasCertificate& cert);

/// Exact check of all three blocks at x.
bool satisfies(const LPSystem& sys, const QVector& x);

LPResult lp_feasible(const LPSystem& sys);

// ---------------------------------------------------------------------------
// Standard-form simplex, exposed for testing.

enum class LPStatus : std::uint8_t { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  LPStatus status = LPStatus::Infeasible;
  QVector x;
  Rational value;
};

/// maximize cᵀx subject to A·x = b, x ≥ 0. Two-phase, Bland's rule.
SimplexResult simplex_maximize(const QMatrix& a, const QVector& b, const QVector& c);

// ---------------------------------------------------------------------------
// Strictification

struct StrictifyResult {
  bool feasible = false;
  /// Indices (into the input weak block) turned into equalities, in order.
  std::vector<std::size_t> converted;
  /// Input system with the converted rows moved to the equation block.
  LPSystem residual;
  /// Satisfies the residual with every weak row strict.
  QVector strict_point;
  /// s_ψ per remaining weak row ψ, in the order of residual.weak_lhs.
  std::vector<QVector> samples;
  std::size_t restarts = 0;
  std::optional<FarkasCertificate> certificate;  // when infeasible
  std::vector<std::string> trace;
};

/// Repeatedly checks whether each weak row can hold strictly together with
/// the rest; a row that cannot becomes an equality and the loop restarts.
StrictifyResult strictify(const LPSystem& sys);

}  // namespace padic
