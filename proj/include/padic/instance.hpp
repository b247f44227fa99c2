#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padic/linalg.hpp"
#include "padic/power_sum.hpp"
#include "padic/rational.hpp"

namespace padic {

/// Valuation relations vp(x) ⋈ c. Lt and Gt are sugar for Le c−1 and Ge c+1.
enum class ValRel : std::uint8_t { Le, Ge, Eq, Ne, Lt, Gt };
enum class OrdRel : std::uint8_t { Lt, Le };

const char* to_string(ValRel r);
const char* to_string(OrdRel r);

struct Equation {
  QVector coeffs;
  Rational rhs;
};

struct ValuationConstraint {
  Prime prime;
  std::size_t var;
  ValRel rel;
  BigInt bound;
};

struct OrderConstraint {
  QVector coeffs;
  OrdRel rel;
  Rational rhs;
};

/// Linear equations, per-prime valuation constraints and order constraints
/// over named variables.
struct Instance {
  std::vector<std::string> variables;
  std::vector<Equation> equations;
  std::vector<ValuationConstraint> valuations;
  std::vector<OrderConstraint> orders;

  std::size_t size() const { return variables.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Throws InputError on dangling variable references or ragged rows.
  void validate() const;

  /// Distinct primes mentioned by valuation constraints, ascending.
  std::vector<Prime> primes() const;

  QMatrix equation_matrix() const;
  QVector equation_rhs() const;
};

/// Merged valuation window of one variable for one prime:
/// l ≤ vp(x) ≤ u, vp(x) ∉ excluded, and x = 0 admissible iff allow_zero.
struct VarProfile {
  ExtInt lower = ExtInt::neg_inf();
  ExtInt upper = ExtInt::pos_inf();
  std::vector<BigInt> excluded;  // sorted, all inside [lower, upper]
  bool exact = false;            // δ flag: an = constraint routed to the p = 2 ≥-solver
  bool allow_zero = true;

  bool admits(const ExtInt& v) const;
  bool is_free() const { return lower.is_neg_inf() && upper.is_pos_inf() && excluded.empty(); }

  friend bool operator==(const VarProfile&, const VarProfile&) = default;
};

/// Which relation kinds occur for one prime (after sugar rewriting).
struct KindSet {
  bool ge = false;
  bool le = false;
  bool eq = false;
  bool ne = false;

  bool any() const { return ge || le || eq || ne; }
  friend bool operator==(const KindSet&, const KindSet&) = default;
};

struct PrimeProfile {
  Prime prime;
  std::vector<VarProfile> vars;
  KindSet kinds;
};

struct NormalizedInstance {
  std::vector<std::string> variables;
  std::vector<Equation> equations;
  std::vector<PrimeProfile> primes;
  std::vector<OrderConstraint> orders;

  std::size_t size() const { return variables.size(); }
  QMatrix equation_matrix() const;
  QVector equation_rhs() const;
  const PrimeProfile* profile_for(const Prime& p) const;
};

struct ImmediateUnsat {
  Prime prime;
  std::size_t var;
  std::string reason;
};

using NormalizeResult = std::variant<NormalizedInstance, ImmediateUnsat>;

/// Merges every variable's constraints per prime into its most restrictive
/// window and detects windows that are empty on their own.
NormalizeResult normalize(const Instance& inst);

/// Re-emits a normalized instance as plain constraints (≥, ≤, =, ≠).
Instance to_instance(const NormalizedInstance& n);

enum class Fragment : std::uint8_t { None, GeqP, LeqP, Hard };

const char* to_string(Fragment f);
/// "in P" or "NP-complete".
const char* complexity_label(Fragment f);

struct FragmentClass {
  std::vector<std::pair<Prime, Fragment>> per_prime;
  bool has_order = false;
  bool multi_prime = false;
};

/// Fragment of one prime's constraint kinds (the dichotomy table).
Fragment classify_kinds(const Prime& p, const KindSet& kinds);
FragmentClass classify(const NormalizedInstance& n);

/// Size measure h of a rational: 1 + ⌈log₂|a|⌉ + ⌈log₂|b|⌉, h(0) = 1.
BigInt rational_height(const Rational& q);

/// C(A, b, orders, constants) = s + Σ h(entries), s the largest row or column
/// count among the matrices.
BigInt instance_size(const Instance& inst);

// ---------------------------------------------------------------------------
// Verdicts

enum class Status : std::uint8_t { Sat, Unsat, Unknown };
const char* to_string(Status s);

/// A witness coordinate: plain rational, or a power sum in one prime.
using Value = std::variant<Rational, PowerSum>;
using Witness = std::vector<Value>;

std::string to_string(const Value& v);

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Witness> witness;
  std::string code;
  std::string reason;
  std::vector<std::string> diagnostics;
  std::vector<std::size_t> variables;  // variables named by the reason

  static Verdict sat(Witness w, std::string reason = {});
  static Verdict sat_without_witness(std::string reason);
  static Verdict unsat(std::string code, std::string reason, std::vector<std::size_t> vars = {});
  static Verdict unknown(std::string code, std::string reason, std::vector<std::size_t> vars = {});

  bool is_sat() const { return status == Status::Sat; }
  bool is_unsat() const { return status == Status::Unsat; }
  bool is_unknown() const { return status == Status::Unknown; }
};

}  // namespace padic
