#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

using QVector = std::vector<Rational>;

/// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t i, std::size_t from_col = 0) const;
  bool is_zero() const;

  QMatrix transpose() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);

/// Column permutation: column j of A·P is column sigma[j] of A.
QMatrix permutation_matrix(const std::vector<std::size_t>& sigma);

/// Exact determinant by Gaussian elimination (square input).
Rational determinant(QMatrix a);

std::size_t rank(QMatrix a);

// ---------------------------------------------------------------------------
// Affine solution spaces

/// L = { particular + Σ λ_k basis[k] }.
struct SolutionSpace {
  QVector particular;
  std::vector<QVector> basis;

  std::size_t dimension() const { return basis.size(); }
};

/// Solution space of A·x = b, or nullopt when the system is inconsistent.
std::optional<SolutionSpace> solve_affine(const QMatrix& a, const QVector& b);

// ---------------------------------------------------------------------------
// f-minimal row echelon form

/// Pivot function f(a, j) = vp(a) + c_j + δ_j/2, evaluated as 2·f so that all
/// comparisons stay in Z ∪ {±∞}. f(0, j) = +∞ always.
struct PivotSpec {
  Prime prime;
  std::vector<ExtInt> bounds;
  std::vector<std::uint8_t> flags;

  PivotSpec(Prime p, std::vector<ExtInt> c, std::vector<std::uint8_t> delta = {});

  std::size_t size() const { return bounds.size(); }
  ExtInt twice_f(const Rational& a, std::size_t column) const;
};

struct EchelonResult {
  QMatrix u;
  std::vector<std::size_t> sigma;
  QMatrix b;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

/// Computes U and σ such that B = U·A·P_σ is in row echelon form and every
/// pivot minimizes f_σ within its row over the columns from the pivot on.
/// Ties go to the lowest column index.
EchelonResult f_minimal_echelon(const QMatrix& a, const PivotSpec& spec);

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form

class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ZMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const ZMatrix&, const ZMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

ZMatrix operator*(const ZMatrix& a, const ZMatrix& b);

/// D = U·A·V with U, V unimodular and D diagonal, d₁ | d₂ | … | d_r, dᵢ > 0.
struct SmithForm {
  ZMatrix u;
  ZMatrix d;
  ZMatrix v;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const ZMatrix& a);

BigInt determinant(const ZMatrix& a);

/// Multiplies every row of [A | b] by the lcm of its denominators.
std::pair<ZMatrix, std::vector<BigInt>> clear_denominators(const QMatrix& a, const QVector& b);

}  // namespace padic
