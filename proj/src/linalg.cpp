#include "padic/linalg.hpp"

#include <numeric>

namespace padic {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector QMatrix::col(std::size_t j) const {
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void QMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void QMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

bool QMatrix::row_is_zero(std::size_t i, std::size_t from_col) const {
  for (std::size_t j = from_col; j < cols_; ++j)
    if ((*this)(i, j) != 0) return false;
  return true;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: dimension mismatch");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector product: dimension mismatch");
  QVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) y[i] += a(i, j) * x[j];
  return y;
}

QMatrix permutation_matrix(const std::vector<std::size_t>& sigma) {
  QMatrix p(sigma.size(), sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) p(sigma[j], j) = 1;
  return p;
}

namespace {

// Forward elimination in place; returns the pivot columns and the sign of the
// row permutation applied.
std::pair<std::vector<std::size_t>, int> forward_eliminate(QMatrix& a) {
  std::vector<std::size_t> pivots;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r) {
      a.swap_rows(sel, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational factor = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {pivots, sign};
}

}  // namespace

Rational determinant(QMatrix a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  auto [pivots, sign] = forward_eliminate(a);
  if (pivots.size() < a.rows()) return 0;
  Rational det = sign;
  for (std::size_t i = 0; i < a.rows(); ++i) det *= a(i, i);
  return det;
}

std::size_t rank(QMatrix a) { return forward_eliminate(a).first.size(); }

std::optional<SolutionSpace> solve_affine(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw InputError("solve_affine: rhs length does not match row count");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Reduced row echelon form of [A | b].
  QMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t sel = r;
    while (sel < m && aug(sel, c) == 0) ++sel;
    if (sel == m) continue;
    aug.swap_rows(sel, r);
    const Rational inv = 1 / aug(r, c);
    for (std::size_t j = c; j <= n; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Rational factor = aug(i, c);
      for (std::size_t j = c; j <= n; ++j) aug(i, j) -= factor * aug(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (aug(i, n) != 0) return std::nullopt;

  SolutionSpace space;
  space.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    space.particular[pivots[i]] = aug(i, n);
    is_pivot[pivots[i]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector y(n, Rational(0));
    y[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = -aug(i, f);
    space.basis.push_back(std::move(y));
  }
  return space;
}

// ---------------------------------------------------------------------------

PivotSpec::PivotSpec(Prime p, std::vector<ExtInt> c, std::vector<std::uint8_t> delta)
    : prime(std::move(p)), bounds(std::move(c)), flags(std::move(delta)) {
  if (flags.empty()) flags.assign(bounds.size(), 0);
  if (flags.size() != bounds.size()) throw InputError("PivotSpec: bounds and flags differ in length");
}

ExtInt PivotSpec::twice_f(const Rational& a, std::size_t column) const {
  const ExtInt v = vp(a, prime);
  if (v.is_pos_inf()) return ExtInt::pos_inf();
  const ExtInt& c = bounds.at(column);
  const ExtInt twice_c = c.is_finite() ? ExtInt(BigInt(2 * c.value())) : c;
  return pivot_sum(pivot_sum(ExtInt(BigInt(2 * v.value())), twice_c), ExtInt(long(flags[column])));
}

EchelonResult f_minimal_echelon(const QMatrix& a, const PivotSpec& spec) {
  if (spec.size() != a.cols()) throw InputError("f_minimal_echelon: PivotSpec size does not match columns");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  EchelonResult res{QMatrix::identity(m), {}, a, {}};
  res.sigma.resize(n);
  std::iota(res.sigma.begin(), res.sigma.end(), std::size_t{0});
  QMatrix& b = res.b;
  QMatrix& u = res.u;

  for (std::size_t r = 0; r < m && r < n; ++r) {
    // A zero top row of the remaining block is swapped with the first nonzero one.
    std::size_t sel = r;
    while (sel < m && b.row_is_zero(sel, r)) ++sel;
    if (sel == m) break;
    b.swap_rows(r, sel);
    u.swap_rows(r, sel);

    // Pivot: minimal f over nonzero entries of row r, lowest column on ties.
    std::size_t best = n;
    ExtInt best_f;
    for (std::size_t j = r; j < n; ++j) {
      if (b(r, j) == 0) continue;
      ExtInt fj = spec.twice_f(b(r, j), res.sigma[j]);
      if (best == n || fj < best_f || (fj == best_f && res.sigma[j] < res.sigma[best])) {
        best = j;
        best_f = std::move(fj);
      }
    }
    b.swap_cols(r, best);
    std::swap(res.sigma[r], res.sigma[best]);

    for (std::size_t i = r + 1; i < m; ++i) {
      if (b(i, r) == 0) continue;
      const Rational factor = b(i, r) / b(r, r);
      for (std::size_t j = r; j < n; ++j) b(i, j) -= factor * b(r, j);
      for (std::size_t j = 0; j < m; ++j) u(i, j) -= factor * u(r, j);
    }
    res.pivots.push_back(r);
  }
  return res;
}

}  // namespace padic
