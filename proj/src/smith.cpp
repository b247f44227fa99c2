#include "padic/linalg.hpp"

namespace padic {

ZMatrix ZMatrix::identity(std::size_t n) {
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ZMatrix operator*(const ZMatrix& a, const ZMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("integer matrix product: dimension mismatch");
  ZMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

BigInt determinant(const ZMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  QMatrix q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = Rational(a(i, j));
  return determinant(std::move(q)).get_num();
}

namespace {

struct SmithState {
  ZMatrix d, u, v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
  }
  // row[target] += k · row[source]
  void add_row(std::size_t target, std::size_t source, const BigInt& k) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(target, j) += k * d(source, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(target, j) += k * u(source, j);
  }
  // col[target] += k · col[source]
  void add_col(std::size_t target, std::size_t source, const BigInt& k) {
    for (std::size_t i = 0; i < d.rows(); ++i) d(i, target) += k * d(i, source);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, target) += k * v(i, source);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = -d(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
  }
};

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithState s{a, ZMatrix::identity(m), ZMatrix::identity(n)};
  std::size_t t = 0;
  for (; t < m && t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s.d(i, j) != 0 && (bi == m || abs(s.d(i, j)) < abs(s.d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) {
        SmithForm out{std::move(s.u), std::move(s.d), std::move(s.v), t};
        return out;
      }
      s.swap_rows(t, bi);
      s.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s.d(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), s.d(i, t).get_mpz_t(), s.d(t, t).get_mpz_t());
        s.add_row(i, t, BigInt(-q));
        if (s.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s.d(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), s.d(t, j).get_mpz_t(), s.d(t, t).get_mpz_t());
        s.add_col(j, t, BigInt(-q));
        if (s.d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any row holding a non-multiple into row t.
      std::size_t offender = m;
      for (std::size_t i = t + 1; i < m && offender == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s.d(i, j) % s.d(t, t) != 0) {
            offender = i;
            break;
          }
      if (offender == m) break;
      s.add_row(t, offender, BigInt(1));
    }
    if (s.d(t, t) < 0) s.negate_row(t);
  }
  std::size_t rank = 0;
  while (rank < m && rank < n && s.d(rank, rank) != 0) ++rank;
  return SmithForm{std::move(s.u), std::move(s.d), std::move(s.v), rank};
}

std::pair<ZMatrix, std::vector<BigInt>> clear_denominators(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw InputError("clear_denominators: rhs length mismatch");
  ZMatrix z(a.rows(), a.cols());
  std::vector<BigInt> rhs(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = b[i].get_den();
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, BigInt(a(i, j).get_den()));
    for (std::size_t j = 0; j < a.cols(); ++j) z(i, j) = Rational(a(i, j) * l).get_num();
    rhs[i] = Rational(b[i] * l).get_num();
  }
  return {std::move(z), std::move(rhs)};
}

}  // namespace padic
