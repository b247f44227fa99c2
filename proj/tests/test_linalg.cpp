#include <doctest.h>

#include "padic/linalg.hpp"
#include "support/oracles.hpp"

using namespace padic;

namespace {

QVector mat_vec(const QMatrix& a, const QVector& x) {
  QVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
  return r;
}

void check_space(const QMatrix& a, const QVector& b, const SolutionSpace& s) {
  CHECK(mat_vec(a, s.particular) == b);
  for (const auto& y : s.basis) CHECK(mat_vec(a, y) == QVector(a.rows()));
  CHECK(s.dimension() == a.cols() - rank(a));
  if (!s.basis.empty()) CHECK(rank(QMatrix::from_rows(s.basis, a.cols())) == s.dimension());
}

}  // namespace

TEST_CASE("solve_affine examples") {
  auto unique = solve_affine(QMatrix::identity(2), {3, 4});
  REQUIRE(unique);
  CHECK(unique->particular == QVector{3, 4});
  CHECK(unique->dimension() == 0);

  CHECK_FALSE(solve_affine(QMatrix::from_rows({{1}, {1}}, 1), {0, 1}));

  const QMatrix line = QMatrix::from_rows({{1, 1}}, 2);
  auto s = solve_affine(line, {1});
  REQUIRE(s);
  check_space(line, {1}, *s);
  REQUIRE(s->dimension() == 1);
  CHECK(s->basis[0][0] == -s->basis[0][1]);
}

TEST_CASE("solve_affine on random systems") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 6;
    const QMatrix a = oracle::random_matrix(rng, m, n, 9, 0.3);
    QVector x(n);
    for (auto& v : x) v = oracle::random_rational(rng, 9);
    const QVector b = mat_vec(a, x);
    auto s = solve_affine(a, b);
    REQUIRE(s);
    check_space(a, b, *s);
  }
}

TEST_CASE("determinant and rank") {
  CHECK(determinant(QMatrix::from_rows({{1, 2}, {3, 4}}, 2)) == -2);
  CHECK(rank(QMatrix::from_rows({{1, 2}, {2, 4}}, 2)) == 1);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const QMatrix a = oracle::random_matrix(rng, 4, 4, 7, 0.2);
    CHECK(determinant(a) == oracle::det(a));
  }
}

TEST_CASE("pivot function encodes 2f") {
  const PivotSpec spec(Prime(2UL), {ExtInt(1), ExtInt::neg_inf(), ExtInt(0)}, {1, 0, 0});
  CHECK(spec.twice_f(Rational(4), 0) == ExtInt(2 * (2 + 1) + 1));
  CHECK(spec.twice_f(Rational(4), 1).is_neg_inf());
  CHECK(spec.twice_f(Rational(0), 1).is_pos_inf());
  CHECK(spec.twice_f(Rational(1, 2), 2) == ExtInt(-2));
}

TEST_CASE("f-minimal echelon examples") {
  const QMatrix zero(2, 3);
  const EchelonResult r0 = f_minimal_echelon(zero, PivotSpec(Prime(2UL), {0, 0, 0}));
  CHECK(r0.u == QMatrix::identity(2));
  CHECK(r0.sigma == std::vector<std::size_t>{0, 1, 2});
  CHECK(r0.b == zero);
  CHECK(r0.rank() == 0);

  const QMatrix a = QMatrix::from_rows({{2, 1}}, 2);
  const PivotSpec spec(Prime(2UL), {0, 0}, {0, 0});
  const EchelonResult r = f_minimal_echelon(a, spec);
  CHECK(r.sigma == std::vector<std::size_t>{1, 0});
  CHECK(r.b == QMatrix::from_rows({{1, 2}}, 2));
  CHECK(oracle::audit_echelon(a, spec, r).all());
}

TEST_CASE("ties go to the lowest original column") {
  const QMatrix a = QMatrix::from_rows({{3, 5, 7}}, 3);
  const EchelonResult r = f_minimal_echelon(a, PivotSpec(Prime(2UL), {0, 0, 0}));
  CHECK(r.sigma[0] == 0);
  const EchelonResult r2 = f_minimal_echelon(a, PivotSpec(Prime(2UL), {1, 0, 0}));
  CHECK(r2.sigma[0] == 1);
}

TEST_CASE("echelon audit on random matrices") {
  std::mt19937_64 rng(77);
  for (unsigned long pv : {2UL, 3UL, 5UL}) {
    const Prime p(pv);
    for (int k = 0; k < 200; ++k) {
      const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 6;
      const QMatrix a = oracle::random_matrix(rng, m, n, 20, 0.35);
      std::vector<ExtInt> c;
      std::vector<std::uint8_t> delta;
      for (std::size_t j = 0; j < n; ++j) {
        const bool unbounded = rng() % 6 == 0;
        c.push_back(unbounded ? ExtInt::neg_inf() : ExtInt(long(rng() % 9) - 4));
        delta.push_back(pv == 2 && !unbounded && rng() % 3 == 0 ? 1 : 0);
      }
      const PivotSpec spec(p, c, delta);
      const EchelonResult r = f_minimal_echelon(a, spec);
      const oracle::EchelonAudit audit = oracle::audit_echelon(a, spec, r);
      REQUIRE(audit.product);
      REQUIRE(audit.shape);
      REQUIRE(audit.minimal);
      REQUIRE(audit.b_prime);
      REQUIRE(audit.b_double_prime);
      REQUIRE(audit.invertible);
      CHECK(r.rank() == rank(a));
    }
  }
}

TEST_CASE("Smith normal form") {
  auto z = [](std::vector<std::vector<long>> rows) {
    ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  };
  const SmithForm s = smith_normal_form(z({{2, 0}, {0, 3}}));
  CHECK(s.d == z({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(z({{0, 0}, {0, 0}})).d == z({{0, 0}, {0, 0}}));
  CHECK(smith_normal_form(z({{1}})).d == z({{1}}));

  std::mt19937_64 rng(4);
  for (int k = 0; k < 150; ++k) {
    const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    ZMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = long(rng() % 41) - 20;
    const SmithForm f = smith_normal_form(a);
    REQUIRE(f.u * a * f.v == f.d);
    CHECK(abs(determinant(f.u)) == 1);
    CHECK(abs(determinant(f.v)) == 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(f.d(i, j) == 0);
    for (std::size_t i = 0; i < f.rank; ++i) CHECK(f.d(i, i) > 0);
    for (std::size_t i = 0; i + 1 < f.rank; ++i) CHECK(f.d(i + 1, i + 1) % f.d(i, i) == 0);
    for (std::size_t i = f.rank; i < std::min(m, n); ++i) CHECK(f.d(i, i) == 0);
  }
}

TEST_CASE("clearing denominators scales each row by its lcm") {
  const QMatrix a = QMatrix::from_rows({{Rational(1, 2), Rational(1, 3)}, {2, 0}}, 2);
  auto [z, rhs] = clear_denominators(a, {Rational(1, 4), 1});
  CHECK(z(0, 0) == 6);
  CHECK(z(0, 1) == 4);
  CHECK(rhs[0] == 3);
  CHECK(z(1, 0) == 2);
  CHECK(rhs[1] == 1);
}
