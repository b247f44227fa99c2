#include "padic/lp.hpp"

#include <algorithm>

namespace padic {

namespace {

Rational dot(const QVector& a, const QVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * x[i];
  return s;
}

// Dense tableau for max cᵀx; obj[j] holds the reduced cost c_Bᵀ B⁻¹ A_j − c_j
// and obj.back() the objective value.
struct Tableau {
  std::vector<QVector> rows;
  std::vector<std::size_t> basis;
  QVector obj;
  std::size_t width = 0;  // columns excluding rhs

  void pivot(std::size_t r, std::size_t c) {
    QVector& pr = rows[r];
    const Rational inv = 1 / pr[c];
    for (auto& v : pr)
      if (v != 0) v *= inv;
    auto eliminate = [&](QVector& row) {
      if (row[c] == 0) return;
      const Rational factor = row[c];
      for (std::size_t j = 0; j <= width; ++j)
        if (pr[j] != 0) row[j] -= factor * pr[j];
    };
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r) eliminate(rows[i]);
    eliminate(obj);
    basis[r] = c;
  }

  void set_objective(const QVector& c) {
    obj.assign(width + 1, 0);
    for (std::size_t j = 0; j < width; ++j) obj[j] = j < c.size() ? Rational(-c[j]) : Rational(0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t bj = basis[i];
      const Rational cb = bj < c.size() ? c[bj] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width; ++j)
        if (rows[i][j] != 0) obj[j] += cb * rows[i][j];
    }
  }

  // Bland's rule: lowest entering index, ties in the ratio test to the lowest basic index.
  LPStatus optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (obj[j] < 0) {
          enter = j;
          break;
        }
      if (enter == allowed) return LPStatus::Optimal;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        const Rational ratio = rows[i][width] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

std::vector<QVector> transpose_rows(const std::vector<QVector>& rows, std::size_t cols) {
  std::vector<QVector> t(cols, QVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = rows[i][j];
  return t;
}

// Searches multipliers for one of the two certificate shapes.
std::optional<FarkasCertificate> find_certificate(const LPSystem& sys) {
  const std::size_t n = sys.num_vars;
  const std::size_t me = sys.eq_lhs.size(), mw = sys.weak_lhs.size(), ms = sys.strict_lhs.size();
  const auto at = transpose_rows(sys.eq_lhs, n);
  const auto ct = transpose_rows(sys.weak_lhs, n);
  const auto et = transpose_rows(sys.strict_lhs, n);
  // Columns: y⁺ (me), y⁻ (me), z (mw), w (ms), slack s.
  const std::size_t cols = 2 * me + mw + ms + 1;
  const std::size_t s_col = cols - 1;

  for (int shape = 0; shape < 2; ++shape) {
    if (shape == 1 && ms == 0) break;
    std::vector<QVector> rows;
    QVector rhs;
    for (std::size_t k = 0; k < n; ++k) {
      QVector r(cols);
      for (std::size_t i = 0; i < me; ++i) r[i] = at[k][i], r[me + i] = -at[k][i];
      for (std::size_t i = 0; i < mw; ++i) r[2 * me + i] = ct[k][i];
      for (std::size_t i = 0; i < ms; ++i) r[2 * me + mw + i] = et[k][i];
      rows.push_back(std::move(r));
      rhs.push_back(0);
    }
    QVector value(cols);
    for (std::size_t i = 0; i < me; ++i) value[i] = sys.eq_rhs[i], value[me + i] = -sys.eq_rhs[i];
    for (std::size_t i = 0; i < mw; ++i) value[2 * me + i] = sys.weak_rhs[i];
    for (std::size_t i = 0; i < ms; ++i) value[2 * me + mw + i] = sys.strict_rhs[i];
    if (shape == 0) {
      rows.push_back(value);  // value = −1
      rhs.push_back(-1);
    } else {
      value[s_col] = 1;  // value + s = 0
      rows.push_back(value);
      rhs.push_back(0);
      QVector norm(cols);
      for (std::size_t i = 0; i < ms; ++i) norm[2 * me + mw + i] = 1;
      rows.push_back(norm);  // Σw = 1
      rhs.push_back(1);
    }
    QMatrix a = QMatrix::from_rows(rows, cols);
    SimplexResult r = simplex_maximize(a, rhs, QVector(cols));
    if (r.status == LPStatus::Infeasible) continue;
    FarkasCertificate cert;
    for (std::size_t i = 0; i < me; ++i) cert.y.push_back(r.x[i] - r.x[me + i]);
    for (std::size_t i = 0; i < mw; ++i) cert.z.push_back(r.x[2 * me + i]);
    for (std::size_t i = 0; i < ms; ++i) cert.w.push_back(r.x[2 * me + mw + i]);
    return cert;
  }
  return std::nullopt;
}

LPSystem with_row_strict(const LPSystem& sys, std::size_t weak_row) {
  LPSystem out = sys;
  out.strict_lhs.push_back(sys.weak_lhs[weak_row]);
  out.strict_rhs.push_back(sys.weak_rhs[weak_row]);
  out.weak_lhs.erase(out.weak_lhs.begin() + static_cast<std::ptrdiff_t>(weak_row));
  out.weak_rhs.erase(out.weak_rhs.begin() + static_cast<std::ptrdiff_t>(weak_row));
  return out;
}

std::string render_row(const QVector& row, const Rational& rhs, const char* rel) {
  std::string s;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(row[j]) + "·x" + std::to_string(j);
  }
  if (s.empty()) s = "0";
  return s + " " + rel + " " + to_string(rhs);
}

}  // namespace

void LPSystem::validate() const {
  auto check = [&](const std::vector<QVector>& lhs, const QVector& rhs, const char* what) {
    if (lhs.size() != rhs.size())
      throw InputError(std::string("LPSystem: ") + what + " block has mismatched rhs length");
    for (const auto& r : lhs)
      if (r.size() != num_vars)
        throw InputError(std::string("LPSystem: ") + what + " row length differs from variable count");
  };
  check(eq_lhs, eq_rhs, "equation");
  check(weak_lhs, weak_rhs, "weak");
  check(strict_lhs, strict_rhs, "strict");
}

bool satisfies(const LPSystem& sys, const QVector& x) {
  if (x.size() != sys.num_vars) return false;
  for (std::size_t i = 0; i < sys.eq_lhs.size(); ++i)
    if (dot(sys.eq_lhs[i], x) != sys.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < sys.weak_lhs.size(); ++i)
    if (dot(sys.weak_lhs[i], x) > sys.weak_rhs[i]) return false;
  for (std::size_t i = 0; i < sys.strict_lhs.size(); ++i)
    if (dot(sys.strict_lhs[i], x) >= sys.strict_rhs[i]) return false;
  return true;
}

bool check_certificate(const LPSystem& sys, const FarkasCertificate& cert) {
  if (cert.y.size() != sys.eq_lhs.size() || cert.z.size() != sys.weak_lhs.size() ||
      cert.w.size() != sys.strict_lhs.size())
    return false;
  for (const auto& v : cert.z)
    if (v < 0) return false;
  for (const auto& v : cert.w)
    if (v < 0) return false;
  for (std::size_t k = 0; k < sys.num_vars; ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i < cert.y.size(); ++i) s += cert.y[i] * sys.eq_lhs[i][k];
    for (std::size_t i = 0; i < cert.z.size(); ++i) s += cert.z[i] * sys.weak_lhs[i][k];
    for (std::size_t i = 0; i < cert.w.size(); ++i) s += cert.w[i] * sys.strict_lhs[i][k];
    if (s != 0) return false;
  }
  const Rational value = dot(cert.y, sys.eq_rhs) + dot(cert.z, sys.weak_rhs) + dot(cert.w, sys.strict_rhs);
  if (value < 0) return true;
  if (value > 0) return false;
  return std::any_of(cert.w.begin(), cert.w.end(), [](const Rational& v) { return v > 0; });
}

SimplexResult simplex_maximize(const QMatrix& a, const QVector& b, const QVector& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw InputError("simplex_maximize: dimension mismatch");

  // Phase 1 with one artificial per row, rows sign-normalized to b ≥ 0.
  Tableau t;
  t.width = n + m;
  for (std::size_t i = 0; i < m; ++i) {
    QVector row(t.width + 1);
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-a(i, j)) : a(i, j);
    row[n + i] = 1;
    row[t.width] = flip ? Rational(-b[i]) : b[i];
    t.rows.push_back(std::move(row));
    t.basis.push_back(n + i);
  }
  QVector phase1(t.width);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  t.set_objective(phase1);
  t.optimize(t.width);
  if (t.obj[t.width] != 0) return {LPStatus::Infeasible, {}, 0};

  // Drive artificials out of the basis; rows where that fails are redundant.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    if (col == n) {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    t.pivot(i, col);
    ++i;
  }

  t.set_objective(c);
  if (t.optimize(n) == LPStatus::Unbounded) return {LPStatus::Unbounded, {}, 0};
  SimplexResult r{LPStatus::Optimal, QVector(n), t.obj[t.width]};
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) r.x[t.basis[i]] = t.rows[i][t.width];
  return r;
}

LPResult lp_feasible(const LPSystem& sys) {
  sys.validate();
  const std::size_t n = sys.num_vars;
  const std::size_t me = sys.eq_lhs.size(), mw = sys.weak_lhs.size(), ms = sys.strict_lhs.size();
  // Columns: x⁺ (n), x⁻ (n), t⁺, t⁻, weak slacks (mw), strict slacks (ms), s_t.
  const std::size_t tp = 2 * n, tm = 2 * n + 1, sw = 2 * n + 2, se = sw + mw, st = se + ms;
  const std::size_t cols = st + 1;
  std::vector<QVector> rows;
  QVector rhs;
  auto add_x = [&](QVector& r, const QVector& coeffs) {
    for (std::size_t j = 0; j < n; ++j) r[j] = coeffs[j], r[n + j] = -coeffs[j];
  };
  for (std::size_t i = 0; i < me; ++i) {
    QVector r(cols);
    add_x(r, sys.eq_lhs[i]);
    rows.push_back(std::move(r));
    rhs.push_back(sys.eq_rhs[i]);
  }
  for (std::size_t i = 0; i < mw; ++i) {
    QVector r(cols);
    add_x(r, sys.weak_lhs[i]);
    r[sw + i] = 1;
    rows.push_back(std::move(r));
    rhs.push_back(sys.weak_rhs[i]);
  }
  for (std::size_t i = 0; i < ms; ++i) {
    QVector r(cols);
    add_x(r, sys.strict_lhs[i]);
    r[tp] = 1, r[tm] = -1, r[se + i] = 1;
    rows.push_back(std::move(r));
    rhs.push_back(sys.strict_rhs[i]);
  }
  {
    QVector r(cols);
    r[tp] = 1, r[tm] = -1, r[st] = 1;
    rows.push_back(std::move(r));
    rhs.push_back(1);
  }
  QVector objective(cols);
  objective[tp] = 1, objective[tm] = -1;
  SimplexResult s = simplex_maximize(QMatrix::from_rows(rows, cols), rhs, objective);
  if (s.status == LPStatus::Unbounded) throw InvariantError("slack LP reported unbounded");

  LPResult out;
  if (s.status == LPStatus::Optimal && (ms == 0 || s.value > 0)) {
    out.feasible = true;
    for (std::size_t j = 0; j < n; ++j) out.witness.push_back(s.x[j] - s.x[n + j]);
    if (!satisfies(sys, out.witness)) throw InvariantError("LP witness fails its own system");
    return out;
  }
  out.certificate = find_certificate(sys);
  if (!out.certificate || !check_certificate(sys, *out.certificate))
    throw InvariantError("LP reported infeasible but no valid certificate was found");
  return out;
}

StrictifyResult strictify(const LPSystem& sys) {
  sys.validate();
  StrictifyResult out;
  out.residual = sys;
  std::vector<std::size_t> origin(sys.weak_lhs.size());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;

  for (;;) {
    LPResult base = lp_feasible(out.residual);
    if (!base.feasible) {
      out.certificate = std::move(base.certificate);
      out.trace.push_back("base system infeasible");
      out.samples.clear();
      return out;
    }
    out.samples.clear();
    bool restarted = false;
    for (std::size_t k = 0; k < out.residual.weak_lhs.size(); ++k) {
      LPResult r = lp_feasible(with_row_strict(out.residual, k));
      if (r.feasible) {
        out.samples.push_back(std::move(r.witness));
        continue;
      }
      out.trace.push_back("weak row " + std::to_string(origin[k]) + " (" +
                          render_row(out.residual.weak_lhs[k], out.residual.weak_rhs[k], "<=") +
                          ") cannot hold strictly; converted to equality");
      out.converted.push_back(origin[k]);
      auto pos = static_cast<std::ptrdiff_t>(k);
      out.residual.eq_lhs.push_back(out.residual.weak_lhs[k]);
      out.residual.eq_rhs.push_back(out.residual.weak_rhs[k]);
      out.residual.weak_lhs.erase(out.residual.weak_lhs.begin() + pos);
      out.residual.weak_rhs.erase(out.residual.weak_rhs.begin() + pos);
      origin.erase(origin.begin() + pos);
      ++out.restarts;
      restarted = true;
      break;
    }
    if (restarted) {
      if (out.restarts > sys.weak_lhs.size()) throw InvariantError("strictify exceeded its restart bound");
      continue;
    }
    if (out.samples.empty()) {
      out.strict_point = std::move(base.witness);
    } else {
      out.strict_point.assign(sys.num_vars, 0);
      for (const auto& s : out.samples)
        for (std::size_t j = 0; j < sys.num_vars; ++j) out.strict_point[j] += s[j];
      const Rational k = out.samples.size();
      for (auto& v : out.strict_point) v /= k;
    }
    LPSystem all_strict = out.residual;
    for (std::size_t k = 0; k < all_strict.weak_lhs.size(); ++k) {
      all_strict.strict_lhs.push_back(all_strict.weak_lhs[k]);
      all_strict.strict_rhs.push_back(all_strict.weak_rhs[k]);
    }
    all_strict.weak_lhs.clear();
    all_strict.weak_rhs.clear();
    if (!satisfies(all_strict, out.strict_point))
      throw InvariantError("averaged point is not strictly feasible");
    out.feasible = true;
    return out;
  }
}

}  // namespace padic
