#include "fraisse/bancat/linalg.hpp"

#include <utility>

namespace fraisse::bancat {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw LinAlgError("QMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector QMatrix::row(std::size_t i) const { return QVector(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

QVector QMatrix::col(std::size_t j) const {
  QVector v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
  if (x.cols != y.rows) throw LinAlgError("matrix product: shape mismatch");
  QMatrix m(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) m(i, j) += x(i, k) * y(k, j);
    }
  return m;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw LinAlgError("matrix difference: shape mismatch");
  QMatrix m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] -= y.a[i];
  return m;
}

QMatrix operator*(const Q& s, const QMatrix& x) {
  QMatrix m = x;
  for (auto& v : m.a) v *= s;
  return m;
}

QVector operator*(const QMatrix& m, const QVector& v) {
  if (m.cols != v.size()) throw LinAlgError("matrix-vector product: shape mismatch");
  QVector out(m.rows, Q(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

QMatrix transpose(const QMatrix& m) {
  QMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

Q dot(const QVector& x, const QVector& y) {
  if (x.size() != y.size()) throw LinAlgError("dot: length mismatch");
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  QMatrix w = m;
  return rref(w, w.cols).size();
}

QMatrix nullspace(const QMatrix& m) {
  QMatrix w = m;
  auto piv = rref(w, w.cols);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  QMatrix basis(m.cols, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -w(r, free[k]);
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows) throw LinAlgError("solve: shape mismatch");
  QMatrix aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug, m.cols);
  for (std::size_t i = piv.size(); i < m.rows; ++i)
    if (aug(i, m.cols) != 0) return std::nullopt;
  QVector x(m.cols, Q(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows != m.cols) throw LinAlgError("inverse: matrix is not square");
  std::size_t n = m.rows;
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

namespace {

struct Tableau {
  std::size_t m;
  std::size_t ncols;
  std::vector<QVector> rows;  // each of length ncols + 1 (rhs last)
  QVector obj;                // reduced costs, length ncols + 1 (value last)
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t k) {
    Q inv = 1 / rows[r][k];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][k] == 0) continue;
      Q f = rows[i][k];
      for (std::size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (obj[k] != 0) {
      Q f = obj[k];
      for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * rows[r][j];
    }
    basis[r] = k;
  }

  void set_objective(const QVector& c) {
    obj.assign(ncols + 1, Q(0));
    for (std::size_t j = 0; j < ncols; ++j) obj[j] = -c[j];
    for (std::size_t i = 0; i < m; ++i) {
      const Q& cb = c[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) obj[j] += cb * rows[i][j];
    }
  }

  // Maximizes; columns >= allowed may not enter. Returns false if unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t k = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (obj[j] < 0) {
          k = j;
          break;
        }
      if (k == allowed) return true;
      std::size_t r = m;
      Q best;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rows[i][k] > 0)) continue;
        Q ratio = rows[i][ncols] / rows[i][k];
        if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m) return false;
      pivot(r, k);
    }
  }
};

}  // namespace

LPResult lp_maximize(const QVector& c, const std::vector<QVector>& a, const QVector& b) {
  std::size_t n = c.size();
  std::size_t m = a.size();
  if (b.size() != m) throw LinAlgError("lp: shape mismatch");
  // Columns: p (n), q (n), slack (m), artificial (m).
  std::size_t real = 2 * n + m;
  Tableau t{m, real + m, {}, {}, {}};
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw LinAlgError("lp: ragged constraint");
    QVector row(t.ncols + 1, Q(0));
    Q sign = b[i] < 0 ? Q(-1) : Q(1);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = sign * a[i][j];
      row[n + j] = -sign * a[i][j];
    }
    row[2 * n + i] = sign;
    row[real + i] = 1;
    row[t.ncols] = sign * b[i];
    t.rows.push_back(std::move(row));
    t.basis.push_back(real + i);
  }
  QVector phase1(t.ncols, Q(0));
  for (std::size_t i = 0; i < m; ++i) phase1[real + i] = -1;
  t.set_objective(phase1);
  t.run(real);
  LPResult out;
  if (t.obj[t.ncols] != 0) {
    out.status = LPStatus::Infeasible;
    return out;
  }
  // Artificials still basic sit at 0 on rows with no real support left.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < real) continue;
    for (std::size_t j = 0; j < real; ++j)
      if (t.rows[i][j] != 0) {
        t.pivot(i, j);
        break;
      }
  }
  QVector phase2(t.ncols, Q(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = c[j];
    phase2[n + j] = -c[j];
  }
  t.set_objective(phase2);
  if (!t.run(real)) {
    out.status = LPStatus::Unbounded;
    return out;
  }
  QVector z(t.ncols, Q(0));
  for (std::size_t i = 0; i < m; ++i) z[t.basis[i]] = t.rows[i][t.ncols];
  out.x.assign(n, Q(0));
  for (std::size_t j = 0; j < n; ++j) out.x[j] = z[j] - z[n + j];
  out.value = dot(c, out.x);
  out.status = LPStatus::Optimal;
  return out;
}

}  // namespace fraisse::bancat
