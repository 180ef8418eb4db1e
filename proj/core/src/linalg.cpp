#include "quantsel/linalg.hpp"

#include "quantsel/error.hpp"

namespace quantsel {

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Rat dot(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidInput, "dot: size mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecQ sub(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecQ add(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecQ scale(const VecQ& a, const Rat& s) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Rat norm_sq(const VecQ& a) { return dot(a, a); }

VecQ mat_vec(const MatQ& m, const VecQ& v) {
  if (static_cast<int>(v.size()) != m.cols)
    fail(ErrorCode::InvalidInput, "mat_vec: size mismatch");
  VecQ r(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

MatQ mat_mul(const MatQ& a, const MatQ& b) {
  if (a.cols != b.rows) fail(ErrorCode::InvalidInput, "mat_mul: size mismatch");
  MatQ r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (sgn(a.at(i, k)) == 0) continue;
      for (int j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

Rat det(MatQ m) {
  if (m.rows != m.cols) fail(ErrorCode::InvalidInput, "det: not square");
  int n = m.rows;
  Rat d(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m.at(r, col)) != 0) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = col; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    Rat inv_p = 1 / m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (sgn(m.at(r, col)) == 0) continue;
      Rat f = m.at(r, col) * inv_p;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return d;
}

std::optional<VecQ> solve(MatQ m, VecQ rhs) {
  if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows)
    fail(ErrorCode::InvalidInput, "solve: size mismatch");
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m.at(r, col)) != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int j = col; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    Rat inv_p = 1 / m.at(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m.at(r, col)) == 0) continue;
      Rat f = m.at(r, col) * inv_p;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  VecQ x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m.at(i, i);
  return x;
}

std::optional<MatQ> inverse(const MatQ& m) {
  if (m.rows != m.cols) fail(ErrorCode::InvalidInput, "inverse: not square");
  int n = m.rows;
  MatQ aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(aug.at(r, col)) != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(col, j));
    Rat inv_p = 1 / aug.at(col, col);
    for (int j = 0; j < 2 * n; ++j) aug.at(col, j) *= inv_p;
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(aug.at(r, col)) == 0) continue;
      Rat f = aug.at(r, col);
      for (int j = 0; j < 2 * n; ++j) aug.at(r, j) -= f * aug.at(col, j);
    }
  }
  MatQ inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

int rank(MatQ m) {
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (sgn(m.at(i, col)) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rat inv_p = 1 / m.at(r, col);
    for (int i = r + 1; i < m.rows; ++i) {
      if (sgn(m.at(i, col)) == 0) continue;
      Rat f = m.at(i, col) * inv_p;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

int affine_dim(const std::vector<VecQ>& pts) {
  if (pts.empty()) return -1;
  int n = static_cast<int>(pts.size());
  int d = static_cast<int>(pts[0].size());
  if (n == 1) return 0;
  MatQ m(n - 1, d);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < d; ++j) m.at(i - 1, j) = pts[i][j] - pts[0][j];
  return rank(std::move(m));
}

bool is_positive_definite(const MatQ& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  for (int k = 1; k <= m.rows; ++k) {
    MatQ lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = m.at(i, j);
    if (sgn(det(std::move(lead))) <= 0) return false;
  }
  return true;
}

}  // namespace quantsel
