#include "ssg/intmatrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "ssg/sft.hpp"

namespace ssg {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, int(cols.size()));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
  IntMatrix m(int(d.size()), int(d.size()));
  for (int i = 0; i < m.rows; ++i) m(i, i) = d[i];
  return m;
}

IntVec IntMatrix::column(int j) const {
  IntVec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVec IntMatrix::row(int i) const {
  return IntVec(a.begin() + std::size_t(i) * cols, a.begin() + std::size_t(i + 1) * cols);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols != o.rows) throw std::logic_error("matrix shape mismatch");
  IntMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
    }
  return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (int(v.size()) != cols) throw std::logic_error("matrix shape mismatch");
  IntVec r(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  IntMatrix r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  IntMatrix r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

bool IntMatrix::is_zero() const {
  for (auto& x : a)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::pow(int k) const {
  IntMatrix r = identity(rows), b = *this;
  for (; k > 0; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
  IntMatrix r(rows, cols + o.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (int j = 0; j < o.cols; ++j) r(i, cols + j) = o(i, j);
  }
  return r;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& r, const std::vector<int>& c) const {
  IntMatrix m(int(r.size()), int(c.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = (*this)(r[i], c[j]);
  return m;
}

std::string IntMatrix::format() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Int det(IntMatrix m) {
  if (m.rows != m.cols) throw std::logic_error("det of a non-square matrix");
  // fraction-free Bareiss elimination
  int n = m.rows;
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      int p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

struct Reducer {
  IntMatrix A, U, Uinv, V;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
    for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
  }
  // row_i += q * row_j
  void add_row(int i, int j, const Int& q) {
    for (int c = 0; c < A.cols; ++c)
      if (A(j, c) != 0) A(i, c) += q * A(j, c);
    for (int c = 0; c < U.cols; ++c)
      if (U(j, c) != 0) U(i, c) += q * U(j, c);
    for (int r = 0; r < Uinv.rows; ++r)
      if (Uinv(r, i) != 0) Uinv(r, j) -= q * Uinv(r, i);
  }
  // col_i += q * col_j
  void add_col(int i, int j, const Int& q) {
    for (int r = 0; r < A.rows; ++r)
      if (A(r, j) != 0) A(r, i) += q * A(r, j);
    for (int r = 0; r < V.rows; ++r)
      if (V(r, j) != 0) V(r, i) += q * V(r, j);
  }
  void negate_row(int i) {
    for (int c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
    for (int c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
    for (int r = 0; r < Uinv.rows; ++r) Uinv(r, i) = -Uinv(r, i);
  }
};

}  // namespace

Smith smith(const IntMatrix& A0) {
  Reducer R{A0, IntMatrix::identity(A0.rows), IntMatrix::identity(A0.rows), IntMatrix::identity(A0.cols)};
  IntMatrix& A = R.A;
  int m = A.rows, n = A.cols;
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value, first in row-major order
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (A(i, j) != 0 && (pi < 0 || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
      if (pi < 0) goto done;
      R.swap_rows(t, pi);
      R.swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        R.add_row(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        R.add_col(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      R.add_row(t, bad, 1);
    }
    if (A(t, t) < 0) R.negate_row(t);
  }
done:
  Smith s;
  s.rank = t;
  for (int i = 0; i < t; ++i) s.diag.push_back(A(i, i));
  s.D = std::move(R.A);
  s.U = std::move(R.U);
  s.Uinv = std::move(R.Uinv);
  s.V = std::move(R.V);
  return s;
}

IntMatrix kernel(const IntMatrix& A) {
  Smith s = smith(A);
  std::vector<int> rows(A.cols), cols;
  for (int i = 0; i < A.cols; ++i) rows[i] = i;
  for (int j = s.rank; j < A.cols; ++j) cols.push_back(j);
  return s.V.submatrix(rows, cols);
}

IntMatrix lattice_basis(const IntMatrix& A) {
  Smith s = smith(A);
  IntMatrix B(A.rows, s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < A.rows; ++i) B(i, j) = s.Uinv(i, j) * s.diag[j];
  return B;
}

bool solve(const IntMatrix& B, const IntVec& x, IntVec& c) {
  Smith s = smith(B);
  IntVec y = s.U * x;
  for (int i = s.rank; i < B.rows; ++i)
    if (y[i] != 0) return false;
  IntVec z(B.cols);
  for (int i = 0; i < s.rank; ++i) {
    if (y[i] % s.diag[i] != 0) return false;
    z[i] = y[i] / s.diag[i];
  }
  c = s.V * z;
  return true;
}

IntMatrix solve_all(const IntMatrix& B, const IntMatrix& X) {
  Smith s = smith(B);
  IntMatrix Y = s.U * X;
  IntMatrix Z(B.cols, X.cols);
  for (int j = 0; j < X.cols; ++j) {
    for (int i = s.rank; i < B.rows; ++i)
      if (Y(i, j) != 0) throw Error("vector outside the lattice");
    for (int i = 0; i < s.rank; ++i) {
      if (Y(i, j) % s.diag[i] != 0) throw Error("vector outside the lattice");
      Z(i, j) = Y(i, j) / s.diag[i];
    }
  }
  return s.V * Z;
}

bool lattice_contains(const IntMatrix& B, const IntMatrix& X) {
  Smith s = smith(B);
  IntMatrix Y = s.U * X;
  for (int j = 0; j < X.cols; ++j) {
    for (int i = s.rank; i < B.rows; ++i)
      if (Y(i, j) != 0) return false;
    for (int i = 0; i < s.rank; ++i)
      if (Y(i, j) % s.diag[i] != 0) return false;
  }
  return true;
}

}  // namespace ssg
