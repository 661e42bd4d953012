#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ssg {

using Int = mpz_class;
using IntVec = std::vector<Int>;

// Dense matrix of arbitrary-precision integers.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}
  static IntMatrix identity(int n);
  static IntMatrix from_columns(int rows, const std::vector<IntVec>& cols);
  static IntMatrix diagonal(const IntVec& d);

  Int& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  IntVec column(int j) const;
  IntVec row(int i) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool is_zero() const;
  IntMatrix pow(int k) const;
  // [this | o]
  IntMatrix hcat(const IntMatrix& o) const;
  IntMatrix submatrix(const std::vector<int>& r, const std::vector<int>& c) const;
  std::string format() const;
};

Int det(IntMatrix m);

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... ; Uinv = U^-1.
struct Smith {
  IntMatrix U, Uinv, V, D;
  IntVec diag;  // the first `rank` diagonal entries, all positive
  int rank = 0;
};
Smith smith(const IntMatrix& A);

// Basis (as columns) of {x : A x = 0}.
IntMatrix kernel(const IntMatrix& A);
// Basis (as columns) of the lattice spanned by the columns of A.
IntMatrix lattice_basis(const IntMatrix& A);
// Integer c with B c = x, where B has independent columns; false if none.
bool solve(const IntMatrix& B, const IntVec& x, IntVec& c);
IntMatrix solve_all(const IntMatrix& B, const IntMatrix& X);  // throws if some column fails
// True iff every column of X lies in the lattice spanned by the columns of B.
bool lattice_contains(const IntMatrix& B, const IntMatrix& X);

}  // namespace ssg
