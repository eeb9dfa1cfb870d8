#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace cleave {

using Int = boost::multiprecision::cpp_int;

// Dense exact integer matrix, row-major. Matrices act on column vectors:
// a map Z^c -> Z^r is an r x c matrix whose columns are generator images.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n);

  bool operator==(const IntMat&) const = default;
  bool is_zero() const;
  std::string to_string() const;
};

IntMat mul(const IntMat& a, const IntMat& b);
IntMat hcat(const IntMat& a, const IntMat& b); // [a | b], equal row counts
IntMat negated(const IntMat& a);
IntMat transposed(const IntMat& a);
std::vector<Int> apply(const IntMat& m, const std::vector<Int>& x);
IntMat submatrix_rows(const IntMat& m, int row_begin, int row_end);
IntMat submatrix_cols(const IntMat& m, int col_begin, int col_end);

// Smith normal form u*m*v = s with unimodular u, v; s diagonal with
// nonnegative entries d_1 | d_2 | ... ; uinv is the exact inverse of u.
struct SmithForm {
  IntMat s, u, v, uinv;
  int rank = 0;              // count of nonzero diagonal entries
  std::vector<Int> diag;     // the nonzero diagonal entries, in order
};

SmithForm smith_normal_form(const IntMat& m);

// Columns form a basis of ker(m) (as a lattice: every integer solution of
// m x = 0 is an integer combination of the columns).
IntMat kernel_basis(const SmithForm& f);
IntMat kernel_basis(const IntMat& m);

// Exact solution of m x = b through a precomputed Smith form; nullopt when
// no integer solution exists.
std::optional<std::vector<Int>> solve(const SmithForm& f, const std::vector<Int>& b);

// Solve m x = b column-by-column; refuses (kind "Unsolvable") if any column
// has no integer solution.
IntMat solve_columns(const SmithForm& f, const IntMat& b);

} // namespace cleave
