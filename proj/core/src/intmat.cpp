#include "cleave/intmat.hpp"

#include <cassert>
#include <sstream>

#include "cleave/error.hpp"

namespace cleave {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMat::is_zero() const {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

std::string IntMat::to_string() const {
  std::ostringstream os;
  os << rows << "x" << cols << "[";
  for (int i = 0; i < rows; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols; ++j) {
      if (j) os << ",";
      os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

IntMat mul(const IntMat& a, const IntMat& b) {
  assert(a.cols == b.rows);
  IntMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) {
        const Int& bkj = b.at(k, j);
        if (bkj != 0) c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

IntMat hcat(const IntMat& a, const IntMat& b) {
  assert(a.rows == b.rows);
  IntMat c(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
  }
  return c;
}

IntMat negated(const IntMat& a) {
  IntMat c = a;
  for (Int& x : c.a) x = -x;
  return c;
}

IntMat transposed(const IntMat& a) {
  IntMat c(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) c.at(j, i) = a.at(i, j);
  return c;
}

std::vector<Int> apply(const IntMat& m, const std::vector<Int>& x) {
  assert(static_cast<int>(x.size()) == m.cols);
  std::vector<Int> y(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0 && x[j] != 0) y[i] += m.at(i, j) * x[j];
  return y;
}

IntMat submatrix_rows(const IntMat& m, int row_begin, int row_end) {
  IntMat c(row_end - row_begin, m.cols);
  for (int i = row_begin; i < row_end; ++i)
    for (int j = 0; j < m.cols; ++j) c.at(i - row_begin, j) = m.at(i, j);
  return c;
}

IntMat submatrix_cols(const IntMat& m, int col_begin, int col_end) {
  IntMat c(m.rows, col_end - col_begin);
  for (int i = 0; i < m.rows; ++i)
    for (int j = col_begin; j < col_end; ++j) c.at(i, j - col_begin) = m.at(i, j);
  return c;
}

namespace {

// Elementary operations applied simultaneously to the work matrix and the
// transform accumulators. Row ops touch u and (inversely, on columns) uinv;
// column ops touch v. This keeps u*m0*v == m and u*uinv == id at all times.
struct SnfWork {
  IntMat m, u, v, uinv;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  void negate_row(int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
  void add_row(int i, int j, const Int& q) { // row i += q * row j
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(i, c) += q * m.at(j, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) += q * u.at(j, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, j) -= q * uinv.at(r, i);
  }
  void add_col(int i, int j, const Int& q) { // col i += q * col j
    if (q == 0) return;
    for (int r = 0; r < m.rows; ++r) m.at(r, i) += q * m.at(r, j);
    for (int r = 0; r < v.rows; ++r) v.at(r, i) += q * v.at(r, j);
  }
};

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

// Diagonalize (ignoring the divisibility chain), starting at block t0.
// Each stage pins the smallest nonzero entry of the trailing block at (t, t)
// and clears its row and column, re-selecting the pivot after every nonzero
// remainder so quotients stay small. The stage only ends once the pivot also
// divides the interior of the block: without that, a pivot stuck above the
// block gcd feeds long remainder chains whose row operations inflate the
// other entries multiplicatively, and dense inputs blow up.
void diagonalize(SnfWork& w, int t0) {
  const int n = std::min(w.m.rows, w.m.cols);
  for (int t = t0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < w.m.rows; ++i)
        for (int j = t; j < w.m.cols; ++j) {
          const Int& x = w.m.at(i, j);
          if (x == 0) continue;
          Int ax = int_abs(x);
          if (pi < 0 || ax < best) {
            pi = i;
            pj = j;
            best = ax;
          }
        }
      if (pi < 0) return; // remaining block is zero
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (int i = t + 1; i < w.m.rows; ++i) {
        if (w.m.at(i, t) == 0) continue;
        Int q = w.m.at(i, t) / w.m.at(t, t);
        w.add_row(i, t, -q);
        if (w.m.at(i, t) != 0) dirty = true; // remainder beats the pivot
      }
      for (int j = t + 1; j < w.m.cols; ++j) {
        if (w.m.at(t, j) == 0) continue;
        Int q = w.m.at(t, j) / w.m.at(t, t);
        w.add_col(j, t, -q);
        if (w.m.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      const Int& d = w.m.at(t, t);
      if (d != 1 && d != -1) {
        for (int i = t + 1; i < w.m.rows && !dirty; ++i)
          for (int j = t + 1; j < w.m.cols; ++j)
            if (w.m.at(i, j) % d != 0) {
              w.add_row(t, i, 1); // fold the offending row in; re-clear
              dirty = true;
              break;
            }
        if (dirty) continue;
      }
      break;
    }
    if (w.m.at(t, t) < 0) w.negate_row(t);
  }
}

} // namespace

// With the matrix diagonal outside rows/cols {t, j}, replace the pair
// (d_t, d_j) by (gcd, lcm) via unimodular ops confined to those rows/cols.
static void fix_pair(SnfWork& w, int t, int j) {
  w.add_col(t, j, Int(1)); // puts d_j at (j, t)
  while (w.m.at(j, t) != 0) {
    Int q = w.m.at(j, t) / w.m.at(t, t);
    w.add_row(j, t, -q);
    if (w.m.at(j, t) != 0) w.swap_rows(t, j);
  }
  if (w.m.at(t, t) < 0) w.negate_row(t);
  if (w.m.at(t, j) != 0) {
    Int q = w.m.at(t, j) / w.m.at(t, t); // g divides every entry of the block
    w.add_col(j, t, -q);
  }
  if (w.m.at(j, j) < 0) w.negate_row(j);
}

SmithForm smith_normal_form(const IntMat& input) {
  SnfWork w{input, IntMat::identity(input.rows), IntMat::identity(input.cols),
            IntMat::identity(input.rows)};
  const int n = std::min(input.rows, input.cols);

  diagonalize(w, 0);

  // Repair the divisibility chain. After the inner loop for a given t, d_t
  // divides every later entry; later fixes only shrink d_t to a divisor, so
  // one sweep suffices. Zero entries sit at the end of the diagonal.
  for (int t = 0; t < n && w.m.at(t, t) != 0; ++t)
    for (int j = t + 1; j < n && w.m.at(j, j) != 0; ++j)
      if (w.m.at(j, j) % w.m.at(t, t) != 0) fix_pair(w, t, j);

  SmithForm f;
  f.s = w.m;
  f.u = w.u;
  f.v = w.v;
  f.uinv = w.uinv;
  for (int t = 0; t < n; ++t) {
    if (f.s.at(t, t) != 0) {
      ++f.rank;
      f.diag.push_back(f.s.at(t, t));
    }
  }
  return f;
}

IntMat kernel_basis(const SmithForm& f) {
  // m v e_j = u^{-1} s e_j = 0 exactly for columns j >= rank, so those
  // columns of v form a lattice basis of ker(m).
  int total = f.v.cols;
  IntMat k(f.v.rows, total - f.rank);
  for (int j = f.rank; j < total; ++j)
    for (int i = 0; i < f.v.rows; ++i) k.at(i, j - f.rank) = f.v.at(i, j);
  return k;
}

IntMat kernel_basis(const IntMat& m) { return kernel_basis(smith_normal_form(m)); }

std::optional<std::vector<Int>> solve(const SmithForm& f, const std::vector<Int>& b) {
  // m x = b  <=>  s y = u b with x = v y
  std::vector<Int> ub = cleave::apply(f.u, b);
  int n = std::min(f.s.rows, f.s.cols);
  std::vector<Int> y(f.s.cols);
  for (int i = 0; i < f.s.rows; ++i) {
    if (i < n && f.s.at(i, i) != 0) {
      if (ub[i] % f.s.at(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / f.s.at(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return cleave::apply(f.v, y);
}

IntMat solve_columns(const SmithForm& f, const IntMat& b) {
  IntMat x(f.v.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    std::vector<Int> col(b.rows);
    for (int i = 0; i < b.rows; ++i) col[i] = b.at(i, j);
    auto sol = solve(f, col);
    require(sol.has_value(), "Unsolvable",
            "no integer solution for column " + std::to_string(j));
    for (int i = 0; i < x.rows; ++i) x.at(i, j) = (*sol)[i];
  }
  return x;
}

} // namespace cleave
