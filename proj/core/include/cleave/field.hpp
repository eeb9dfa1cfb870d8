#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cleave/intmat.hpp"

namespace cleave {

using Rat = boost::multiprecision::cpp_rational;

// Coefficient choice for homology computations.
struct Coeff {
  enum Kind { Z, Q, Fp } kind = Z;
  long long p = 0;

  bool is_field() const { return kind != Z; }
  std::string to_string() const; // "Z", "Q", "F2", ...
  bool operator==(const Coeff&) const = default;
};
// Accepts "Z", "Q", or "F<p>" with p prime.  Refuses with kind
// "ValidationError" otherwise.
Coeff parse_coeff(const std::string& s);

// Exact scalar arithmetic over Q (p == 0) or F_p.  F_p elements are kept
// reduced to integer representatives 0..p-1.
struct Field {
  long long p = 0;

  Rat norm(const Rat& x) const;
  Rat add(const Rat& a, const Rat& b) const { return norm(a + b); }
  Rat sub(const Rat& a, const Rat& b) const { return norm(a - b); }
  Rat mul(const Rat& a, const Rat& b) const { return norm(a * b); }
  Rat inv(const Rat& x) const;
  Rat from_int(const Int& n) const;
  bool is_zero(const Rat& x) const { return norm(x) == 0; }
};
// Refuses with kind "ValidationError" when k is not a field choice.
Field field_of(const Coeff& k);

struct FieldMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  FieldMat() = default;
  FieldMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

FieldMat field_mat(const Field& k, const IntMat& m);
FieldMat field_identity(int n);
FieldMat mul(const Field& k, const FieldMat& x, const FieldMat& y);
FieldMat hcat(const FieldMat& x, const FieldMat& y);
FieldMat columns(const FieldMat& x, const std::vector<int>& idx);

// Gauss-Jordan reduction in place; returns the pivot columns.
std::vector<int> rref(const Field& k, FieldMat& m);
int rank(const Field& k, FieldMat m);
// Columns spanning {x : m x = 0}.
FieldMat nullspace(const Field& k, const FieldMat& m);
// Solve m x = b columnwise; nullopt when any column has no solution.
std::optional<FieldMat> solve_columns(const Field& k, const FieldMat& m,
                                      const FieldMat& b);
// Indices j (ascending) such that the chosen columns of cand extend
// span(base) to span(base | cand).
std::vector<int> extend_basis(const Field& k, const FieldMat& base,
                              const FieldMat& cand);

}  // namespace cleave
