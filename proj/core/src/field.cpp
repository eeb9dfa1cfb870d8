#include "cleave/field.hpp"

#include <cassert>
#include <utility>

#include "cleave/error.hpp"

namespace cleave {

std::string Coeff::to_string() const {
  switch (kind) {
    case Z: return "Z";
    case Q: return "Q";
    default: return "F" + std::to_string(p);
  }
}

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

} // namespace

Coeff parse_coeff(const std::string& s) {
  if (s == "Z") return {Coeff::Z, 0};
  if (s == "Q") return {Coeff::Q, 0};
  if (s.size() >= 2 && s[0] == 'F') {
    long long p = 0;
    for (size_t i = 1; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9' || p > 1'000'000)
        fail("ValidationError", "bad coefficient '" + s + "'");
      p = p * 10 + (s[i] - '0');
    }
    require(is_prime(p), "ValidationError",
            "F" + std::to_string(p) + " is not a field: " + std::to_string(p) +
                " is not prime");
    return {Coeff::Fp, p};
  }
  fail("ValidationError",
       "bad coefficient '" + s + "' (expected Z, Q, or F<prime>)");
}

Rat Field::norm(const Rat& x) const {
  if (p == 0) return x;
  assert(denominator(x) == 1);
  Int r = numerator(x) % p;
  if (r < 0) r += p;
  return Rat(r);
}

Rat Field::inv(const Rat& x) const {
  if (p == 0) {
    require(x != 0, "ValidationError", "division by zero");
    return 1 / x;
  }
  Rat r = norm(x);
  require(r != 0, "ValidationError", "division by zero in F" + std::to_string(p));
  return Rat(boost::multiprecision::powm(numerator(r), Int(p - 2), Int(p)));
}

Rat Field::from_int(const Int& n) const { return norm(Rat(n)); }

Field field_of(const Coeff& k) {
  require(k.is_field(), "ValidationError",
          "field coefficients required (got " + k.to_string() + ")");
  return Field{k.kind == Coeff::Fp ? k.p : 0};
}

FieldMat field_mat(const Field& k, const IntMat& m) {
  FieldMat r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(i, j) = k.from_int(m.at(i, j));
  return r;
}

FieldMat field_identity(int n) {
  FieldMat r(n, n);
  for (int i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

FieldMat mul(const Field& k, const FieldMat& x, const FieldMat& y) {
  assert(x.cols == y.rows);
  FieldMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int l = 0; l < x.cols; ++l) {
      if (k.is_zero(x.at(i, l))) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = k.add(r.at(i, j), k.mul(x.at(i, l), y.at(l, j)));
    }
  return r;
}

FieldMat hcat(const FieldMat& x, const FieldMat& y) {
  assert(x.rows == y.rows || x.cols == 0 || y.cols == 0);
  int rows = x.cols ? x.rows : y.rows;
  FieldMat r(rows, x.cols + y.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
  }
  return r;
}

FieldMat columns(const FieldMat& x, const std::vector<int>& idx) {
  FieldMat r(x.rows, static_cast<int>(idx.size()));
  for (int j = 0; j < r.cols; ++j)
    for (int i = 0; i < x.rows; ++i) r.at(i, j) = x.at(i, idx[j]);
  return r;
}

std::vector<int> rref(const Field& k, FieldMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!k.is_zero(m.at(i, col))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat s = k.inv(m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = k.mul(m.at(row, j), s);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || k.is_zero(m.at(i, col))) continue;
      Rat f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const Field& k, FieldMat m) {
  return static_cast<int>(rref(k, m).size());
}

FieldMat nullspace(const Field& k, const FieldMat& m) {
  FieldMat r = m;
  std::vector<int> pivots = rref(k, r);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  FieldMat out(m.cols, m.cols - static_cast<int>(pivots.size()));
  int col = 0;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    out.at(free, col) = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      out.at(pivots[i], col) = k.sub(Rat(0), r.at(static_cast<int>(i), free));
    ++col;
  }
  return out;
}

std::optional<FieldMat> solve_columns(const Field& k, const FieldMat& m,
                                      const FieldMat& b) {
  assert(m.rows == b.rows);
  FieldMat aug = hcat(m, b);
  std::vector<int> pivots = rref(k, aug);
  for (int c : pivots)
    if (c >= m.cols) return std::nullopt;
  FieldMat x(m.cols, b.cols);
  for (size_t i = 0; i < pivots.size(); ++i)
    for (int j = 0; j < b.cols; ++j)
      x.at(pivots[i], j) = aug.at(static_cast<int>(i), m.cols + j);
  return x;
}

std::vector<int> extend_basis(const Field& k, const FieldMat& base,
                              const FieldMat& cand) {
  int dim = cand.rows;
  assert(base.cols == 0 || base.rows == dim);
  // reduced spanning rows of the running column span, by leading position
  std::vector<std::vector<Rat>> rows;
  auto reduce = [&](std::vector<Rat> v) -> std::vector<Rat> {
    for (const auto& r : rows) {
      int lead = 0;
      while (k.is_zero(r[lead])) ++lead;
      if (k.is_zero(v[lead])) continue;
      Rat f = v[lead];
      for (int j = lead; j < dim; ++j) v[j] = k.sub(v[j], k.mul(f, r[j]));
    }
    return v;
  };
  auto insert = [&](std::vector<Rat> v) -> bool {
    v = reduce(std::move(v));
    int lead = 0;
    while (lead < dim && k.is_zero(v[lead])) ++lead;
    if (lead == dim) return false;
    Rat s = k.inv(v[lead]);
    for (int j = lead; j < dim; ++j) v[j] = k.mul(v[j], s);
    rows.push_back(std::move(v));
    return true;
  };
  std::vector<Rat> v(dim);
  for (int j = 0; j < base.cols; ++j) {
    for (int i = 0; i < dim; ++i) v[i] = base.at(i, j);
    insert(v);
  }
  std::vector<int> chosen;
  for (int j = 0; j < cand.cols; ++j) {
    for (int i = 0; i < dim; ++i) v[i] = cand.at(i, j);
    if (insert(v)) chosen.push_back(j);
  }
  return chosen;
}

}  // namespace cleave
