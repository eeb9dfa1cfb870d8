#include "cleave/abelian.hpp"

#include <cassert>
#include <sstream>

#include "cleave/error.hpp"

namespace cleave {

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const Int& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbelianGroup group_from_relations(int gens, const IntMat& rels) {
  assert(rels.cols == 0 || rels.rows == gens);
  SmithForm f = smith_normal_form(rels);
  AbelianGroup g;
  g.free_rank = gens - f.rank;
  for (const Int& d : f.diag)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

namespace {

// Columns w such that a w ∈ span(b); they generate that preimage lattice.
IntMat preimage_of_span(const IntMat& a, const IntMat& b) {
  IntMat k = kernel_basis(hcat(a, negated(b)));
  return submatrix_rows(k, 0, a.cols);
}

bool columns_in_span(const IntMat& cols, const IntMat& span) {
  SmithForm f = smith_normal_form(span);
  for (int j = 0; j < cols.cols; ++j) {
    std::vector<Int> b(cols.rows);
    for (int i = 0; i < cols.rows; ++i) b[i] = cols.at(i, j);
    if (!solve(f, b)) return false;
  }
  return true;
}

} // namespace

void PresentedComplex::validate() const {
  int t = top();
  require(static_cast<int>(rels.size()) == t + 1 &&
              static_cast<int>(diff.size()) == t + 1,
          "InvalidComplex", "field lengths disagree");
  for (int n = 0; n <= t; ++n) {
    require(rels[n].cols == 0 || rels[n].rows == gens[n], "InvalidComplex",
            "relation rows mismatch at degree " + std::to_string(n));
    if (n >= 1) {
      require(diff[n].rows == gens[n - 1] && diff[n].cols == gens[n],
              "InvalidComplex", "differential shape at degree " + std::to_string(n));
      if (rels[n].cols > 0)
        require(columns_in_span(mul(diff[n], rels[n]), rels[n - 1]),
                "InvalidComplex",
                "differential does not respect relations at degree " +
                    std::to_string(n));
    }
    if (n >= 2)
      require(columns_in_span(mul(diff[n - 1], diff[n]), rels[n - 2]),
              "InvalidComplex",
              "d∘d nonzero modulo relations at degree " + std::to_string(n));
  }
}

HomologyData homology_at(const PresentedComplex& cx, int n) {
  assert(n >= 0 && n <= cx.top());
  const int g = cx.gens[n];

  HomologyData h;
  h.degree = n;

  if (n == 0) {
    h.cycle_reps = IntMat::identity(g);
  } else {
    // cycles: x with diff[n] x ∈ span rels[n-1]
    h.cycle_reps = preimage_of_span(cx.diff[n], cx.rels[n - 1]);
  }

  // boundaries and degree-n relations, to be quotiented out
  IntMat b = cx.rels[n];
  if (n < cx.top()) b = hcat(cx.diff[n + 1], b);

  // relations among cycle generators: w with cycle_reps w ∈ span(b)
  h.relations = preimage_of_span(h.cycle_reps, b);
  h.group = group_from_relations(h.cycle_reps.cols, h.relations);
  return h;
}

IntMat induced_on_homology(const HomologyData& src, const HomologyData& dst,
                           const IntMat& chain_map) {
  IntMat images = mul(chain_map, src.cycle_reps);
  SmithForm f = smith_normal_form(dst.cycle_reps);
  IntMat m(dst.cycle_reps.cols, src.cycle_reps.cols);
  for (int j = 0; j < images.cols; ++j) {
    std::vector<Int> b(images.rows);
    for (int i = 0; i < images.rows; ++i) b[i] = images.at(i, j);
    auto sol = solve(f, b);
    require(sol.has_value(), "NotChainMap",
            "image of a cycle is not a cycle (generator " + std::to_string(j) +
                " in degree " + std::to_string(src.degree) + ")");
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = (*sol)[i];
  }
  return m;
}

bool presented_map_well_defined(const IntMat& map, const HomologyData& src,
                                const HomologyData& dst) {
  if (src.relations.cols == 0) return true;
  return columns_in_span(mul(map, src.relations), dst.relations);
}

bool presented_maps_equal(const IntMat& f, const IntMat& g, const HomologyData& dst) {
  assert(f.rows == g.rows && f.cols == g.cols);
  IntMat d(f.rows, f.cols);
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j) d.at(i, j) = f.at(i, j) - g.at(i, j);
  if (d.is_zero()) return true;
  return columns_in_span(d, dst.relations);
}

bool presented_map_is_isomorphism(const IntMat& map, const HomologyData& src,
                                  const HomologyData& dst) {
  if (!presented_map_well_defined(map, src, dst)) return false;

  // surjective: map columns and dst relations together generate Z^{dst z}
  SmithForm f = smith_normal_form(hcat(map, dst.relations));
  if (f.rank != dst.cycle_reps.cols) return false;
  for (const Int& d : f.diag)
    if (d != 1) return false;

  // injective: anything mapping into dst relations is itself a src relation
  IntMat pre = preimage_of_span(map, dst.relations);
  return columns_in_span(pre, src.relations);
}

} // namespace cleave
