#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cleave/simplicial.hpp"

namespace cleave {

// An (m,n)-grid in the total category of a fibration: a commuting
// (m+1)x(n+1) diagram of objects, verticals over identities, horizontal
// composites all cartesian.  Arrows are stored unit-step; row 0 projects
// to the base chain.
struct Grid {
  int m = 0, n = 0;
  std::vector<int> obj;   // (m+1)(n+1), row-major
  std::vector<int> vert;  // m(n+1): (i,j) -> (i+1,j)
  std::vector<int> horiz; // (m+1)n: (i,j) -> (i,j+1)

  int ob(int i, int j) const { return obj[i * (n + 1) + j]; }
  int ver(int i, int j) const { return vert[i * (n + 1) + j]; }
  int hor(int i, int j) const { return horiz[i * n + j]; }
};

Key encode_grid(const Grid& g);
Grid decode_grid(int m, int n, const Key& k);

// Composite along row i from column a to column b; identity when a == b.
int grid_row_composite(const FiniteCategory& e, const Grid& g, int i, int a, int b);
// Composite along column j from row a to row b.
int grid_col_composite(const FiniteCategory& e, const Grid& g, int j, int a, int b);

// Reindex along monotone maps rho: [m'] -> [m] and gamma: [n'] -> [n],
// composing the spans between consecutive images.  Faces and degeneracies
// of the fibred nerve are instances.
Grid apply_monotone(const FiniteCategory& e, const Grid& g,
                    const std::vector<int>& rho, const std::vector<int>& gamma);

// First violated grid condition, if any.  Commutation is checked over every
// rectangle, cartesianness over every horizontal span.
std::optional<std::string> check_grid(const CertPtr& cert, const Grid& g);
// Additionally every horizontal composite, identities included, must be a
// chosen lift.
std::optional<std::string> check_cleaved_grid(const Cleavage& c, const Grid& g);

Key base_key(const Functor& p, const Grid& g);       // chain in the base nerve
Key mast_key(const Grid& g, const Subcategory& fib); // chain in the fiber nerve over b_0

struct FibredNerve {
  CertPtr cert;
  int cap = 0;
  SSPtr base_nerve;
  std::vector<Subcategory> fiber; // per base object
  std::vector<SSPtr> fiber_nerve;
  BiPtr bis; // cells are encoded grids
};
FibredNerve fibred_nerve(const CertPtr& cert, int cap);

struct CleavedNerve {
  Cleavage cleavage;
  int cap = 0;
  SSPtr base_nerve;
  std::vector<Subcategory> fiber;
  std::vector<SSPtr> fiber_nerve;
  BiPtr bis;
};
// Needs a normal cleavage on a fibration.  A grid is kept when all its
// horizontal composites are chosen lifts; for a closed cleavage the unit
// steps already decide this.
CleavedNerve cleaved_nerve(const Cleavage& c, int cap);

BiMap cleaved_inclusion(const CleavedNerve& cn, const FibredNerve& nf);

// The vertical complex over one fixed base chain.  Cells keep their parent
// keys; to_parent recovers the ambient index at (m, n).
struct BaseSlice {
  int n = 0;
  int chain = -1;
  SSPtr sset;
  std::vector<std::vector<int>> to_parent;
};
BaseSlice base_slice(const FibredNerve& nf, int n, int chain);
BaseSlice base_slice(const CleavedNerve& cn, int n, int chain);

// Mast extraction, slice -> fiber nerve over the chain's first object.
SMap mu(const FibredNerve& nf, const BaseSlice& sl);
SMap mu(const CleavedNerve& cn, const BaseSlice& sl);
// Section of mu built from the cleavage's lifts; always lands in the
// fibred slice, and in the cleaved one when the cleavage is closed.
SMap nu(const Cleavage& c, const FibredNerve& nf, const BaseSlice& sl);

// Diagonal comparison: an (n,n)-grid maps to its diagonal chain
// e_00 -> e_11 -> ... -> e_nn.
SMap k_map(BiPtr grids, SSPtr diag, SSPtr total_nerve, CatPtr e);
// Codiagonal comparison, reading each tuple through its staircase; on a
// closed cleaved nerve this is a levelwise bijection.
SMap kbar_map(BiPtr grids, SSPtr codiag, SSPtr total_nerve, CatPtr e);

// The part of an (n,n)-grid on positions (i,j) with i <= j.  Same layout
// as Grid with m = n; slots outside the region hold -1.
struct Staircase {
  int n = 0;
  std::vector<int> obj, vert, horiz;

  int ob(int i, int j) const { return obj[i * (n + 1) + j]; }
  int ver(int i, int j) const { return vert[i * (n + 1) + j]; }
  int hor(int i, int j) const { return horiz[i * n + j]; }
};
// Overlay the n+1 component grids of a codiagonal tuple (component r covers
// rows 0..r, columns r..n).  Refuses when overlaps disagree; on codiagonal
// cells they never do.  Inverse of staircase_to_tuple.
Staircase tuple_to_staircase(BiPtr grids, const Key& tuple, int n);
Key staircase_to_tuple(BiPtr grids, const Staircase& t);

// Apply u to every grid entry; refuses when some image is not a cell of
// the target nerve.
BiMap fibred_nerve_map(const Functor& u, const FibredNerve& src,
                       const FibredNerve& dst);
BiMap cleaved_nerve_map(const Functor& u, const CleavedNerve& src,
                        const CleavedNerve& dst);
SMap diagonal_map(const BiMap& f, SSPtr src_diag, SSPtr dst_diag);

// Cells of the cleaved nerve of a Grothendieck construction match the
// homotopy colimit of the nerves: a grid goes to (base chain, mast read in
// the value category).  Checked to be a levelwise bijection commuting with
// all four operator families.
struct HcComparison {
  Grothendieck gro;
  CleavedNerve cn;
  DiagramOfSSets nerves;
  Hc h;
  BiMap iso;
};
HcComparison cleaved_to_hc(const DiagramOfCategories& z, int cap);

// For a group action the diagonal of the cleaved nerve matches the twisted
// cartesian product: a diagonal grid goes to (mast, base).
struct TcpComparison {
  Grothendieck gro;
  CleavedNerve cn;
  SSPtr diag;
  SimplicialGroupAction act;
  TwistingFunction tw;
  SSPtr tcp;
  SMap iso;
};
TcpComparison cleaved_to_tcp(const CatGroupAction& a, int cap);

} // namespace cleave
