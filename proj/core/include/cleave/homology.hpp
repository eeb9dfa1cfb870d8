#pragma once

#include <array>

#include "cleave/abelian.hpp"
#include "cleave/field.hpp"
#include "cleave/nerves.hpp"

namespace cleave {

// Normalized chains of a truncated simplicial set: the degree-n basis
// indexes the nondegenerate n-cells, the differential is the alternating
// face sum with faces landing on degenerate cells dropped.  Degrees up to
// cap-1 agree with the untruncated space.
struct NormalizedChains {
  SSPtr space;
  PresentedComplex cx;                 // free: no relations
  std::vector<std::vector<int>> cells; // [n] -> nondegenerate cell ids
  std::vector<std::vector<int>> row;   // [n][cell] -> basis row, -1 if degenerate
};
NormalizedChains normalized_chain_complex(SSPtr x);

// H_n as a canonical group; trivial outside 0..top.
AbelianGroup homology(const PresentedComplex& cx, int n);
std::vector<AbelianGroup> homology_all(const PresentedComplex& cx);
// dim_k H_n(cx ⊗ k) of a free complex over a field.
long long homology_over_field(const PresentedComplex& cx, int n, const Coeff& k);

// The degree-n matrix of f on normalized chains (degenerate images drop).
IntMat chain_map_matrix(const SMap& f, const NormalizedChains& src,
                        const NormalizedChains& dst, int n);

struct InducedMap {
  int degree = 0;
  HomologyData src, dst;
  IntMat matrix; // on cycle coordinates
  bool iso = false;
};
InducedMap induced_map_on_homology(const SMap& f, const NormalizedChains& src,
                                   const NormalizedChains& dst, int n);
// f_*: H_k iso for all k <= max_degree.  Refuses with kind
// "DegreeAboveGuarantee" when max_degree exceeds what the stored levels
// determine.
bool map_is_homology_iso(const SMap& f, int max_degree);

// A functor from a finite category to finitely presented abelian groups:
// per object a presentation, per arrow a matrix on generators.
struct CatModule {
  std::string name;
  CatPtr base;
  std::vector<int> gens;
  std::vector<IntMat> rels; // [object]: gens x k
  std::vector<IntMat> act;  // [arrow]: gens[dst] x gens[src]

  AbelianGroup group_at(int o) const { return group_from_relations(gens[o], rels[o]); }
};
// Shape; every arrow well-defined on the presented groups (via SNF
// solvability); identities and all composites respected.  Kind
// "FunctorialityFailure" for a functor-law violation, "ValidationError"
// otherwise.
void validate_module(const CatModule& a);
CatModule constant_module(CatPtr base); // constant Z

// C_n = ⊕_{nondegenerate n-chains c} A(c_0), boundary Σ (−1)^i (d_i)_*
// where (d_0)_* transports along A(c_0 → c_1) and the other faces keep the
// coefficient.  Presentations ride along blockwise.
PresentedComplex coefficient_complex(const CatModule& a, int cap);
// Guaranteed for n <= cap-1; refuses above with kind "DegreeAboveGuarantee".
AbelianGroup coefficient_homology(const CatModule& a, int cap, int n);

// H_m of the fibers as a module over the base, transported by the
// cleavage's base-change functors.
CatModule fiber_homology_module(const Cleavage& c, int m, int cap);

// First-quadrant bicomplex of free groups, degrees (m, n) <= cap with m
// vertical and n horizontal.
struct Bicomplex {
  int cap = 0;
  std::vector<std::vector<int>> rank;      // [m][n]
  std::vector<std::vector<IntMat>> dh;     // (m,n) -> (m,n-1), n >= 1
  std::vector<std::vector<IntMat>> dv;     // (m,n) -> (m-1,n), m >= 1
  std::vector<std::vector<std::vector<int>>> cells; // [m][n] -> ambient cell ids

  // dh² = 0, dv² = 0, dh∘dv = dv∘dh.  Kind "InvalidComplex".
  void validate() const;
};
// Basis: bisimplices not in the image of any horizontal or vertical
// degeneracy; faces landing outside the basis contribute 0.
Bicomplex bicomplex_from(BiPtr x);
Bicomplex fibration_bicomplex(const FibredNerve& nf);

// Total complex.  Degree-d blocks are ordered by n ascending; the
// differential is d^h + (−1)^n d^v (squares to zero against commuting
// dh, dv; checked by validate()).
struct TotalComplex {
  PresentedComplex cx;
  std::vector<std::vector<std::array<int, 3>>> blocks; // [d] -> {m, n, offset}
};
TotalComplex total_complex(const Bicomplex& bc);

// H_d(total) ≅ H_d(diagonal) for all d <= max_degree.
bool eilenberg_zilber_check(BiPtr x, int max_degree);

}  // namespace cleave
