#pragma once

#include <string>
#include <vector>

#include "cleave/intmat.hpp"

namespace cleave {

// Canonical form of a finitely generated abelian group:
// Z^free_rank + Z/t_1 + ... with t_1 | t_2 | ..., each t_i > 1.
struct AbelianGroup {
  long long free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const AbelianGroup&) const = default;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const; // "0", "Z", "Z^2 + Z/2 + Z/6", ...
};

// The group on `gens` generators with the columns of `rels` as relations.
AbelianGroup group_from_relations(int gens, const IntMat& rels);

// A chain complex of finitely presented abelian groups: degree n has
// gens[n] generators, relation columns rels[n] (quotient by their span),
// and a differential diff[n]: degree n -> degree n-1 given on generators
// (rows index degree-(n-1) generators). Degrees 0..top(); diff[0] is unused
// and kept empty.
struct PresentedComplex {
  std::vector<int> gens;
  std::vector<IntMat> rels;
  std::vector<IntMat> diff;

  int top() const { return static_cast<int>(gens.size()) - 1; }
  // ∂∘∂ lands in relations; ∂ maps relations into relations. Refuses with
  // kind "InvalidComplex" otherwise.
  void validate() const;
};

// Homology at a degree, with enough structure to transport maps:
// cycle_reps columns generate the cycle subgroup {x : d x ∈ span rels};
// relations present the homology group on those generators.
struct HomologyData {
  int degree = 0;
  IntMat cycle_reps;  // gens[n] x z
  IntMat relations;   // z x k
  AbelianGroup group; // canonical form
};

HomologyData homology_at(const PresentedComplex& cx, int n);

// The matrix (dst cycle coordinates x src cycle coordinates) induced on
// homology by a chain map given in degree n on generators. chain_map must
// genuinely be a chain map (images of cycles are cycles); refuses with
// kind "NotChainMap" when an image fails to be expressible.
IntMat induced_on_homology(const HomologyData& src, const HomologyData& dst,
                           const IntMat& chain_map);

// Does the presented map (matrix on cycle coordinates) define an
// isomorphism between the presented groups?
bool presented_map_is_isomorphism(const IntMat& map, const HomologyData& src,
                                  const HomologyData& dst);

// Do two presented maps agree as maps src -> dst (difference lands in dst
// relations)?
bool presented_maps_equal(const IntMat& f, const IntMat& g, const HomologyData& dst);

// Does `map` send every relation of src into the relation span of dst
// (well-definedness on the presented group)?
bool presented_map_well_defined(const IntMat& map, const HomologyData& src,
                                const HomologyData& dst);

} // namespace cleave
