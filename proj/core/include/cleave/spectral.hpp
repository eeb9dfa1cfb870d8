#pragma once

#include "cleave/homology.hpp"

namespace cleave {

struct SpectralPage {
  int r = 1;
  std::vector<std::vector<long long>> dim; // [m][n], m vertical, n horizontal
  std::vector<std::vector<int>> dr_rank;   // rank of d_r out of (m,n)
};

struct SpectralSequence {
  Coeff coeff;
  int cap = 0;
  std::vector<SpectralPage> pages;   // r = 1 .. r_max
  int stable_at = -1;                // first page from which nothing moves
  std::vector<long long> einf_total; // Σ_{m+n=d} dim of the last page
  std::vector<long long> tot_dim;    // dim H_d(total ⊗ k)
};

// Spectral sequence of the horizontal (base-degree) filtration of the
// total complex, over a field.  d_r: (m,n) -> (m+r-1, n-r).  Internal
// invariants checked en route: d_r ∘ d_r = 0 and each page equals the
// homology of the previous one.  Refuses with kind "NotStabilized" when
// the pages still move at r_max.
SpectralSequence spectral_sequence(const Bicomplex& bc, const Coeff& k, int r_max);

// Horizontal complex of vertical-homology presentations along row m; its
// homology at n is the integral E² entry H_n(B, H_m(F)).
PresentedComplex e2_row_complex(const Bicomplex& bc, int m);
AbelianGroup integral_e2(const Bicomplex& bc, int m, int n);

// Fiber homologies over a field as a module on the base, and the homology
// of the base with those coefficients — the independently computed side of
// the E² comparison.
struct FieldModule {
  CatPtr base;
  Field k;
  std::vector<int> dim;      // per object
  std::vector<FieldMat> act; // per arrow
};
FieldModule field_fiber_module(const Cleavage& c, int m, int cap, const Coeff& k);
std::vector<long long> field_module_homology(const FieldModule& a, int cap);

}  // namespace cleave
