#pragma once

#include "cleave/spectral.hpp"

namespace cleave {

struct QuillenArrowVerdict {
  int phi = -1;
  bool ok = true;
  int fail_degree = -1; // first degree where the induced map is not an iso
};

// Per-arrow verdicts; ok when every base-change functor induces
// isomorphisms H_m(fiber) -> H_m(fiber) for all m <= max_degree.
struct QuillenReport {
  Coeff coeff;
  int max_degree = 0;
  bool ok = true;
  std::vector<QuillenArrowVerdict> arrows; // one per base arrow
};

QuillenReport is_quillen_fibration_homology(const Cleavage& c, int max_degree,
                                            const Coeff& coeff);

}  // namespace cleave
