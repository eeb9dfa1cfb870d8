#include "cleave/quillen.hpp"

#include "cleave/error.hpp"
#include "cleave/nerves.hpp"

namespace cleave {

QuillenReport is_quillen_fibration_homology(const Cleavage& c, int max_degree,
                                            const Coeff& coeff) {
  require(max_degree >= 0, "ValidationError", "max_degree must be >= 0");
  int cap = max_degree + 1;
  const FiniteCategory& b = c.cert->base();

  QuillenReport rep;
  rep.coeff = coeff;
  rep.max_degree = max_degree;
  rep.arrows.resize(b.arrows());
  for (int f = 0; f < b.arrows(); ++f) rep.arrows[f].phi = f;

  if (coeff.is_field()) {
    Field k = field_of(coeff);
    for (int m = 0; m <= max_degree; ++m) {
      FieldModule a = field_fiber_module(c, m, cap, coeff);
      for (int f = 0; f < b.arrows(); ++f) {
        auto& v = rep.arrows[f];
        if (!v.ok) continue;
        int s = b.src[f], d = b.dst[f];
        if (a.dim[s] != a.dim[d] || rank(k, a.act[f]) != a.dim[d]) {
          v.ok = false;
          v.fail_degree = m;
        }
      }
    }
  } else {
    std::vector<NormalizedChains> chains(b.objects());
    std::vector<SSPtr> fn(b.objects());
    for (int o = 0; o < b.objects(); ++o) {
      fn[o] = nerve(fiber(c.cert->p, o).cat, cap);
      chains[o] = normalized_chain_complex(fn[o]);
    }
    std::vector<std::vector<HomologyData>> h(b.objects());
    for (int o = 0; o < b.objects(); ++o)
      for (int m = 0; m <= max_degree; ++m)
        h[o].push_back(homology_at(chains[o].cx, m));

    for (int f = 0; f < b.arrows(); ++f) {
      auto& v = rep.arrows[f];
      int s = b.src[f], d = b.dst[f];
      BaseChange bch = base_change(c, f);
      SMap nm = nerve_map(bch.functor, fn[s], fn[d]);
      for (int m = 0; m <= max_degree && v.ok; ++m) {
        IntMat cm = chain_map_matrix(nm, chains[s], chains[d], m);
        IntMat ind = induced_on_homology(h[s][m], h[d][m], cm);
        if (!presented_map_is_isomorphism(ind, h[s][m], h[d][m])) {
          v.ok = false;
          v.fail_degree = m;
        }
      }
    }
  }
  for (const auto& v : rep.arrows) rep.ok &= v.ok;
  return rep;
}

}  // namespace cleave
