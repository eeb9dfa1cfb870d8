#include "cleave/homology.hpp"

#include <cassert>

#include "cleave/error.hpp"

namespace cleave {

NormalizedChains normalized_chain_complex(SSPtr x) {
  NormalizedChains nc;
  nc.space = x;
  int cap = x->cap;
  nc.cells.resize(cap + 1);
  nc.row.resize(cap + 1);
  nc.cx.gens.resize(cap + 1);
  nc.cx.rels.resize(cap + 1);
  nc.cx.diff.resize(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    nc.row[n].assign(x->size(n), -1);
    for (int c = 0; c < x->size(n); ++c) {
      if (x->degenerate[n][c]) continue;
      nc.row[n][c] = static_cast<int>(nc.cells[n].size());
      nc.cells[n].push_back(c);
    }
    nc.cx.gens[n] = static_cast<int>(nc.cells[n].size());
    nc.cx.rels[n] = IntMat(nc.cx.gens[n], 0);
  }
  for (int n = 1; n <= cap; ++n) {
    IntMat d(nc.cx.gens[n - 1], nc.cx.gens[n]);
    for (int j = 0; j < nc.cx.gens[n]; ++j) {
      int c = nc.cells[n][j];
      int sign = 1;
      for (int i = 0; i <= n; ++i, sign = -sign) {
        int t = nc.row[n - 1][x->d(n, i, c)];
        if (t >= 0) d.at(t, j) += sign;
      }
    }
    nc.cx.diff[n] = std::move(d);
  }
  nc.cx.validate();
  return nc;
}

AbelianGroup homology(const PresentedComplex& cx, int n) {
  if (n < 0 || n > cx.top()) return {};
  return homology_at(cx, n).group;
}

std::vector<AbelianGroup> homology_all(const PresentedComplex& cx) {
  std::vector<AbelianGroup> h(cx.top() + 1);
  for (int n = 0; n <= cx.top(); ++n) h[n] = homology_at(cx, n).group;
  return h;
}

long long homology_over_field(const PresentedComplex& cx, int n, const Coeff& k) {
  Field f = field_of(k);
  for (const IntMat& r : cx.rels)
    require(r.cols == 0, "ValidationError",
            "field homology is defined here for free complexes only");
  if (n < 0 || n > cx.top()) return 0;
  long long dim = cx.gens[n];
  if (n >= 1) dim -= rank(f, field_mat(f, cx.diff[n]));
  if (n + 1 <= cx.top()) dim -= rank(f, field_mat(f, cx.diff[n + 1]));
  return dim;
}

IntMat chain_map_matrix(const SMap& f, const NormalizedChains& src,
                        const NormalizedChains& dst, int n) {
  IntMat m(dst.cx.gens[n], src.cx.gens[n]);
  for (int j = 0; j < src.cx.gens[n]; ++j) {
    int t = dst.row[n][f.at(n, src.cells[n][j])];
    if (t >= 0) m.at(t, j) = 1;
  }
  return m;
}

InducedMap induced_map_on_homology(const SMap& f, const NormalizedChains& src,
                                   const NormalizedChains& dst, int n) {
  InducedMap out;
  out.degree = n;
  out.src = homology_at(src.cx, n);
  out.dst = homology_at(dst.cx, n);
  out.matrix = induced_on_homology(out.src, out.dst, chain_map_matrix(f, src, dst, n));
  out.iso = presented_map_is_isomorphism(out.matrix, out.src, out.dst);
  return out;
}

bool map_is_homology_iso(const SMap& f, int max_degree) {
  require(max_degree < f.src->cap && max_degree < f.dst->cap,
          "DegreeAboveGuarantee",
          "H_" + std::to_string(max_degree) + " is not determined at cap " +
              std::to_string(std::min(f.src->cap, f.dst->cap)));
  NormalizedChains src = normalized_chain_complex(f.src);
  NormalizedChains dst = normalized_chain_complex(f.dst);
  for (int n = 0; n <= max_degree; ++n)
    if (!induced_map_on_homology(f, src, dst, n).iso) return false;
  return true;
}

namespace {

// relation columns solvable in the target relation span
bool sends_relations(const IntMat& map, const IntMat& src_rels,
                     const IntMat& dst_rels) {
  if (src_rels.cols == 0) return true;
  SmithForm s = smith_normal_form(dst_rels);
  IntMat img = mul(map, src_rels);
  for (int j = 0; j < img.cols; ++j) {
    std::vector<Int> col(img.rows);
    for (int i = 0; i < img.rows; ++i) col[i] = img.at(i, j);
    if (!solve(s, col)) return false;
  }
  return true;
}

bool matrices_agree(const IntMat& f, const IntMat& g, const IntMat& dst_rels) {
  SmithForm s = smith_normal_form(dst_rels);
  for (int j = 0; j < f.cols; ++j) {
    std::vector<Int> col(f.rows);
    for (int i = 0; i < f.rows; ++i) col[i] = f.at(i, j) - g.at(i, j);
    if (!solve(s, col)) return false;
  }
  return true;
}

} // namespace

void validate_module(const CatModule& a) {
  const FiniteCategory& b = *a.base;
  require(static_cast<int>(a.gens.size()) == b.objects() &&
              static_cast<int>(a.rels.size()) == b.objects() &&
              static_cast<int>(a.act.size()) == b.arrows(),
          "ValidationError", "module " + a.name + ": table sizes");
  for (int o = 0; o < b.objects(); ++o)
    require(a.rels[o].rows == a.gens[o], "ValidationError",
            "module " + a.name + ": relation shape at " + b.object_name[o]);
  for (int f = 0; f < b.arrows(); ++f) {
    require(a.act[f].rows == a.gens[b.dst[f]] && a.act[f].cols == a.gens[b.src[f]],
            "ValidationError",
            "module " + a.name + ": matrix shape at " + b.arrow_name[f]);
    require(sends_relations(a.act[f], a.rels[b.src[f]], a.rels[b.dst[f]]),
            "ValidationError",
            "module " + a.name + ": " + b.arrow_name[f] +
                " is not well-defined on the presented groups");
  }
  for (int o = 0; o < b.objects(); ++o)
    require(matrices_agree(a.act[b.id_arrow[o]], IntMat::identity(a.gens[o]),
                           a.rels[o]),
            "FunctorialityFailure",
            "module " + a.name + ": identity at " + b.object_name[o]);
  for (int g = 0; g < b.arrows(); ++g)
    for (int f = 0; f < b.arrows(); ++f) {
      if (!b.composable(g, f)) continue;
      require(matrices_agree(mul(a.act[g], a.act[f]), a.act[b.compose(g, f)],
                             a.rels[b.dst[g]]),
              "FunctorialityFailure",
              "module " + a.name + ": composite " + b.arrow_name[g] + " ∘ " +
                  b.arrow_name[f]);
    }
}

CatModule constant_module(CatPtr base) {
  CatModule a;
  a.name = "Z";
  a.base = base;
  a.gens.assign(base->objects(), 1);
  a.rels.assign(base->objects(), IntMat(1, 0));
  a.act.assign(base->arrows(), IntMat::identity(1));
  return a;
}

namespace {

// first object of a nerve chain
int chain_first(const SSet& bn, const FiniteCategory& b, int n, int c) {
  const Key& k = bn.cells[n][c];
  return n == 0 ? static_cast<int>(k[0]) : b.src[static_cast<int>(k[0])];
}

} // namespace

PresentedComplex coefficient_complex(const CatModule& a, int cap) {
  const FiniteCategory& b = *a.base;
  SSPtr bn = nerve(a.base, cap);
  NormalizedChains nc = normalized_chain_complex(bn);

  PresentedComplex cx;
  cx.gens.resize(cap + 1);
  cx.rels.resize(cap + 1);
  cx.diff.resize(cap + 1);
  // offsets of each nondegenerate chain's block
  std::vector<std::vector<int>> off(cap + 1);
  std::vector<std::vector<int>> first(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    off[n].resize(nc.cells[n].size());
    first[n].resize(nc.cells[n].size());
    int total = 0, rel_cols = 0;
    for (size_t j = 0; j < nc.cells[n].size(); ++j) {
      int c0 = chain_first(*bn, b, n, nc.cells[n][j]);
      off[n][j] = total;
      first[n][j] = c0;
      total += a.gens[c0];
      rel_cols += a.rels[c0].cols;
    }
    cx.gens[n] = total;
    IntMat r(total, rel_cols);
    int at = 0;
    for (size_t j = 0; j < nc.cells[n].size(); ++j) {
      const IntMat& rj = a.rels[first[n][j]];
      for (int jj = 0; jj < rj.cols; ++jj, ++at)
        for (int i = 0; i < rj.rows; ++i) r.at(off[n][j] + i, at) = rj.at(i, jj);
    }
    cx.rels[n] = std::move(r);
  }
  for (int n = 1; n <= cap; ++n) {
    IntMat d(cx.gens[n - 1], cx.gens[n]);
    for (size_t j = 0; j < nc.cells[n].size(); ++j) {
      int c = nc.cells[n][j];
      int sign = 1;
      for (int i = 0; i <= n; ++i, sign = -sign) {
        int t = nc.row[n - 1][bn->d(n, i, c)];
        if (t < 0) continue;
        const IntMat block = i == 0 ? a.act[static_cast<int>(bn->cells[n][c][0])]
                                    : IntMat::identity(a.gens[first[n][j]]);
        for (int r = 0; r < block.rows; ++r)
          for (int s = 0; s < block.cols; ++s)
            d.at(off[n - 1][t] + r, off[n][j] + s) += sign * block.at(r, s);
      }
    }
    cx.diff[n] = std::move(d);
  }
  cx.validate();
  return cx;
}

AbelianGroup coefficient_homology(const CatModule& a, int cap, int n) {
  require(n < cap, "DegreeAboveGuarantee",
          "H_" + std::to_string(n) + " is not determined at cap " +
              std::to_string(cap));
  return homology(coefficient_complex(a, cap), n);
}

CatModule fiber_homology_module(const Cleavage& c, int m, int cap) {
  require(m < cap, "DegreeAboveGuarantee",
          "H_" + std::to_string(m) + " is not determined at cap " +
              std::to_string(cap));
  const FiniteCategory& b = c.cert->base();
  CatModule out;
  out.name = "H" + std::to_string(m) + "(fibers of " + c.cert->p.name + ")";
  out.base = c.cert->p.cod;
  out.gens.resize(b.objects());
  out.rels.resize(b.objects());
  out.act.resize(b.arrows());

  std::vector<SSPtr> fiber_nerve(b.objects());
  std::vector<NormalizedChains> chains(b.objects());
  std::vector<HomologyData> h(b.objects());
  for (int o = 0; o < b.objects(); ++o) {
    fiber_nerve[o] = nerve(fiber(c.cert->p, o).cat, cap);
    chains[o] = normalized_chain_complex(fiber_nerve[o]);
    h[o] = homology_at(chains[o].cx, m);
    out.gens[o] = h[o].cycle_reps.cols;
    out.rels[o] = h[o].relations;
  }
  for (int f = 0; f < b.arrows(); ++f) {
    BaseChange bc = base_change(c, f);
    SMap nm = nerve_map(bc.functor, fiber_nerve[b.src[f]], fiber_nerve[b.dst[f]]);
    IntMat cm = chain_map_matrix(nm, chains[b.src[f]], chains[b.dst[f]], m);
    out.act[f] = induced_on_homology(h[b.src[f]], h[b.dst[f]], cm);
  }
  validate_module(out);
  return out;
}

void Bicomplex::validate() const {
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) {
      if (n >= 2) {
        IntMat sq = mul(dh[m][n - 1], dh[m][n]);
        require(sq.is_zero(), "InvalidComplex",
                "dh∘dh ≠ 0 at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
      if (m >= 2) {
        IntMat sq = mul(dv[m - 1][n], dv[m][n]);
        require(sq.is_zero(), "InvalidComplex",
                "dv∘dv ≠ 0 at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
      if (m >= 1 && n >= 1) {
        IntMat ab = mul(dh[m - 1][n], dv[m][n]);
        IntMat ba = mul(dv[m][n - 1], dh[m][n]);
        require(ab == ba, "InvalidComplex",
                "dh∘dv ≠ dv∘dh at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
    }
}

Bicomplex bicomplex_from(BiPtr x) {
  require(x->mcap == x->ncap, "ValidationError",
          "bicomplex: expected equal caps, got (" + std::to_string(x->mcap) +
              "," + std::to_string(x->ncap) + ")");
  int cap = x->mcap;
  Bicomplex bc;
  bc.cap = cap;
  bc.rank.assign(cap + 1, std::vector<int>(cap + 1, 0));
  bc.cells.assign(cap + 1, std::vector<std::vector<int>>(cap + 1));
  bc.dh.assign(cap + 1, std::vector<IntMat>(cap + 1));
  bc.dv.assign(cap + 1, std::vector<IntMat>(cap + 1));

  // basis flags + rows: cells hit by some sv or sh are excluded
  std::vector<std::vector<std::vector<int>>> row(cap + 1,
      std::vector<std::vector<int>>(cap + 1));
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) {
      std::vector<char> deg(x->size(m, n), 0);
      if (m >= 1)
        for (int j = 0; j < m; ++j)
          for (int c = 0; c < x->size(m - 1, n); ++c) deg[x->sv(m - 1, n, j, c)] = 1;
      if (n >= 1)
        for (int j = 0; j < n; ++j)
          for (int c = 0; c < x->size(m, n - 1); ++c) deg[x->sh(m, n - 1, j, c)] = 1;
      row[m][n].assign(x->size(m, n), -1);
      for (int c = 0; c < x->size(m, n); ++c) {
        if (deg[c]) continue;
        row[m][n][c] = bc.rank[m][n]++;
        bc.cells[m][n].push_back(c);
      }
    }
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) {
      if (n >= 1) {
        IntMat d(bc.rank[m][n - 1], bc.rank[m][n]);
        for (int j = 0; j < bc.rank[m][n]; ++j) {
          int c = bc.cells[m][n][j], sign = 1;
          for (int i = 0; i <= n; ++i, sign = -sign) {
            int t = row[m][n - 1][x->dh(m, n, i, c)];
            if (t >= 0) d.at(t, j) += sign;
          }
        }
        bc.dh[m][n] = std::move(d);
      }
      if (m >= 1) {
        IntMat d(bc.rank[m - 1][n], bc.rank[m][n]);
        for (int j = 0; j < bc.rank[m][n]; ++j) {
          int c = bc.cells[m][n][j], sign = 1;
          for (int i = 0; i <= m; ++i, sign = -sign) {
            int t = row[m - 1][n][x->dv(m, n, i, c)];
            if (t >= 0) d.at(t, j) += sign;
          }
        }
        bc.dv[m][n] = std::move(d);
      }
    }
  bc.validate();
  return bc;
}

Bicomplex fibration_bicomplex(const FibredNerve& nf) { return bicomplex_from(nf.bis); }

TotalComplex total_complex(const Bicomplex& bc) {
  TotalComplex tc;
  int top = 2 * bc.cap;
  tc.blocks.resize(top + 1);
  tc.cx.gens.assign(top + 1, 0);
  tc.cx.rels.resize(top + 1);
  tc.cx.diff.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    int at = 0;
    for (int n = std::max(0, d - bc.cap); n <= std::min(bc.cap, d); ++n) {
      int m = d - n;
      tc.blocks[d].push_back({m, n, at});
      at += bc.rank[m][n];
    }
    tc.cx.gens[d] = at;
    tc.cx.rels[d] = IntMat(at, 0);
  }
  auto offset_of = [&](int d, int m, int n) -> int {
    for (const auto& b : tc.blocks[d])
      if (b[0] == m && b[1] == n) return b[2];
    assert(false);
    return -1;
  };
  for (int d = 1; d <= top; ++d) {
    IntMat dd(tc.cx.gens[d - 1], tc.cx.gens[d]);
    for (const auto& blk : tc.blocks[d]) {
      int m = blk[0], n = blk[1], o = blk[2];
      if (n >= 1) {
        const IntMat& h = bc.dh[m][n];
        int to = offset_of(d - 1, m, n - 1);
        for (int r = 0; r < h.rows; ++r)
          for (int s = 0; s < h.cols; ++s) dd.at(to + r, o + s) += h.at(r, s);
      }
      if (m >= 1) {
        const IntMat& v = bc.dv[m][n];
        int to = offset_of(d - 1, m - 1, n);
        int sign = n % 2 == 0 ? 1 : -1;
        for (int r = 0; r < v.rows; ++r)
          for (int s = 0; s < v.cols; ++s) dd.at(to + r, o + s) += sign * v.at(r, s);
      }
    }
    tc.cx.diff[d] = std::move(dd);
  }
  tc.cx.validate();
  return tc;
}

bool eilenberg_zilber_check(BiPtr x, int max_degree) {
  TotalComplex tot = total_complex(bicomplex_from(x));
  NormalizedChains diag = normalized_chain_complex(diagonal(x));
  for (int d = 0; d <= max_degree; ++d)
    if (homology(tot.cx, d) != homology(diag.cx, d)) return false;
  return true;
}

}  // namespace cleave
