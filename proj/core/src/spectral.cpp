#include "cleave/spectral.hpp"

#include <cassert>
#include <map>
#include <tuple>

#include "cleave/error.hpp"

namespace cleave {

namespace {

// Subspace bookkeeping for one page entry: denominator and chosen
// representative columns inside the cycle space.
struct EntryData {
  FieldMat den;  // Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1}
  FieldMat reps; // columns of Z^r_p completing den
};

struct PageMachine {
  const Bicomplex& bc;
  Field k;
  TotalComplex tot;
  int top;                                  // 2 * cap
  std::vector<std::vector<int>> prefix;     // [d][p+1]: basis size with n <= p
  std::vector<std::vector<int>> row_level;  // [d][row]: the n of that basis row
  std::vector<FieldMat> diff;               // [d] >= 1

  std::map<std::tuple<int, int, int>, FieldMat> zmemo;

  explicit PageMachine(const Bicomplex& b, const Field& f) : bc(b), k(f) {
    tot = total_complex(bc);
    top = 2 * bc.cap;
    prefix.assign(top + 1, {});
    row_level.assign(top + 1, {});
    for (int d = 0; d <= top; ++d) {
      prefix[d].assign(bc.cap + 2, 0);
      row_level[d].assign(tot.cx.gens[d], 0);
      for (const auto& blk : tot.blocks[d])
        for (int i = 0; i < bc.rank[blk[0]][blk[1]]; ++i)
          row_level[d][blk[2] + i] = blk[1];
      for (int p = 0; p <= bc.cap; ++p) {
        int c = 0;
        for (const auto& blk : tot.blocks[d])
          if (blk[1] <= p) c = blk[2] + bc.rank[blk[0]][blk[1]];
        prefix[d][p + 1] = c;
      }
    }
    diff.resize(top + 1);
    for (int d = 1; d <= top; ++d) diff[d] = field_mat(k, tot.cx.diff[d]);
  }

  int pre(int d, int p) const {
    if (d < 0 || d > top) return 0;
    if (p < 0) return 0;
    return prefix[d][std::min(p, bc.cap) + 1];
  }

  // basis of Z^r_{p,*} at total degree d: {x ∈ F_p : Dx ∈ F_{p-r}},
  // as columns in the full Tot_d coordinate space.  The space bound p and
  // the depth bound p - r saturate independently.
  const FieldMat& z(int r, int d, int p) {
    int pc = std::min(p, bc.cap);
    int lb = std::max(std::min(p - r, bc.cap), -1);
    auto key = std::make_tuple(d, pc, lb);
    auto it = zmemo.find(key);
    if (it != zmemo.end()) return it->second;

    int dim = tot.cx.gens[d];
    int c = pre(d, pc);
    FieldMat out(dim, 0);
    if (c > 0) {
      if (d == 0) {
        out = FieldMat(dim, c);
        for (int j = 0; j < c; ++j) out.at(j, j) = 1;
      } else {
        // rows of D with level > p - r must vanish on F_p columns
        std::vector<int> bad;
        for (int i = 0; i < diff[d].rows; ++i)
          if (row_level[d - 1][i] > lb) bad.push_back(i);
        FieldMat m(static_cast<int>(bad.size()), c);
        for (size_t i = 0; i < bad.size(); ++i)
          for (int j = 0; j < c; ++j) m.at(static_cast<int>(i), j) = diff[d].at(bad[i], j);
        FieldMat ker = nullspace(k, m); // c x z
        out = FieldMat(dim, ker.cols);
        for (int i = 0; i < c; ++i)
          for (int j = 0; j < ker.cols; ++j) out.at(i, j) = ker.at(i, j);
      }
    }
    return zmemo.emplace(key, std::move(out)).first->second;
  }

  FieldMat image(int d, const FieldMat& cols) {
    if (d < 1 || d > top)
      return FieldMat(d - 1 >= 0 && d - 1 <= top ? tot.cx.gens[d - 1] : 0, 0);
    return mul(k, diff[d], cols);
  }

  EntryData entry(int r, int m, int n) {
    int d = m + n, p = n;
    const FieldMat& znum = z(r, d, p);
    FieldMat dz = d + 1 <= top ? image(d + 1, z(r - 1, d + 1, p + r - 1))
                               : FieldMat(tot.cx.gens[d], 0);
    EntryData e;
    e.den = hcat(z(r - 1, d, p - 1), dz);
    e.reps = columns(znum, extend_basis(k, e.den, znum));
    return e;
  }
};

} // namespace

SpectralSequence spectral_sequence(const Bicomplex& bc, const Coeff& coeff,
                                   int r_max) {
  require(r_max >= 1, "ValidationError", "r_max must be at least 1");
  Field k = field_of(coeff);
  PageMachine pm(bc, k);
  int cap = bc.cap, top = 2 * cap;

  SpectralSequence ss;
  ss.coeff = coeff;
  ss.cap = cap;
  ss.tot_dim.resize(top + 1);
  for (int d = 0; d <= top; ++d)
    ss.tot_dim[d] = homology_over_field(pm.tot.cx, d, coeff);

  std::vector<std::vector<EntryData>> cur, nxt;
  auto compute_entries = [&](int r) {
    std::vector<std::vector<EntryData>> e(cap + 1, std::vector<EntryData>(cap + 1));
    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) e[m][n] = pm.entry(r, m, n);
    return e;
  };
  cur = compute_entries(1);

  std::vector<std::vector<std::vector<FieldMat>>> drs; // [page][m][n]
  for (int r = 1; r <= r_max; ++r) {
    SpectralPage page;
    page.r = r;
    page.dim.assign(cap + 1, std::vector<long long>(cap + 1, 0));
    page.dr_rank.assign(cap + 1, std::vector<int>(cap + 1, 0));
    std::vector<std::vector<FieldMat>> dr(cap + 1, std::vector<FieldMat>(cap + 1));

    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) page.dim[m][n] = cur[m][n].reps.cols;

    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) {
        int tm = m + r - 1, tn = n - r;
        int sdim = static_cast<int>(page.dim[m][n]);
        bool tin = tm >= 0 && tm <= cap && tn >= 0;
        int tdim = tin ? static_cast<int>(page.dim[tm][tn]) : 0;
        dr[m][n] = FieldMat(tdim, sdim);
        if (sdim == 0) continue;
        FieldMat w = pm.image(m + n, cur[m][n].reps);
        if (!tin || tdim == 0) {
          // the image must already die in the target denominator
          if (tin) {
            auto sol = solve_columns(k, cur[tm][tn].den, w);
            require(sol.has_value(), "ValidationError",
                    "spectral: differential image escapes the target entry");
          }
          continue;
        }
        FieldMat basis = hcat(cur[tm][tn].reps, cur[tm][tn].den);
        auto sol = solve_columns(k, basis, w);
        require(sol.has_value(), "ValidationError",
                "spectral: differential image escapes the target entry");
        for (int i = 0; i < tdim; ++i)
          for (int j = 0; j < sdim; ++j) dr[m][n].at(i, j) = sol->at(i, j);
        page.dr_rank[m][n] = rank(k, dr[m][n]);
      }

    // d_r ∘ d_r = 0
    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) {
        int tm = m + r - 1, tn = n - r;
        if (tm > cap || tn < 0) continue;
        if (dr[m][n].cols == 0 || dr[tm][tn].rows == 0 || dr[m][n].rows == 0)
          continue;
        FieldMat sq = mul(k, dr[tm][tn], dr[m][n]);
        for (const Rat& v : sq.a)
          require(k.is_zero(v), "ValidationError", "spectral: d_r ∘ d_r ≠ 0");
      }

    ss.pages.push_back(page);
    drs.push_back(std::move(dr));

    if (r == r_max) break;
    nxt = compute_entries(r + 1);
    // page succession: next dims = homology of this page under d_r
    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) {
        long long expect = page.dim[m][n] - page.dr_rank[m][n];
        int sm = m - r + 1, sn = n + r;
        if (sm >= 0 && sm <= cap && sn <= cap) expect -= page.dr_rank[sm][sn];
        require(expect == static_cast<long long>(nxt[m][n].reps.cols),
                "ValidationError",
                "spectral: page " + std::to_string(r + 1) +
                    " is not the homology of page " + std::to_string(r) +
                    " at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
    cur = std::move(nxt);
  }

  const SpectralPage& last = ss.pages.back();
  ss.einf_total.assign(top + 1, 0);
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) ss.einf_total[m + n] += last.dim[m][n];

  bool converged = true;
  for (int d = 0; d <= top; ++d) converged &= ss.einf_total[d] == ss.tot_dim[d];
  require(converged, "NotStabilized",
          "pages still move at r_max = " + std::to_string(r_max) +
              "; raise --rmax (stabilization is guaranteed by r = cap + 2)");

  ss.stable_at = static_cast<int>(ss.pages.size());
  for (int i = static_cast<int>(ss.pages.size()) - 1; i >= 0; --i) {
    bool quiet = true;
    for (int m = 0; m <= cap && quiet; ++m)
      for (int n = 0; n <= cap && quiet; ++n)
        quiet = ss.pages[i].dr_rank[m][n] == 0 &&
                ss.pages[i].dim[m][n] == last.dim[m][n];
    if (!quiet) break;
    ss.stable_at = ss.pages[i].r;
  }
  return ss;
}

PresentedComplex e2_row_complex(const Bicomplex& bc, int m) {
  require(m >= 0 && m <= bc.cap, "ValidationError", "row out of range");
  std::vector<HomologyData> h(bc.cap + 1);
  for (int n = 0; n <= bc.cap; ++n) {
    PresentedComplex col;
    col.gens.resize(bc.cap + 1);
    col.rels.resize(bc.cap + 1);
    col.diff.resize(bc.cap + 1);
    for (int j = 0; j <= bc.cap; ++j) {
      col.gens[j] = bc.rank[j][n];
      col.rels[j] = IntMat(col.gens[j], 0);
      if (j >= 1) col.diff[j] = bc.dv[j][n];
    }
    h[n] = homology_at(col, m);
  }
  PresentedComplex row;
  row.gens.resize(bc.cap + 1);
  row.rels.resize(bc.cap + 1);
  row.diff.resize(bc.cap + 1);
  for (int n = 0; n <= bc.cap; ++n) {
    row.gens[n] = h[n].cycle_reps.cols;
    row.rels[n] = h[n].relations;
    if (n >= 1) row.diff[n] = induced_on_homology(h[n], h[n - 1], bc.dh[m][n]);
  }
  row.validate();
  return row;
}

AbelianGroup integral_e2(const Bicomplex& bc, int m, int n) {
  return homology(e2_row_complex(bc, m), n);
}

namespace {

// basis of H_m(chains ⊗ k) as ambient chain coordinates
struct FieldHomologyBasis {
  FieldMat reps;      // gens[m] x dim
  FieldMat boundary;  // image of d_{m+1}
};

FieldHomologyBasis field_h_basis(const Field& k, const PresentedComplex& cx, int m) {
  FieldHomologyBasis b;
  int g = cx.gens[m];
  FieldMat cycles;
  if (m >= 1)
    cycles = nullspace(k, field_mat(k, cx.diff[m]));
  else
    cycles = field_identity(g);
  b.boundary = m + 1 <= cx.top() ? field_mat(k, cx.diff[m + 1]) : FieldMat(g, 0);
  b.reps = columns(cycles, extend_basis(k, b.boundary, cycles));
  return b;
}

} // namespace

FieldModule field_fiber_module(const Cleavage& c, int m, int cap, const Coeff& coeff) {
  require(m < cap, "DegreeAboveGuarantee",
          "H_" + std::to_string(m) + " is not determined at cap " + std::to_string(cap));
  Field k = field_of(coeff);
  const FiniteCategory& b = c.cert->base();
  FieldModule out;
  out.base = c.cert->p.cod;
  out.k = k;
  out.dim.resize(b.objects());
  out.act.resize(b.arrows());

  std::vector<SSPtr> fiber_nerve(b.objects());
  std::vector<NormalizedChains> chains(b.objects());
  std::vector<FieldHomologyBasis> h(b.objects());
  for (int o = 0; o < b.objects(); ++o) {
    fiber_nerve[o] = nerve(fiber(c.cert->p, o).cat, cap);
    chains[o] = normalized_chain_complex(fiber_nerve[o]);
    h[o] = field_h_basis(k, chains[o].cx, m);
    out.dim[o] = h[o].reps.cols;
  }
  for (int f = 0; f < b.arrows(); ++f) {
    int s = b.src[f], d = b.dst[f];
    BaseChange bch = base_change(c, f);
    SMap nm = nerve_map(bch.functor, fiber_nerve[s], fiber_nerve[d]);
    FieldMat cm = field_mat(k, chain_map_matrix(nm, chains[s], chains[d], m));
    FieldMat w = mul(k, cm, h[s].reps);
    FieldMat basis = hcat(h[d].reps, h[d].boundary);
    auto sol = solve_columns(k, basis, w);
    require(sol.has_value(), "ValidationError",
            "field fiber module: image is not a cycle");
    out.act[f] = FieldMat(out.dim[d], out.dim[s]);
    for (int i = 0; i < out.dim[d]; ++i)
      for (int j = 0; j < out.dim[s]; ++j) out.act[f].at(i, j) = sol->at(i, j);
  }
  return out;
}

std::vector<long long> field_module_homology(const FieldModule& a, int cap) {
  const FiniteCategory& b = *a.base;
  SSPtr bn = nerve(a.base, cap);
  NormalizedChains nc = normalized_chain_complex(bn);
  const Field& k = a.k;

  std::vector<int> gens(cap + 1, 0);
  std::vector<std::vector<int>> off(cap + 1), first(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    off[n].resize(nc.cells[n].size());
    first[n].resize(nc.cells[n].size());
    for (size_t j = 0; j < nc.cells[n].size(); ++j) {
      const Key& key = bn->cells[n][nc.cells[n][j]];
      int c0 = n == 0 ? static_cast<int>(key[0]) : b.src[static_cast<int>(key[0])];
      off[n][j] = gens[n];
      first[n][j] = c0;
      gens[n] += a.dim[c0];
    }
  }
  std::vector<FieldMat> d(cap + 1);
  for (int n = 1; n <= cap; ++n) {
    d[n] = FieldMat(gens[n - 1], gens[n]);
    for (size_t j = 0; j < nc.cells[n].size(); ++j) {
      int c = nc.cells[n][j];
      int sign = 1;
      for (int i = 0; i <= n; ++i, sign = -sign) {
        int t = nc.row[n - 1][bn->d(n, i, c)];
        if (t < 0) continue;
        FieldMat block = i == 0 ? a.act[static_cast<int>(bn->cells[n][c][0])]
                                : field_identity(a.dim[first[n][j]]);
        Rat sg = k.from_int(sign);
        for (int r = 0; r < block.rows; ++r)
          for (int s = 0; s < block.cols; ++s)
            d[n].at(off[n - 1][t] + r, off[n][j] + s) =
                k.add(d[n].at(off[n - 1][t] + r, off[n][j] + s),
                      k.mul(sg, block.at(r, s)));
      }
    }
  }
  std::vector<long long> dims(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    long long x = gens[n];
    if (n >= 1) x -= rank(k, d[n]);
    if (n + 1 <= cap) x -= rank(k, d[n + 1]);
    dims[n] = x;
  }
  return dims;
}

}  // namespace cleave
