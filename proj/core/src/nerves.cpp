#include "cleave/nerves.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "cleave/error.hpp"

namespace cleave {

namespace {

std::string at_pos(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::vector<int> id_map(int n) {
  std::vector<int> r(n + 1);
  for (int t = 0; t <= n; ++t) r[t] = t;
  return r;
}

std::vector<int> skip_map(int m, int i) { // [m-1] -> [m] avoiding i
  std::vector<int> r;
  r.reserve(m);
  for (int t = 0; t <= m; ++t)
    if (t != i) r.push_back(t);
  return r;
}

std::vector<int> twice_map(int m, int j) { // [m+1] -> [m] hitting j twice
  std::vector<int> r;
  r.reserve(m + 2);
  for (int t = 0; t <= m; ++t) {
    r.push_back(t);
    if (t == j) r.push_back(t);
  }
  return r;
}

void alloc_ops(SSet& x) {
  for (int n = 0; n <= x.cap; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n >= 1) x.face[n][i].assign(x.size(n), -1);
      if (n < x.cap) x.degen[n][i].assign(x.size(n), -1);
    }
}

void alloc_ops(BiSSet& x) {
  for (int m = 0; m <= x.mcap; ++m)
    for (int n = 0; n <= x.ncap; ++n) {
      int sz = x.size(m, n);
      for (int i = 0; i <= m; ++i) {
        if (m >= 1) x.vface[m][n][i].assign(sz, -1);
        if (m < x.mcap) x.vdegen[m][n][i].assign(sz, -1);
      }
      for (int i = 0; i <= n; ++i) {
        if (n >= 1) x.hface[m][n][i].assign(sz, -1);
        if (n < x.ncap) x.hdegen[m][n][i].assign(sz, -1);
      }
    }
}

// objects b_0..b_n under the chain stored at (n, bc)
std::vector<int> chain_objects(const FiniteCategory& b, const SSet& bn, int n,
                               int bc) {
  const Key& k = bn.cells[n][bc];
  std::vector<int> r;
  if (n == 0) {
    r.push_back(static_cast<int>(k[0]));
    return r;
  }
  r.push_back(b.src[static_cast<int>(k[0])]);
  for (int j = 0; j < n; ++j) r.push_back(b.dst[static_cast<int>(k[j])]);
  return r;
}

// column 0 of a grid from a fiber-nerve cell, translated into the total
// category
void mast_column(const FiniteCategory& e, const Subcategory& fib,
                 const Key& mast, int m, std::vector<int>& obj,
                 std::vector<int>& vert) {
  const Functor& inc = fib.inclusion;
  obj.resize(m + 1);
  vert.resize(m);
  if (m == 0) {
    obj[0] = inc.ob[static_cast<int>(mast[0])];
    return;
  }
  for (int i = 0; i < m; ++i) vert[i] = inc.fl[static_cast<int>(mast[i])];
  obj[0] = e.src[vert[0]];
  for (int i = 0; i < m; ++i) obj[i + 1] = e.dst[vert[i]];
}

// Appends every grid with the given base chain and first column.  The
// horizontals of column step j range over the cartesian lifts of the j-th
// base arrow — or, when sigma is set, are its chosen lifts, so exactly one
// candidate comes out.  The verticals of each new column are the unique
// fillers through the chosen horizontals, which also makes every square
// commute.
void extend_columns(const FibrationCertificate& cert, const Cleavage* sigma,
                    const std::vector<int>& bobj, const std::vector<int>& garr,
                    int m, int n, const std::vector<int>& obj0,
                    const std::vector<int>& vert0, std::vector<Key>& out) {
  const FiniteCategory& e = cert.total();
  const FiniteCategory& b = cert.base();
  Grid g;
  g.m = m;
  g.n = n;
  g.obj.assign((m + 1) * (n + 1), -1);
  g.vert.assign(m * (n + 1), -1);
  g.horiz.assign((m + 1) * n, -1);
  for (int i = 0; i <= m; ++i) g.obj[i * (n + 1)] = obj0[i];
  for (int i = 0; i < m; ++i) g.vert[i * (n + 1)] = vert0[i];

  std::function<void(int, const std::vector<int>&, const std::vector<int>&)>
      step = [&](int j, const std::vector<int>& cobj,
                 const std::vector<int>& cvert) {
        if (j == n) {
          out.push_back(encode_grid(g));
          return;
        }
        int phi = garr[j];
        std::vector<int> pick(m + 1, 0);
        std::vector<int> h(m + 1), nobj(m + 1), nvert(m);
        while (true) {
          for (int i = 0; i <= m; ++i) {
            const std::vector<int>& ch = cert.lifts[cobj[i]][phi];
            assert(!ch.empty());
            h[i] = sigma ? sigma->lift_for(cobj[i], phi) : ch[pick[i]];
            nobj[i] = e.dst[h[i]];
          }
          for (int i = 0; i < m; ++i) {
            std::vector<int> w =
                lift_fillers(cert.p, h[i], e.compose(h[i + 1], cvert[i]),
                             b.id_arrow[bobj[j + 1]]);
            assert(w.size() == 1);
            nvert[i] = w[0];
          }
          for (int i = 0; i <= m; ++i) {
            g.horiz[i * n + j] = h[i];
            g.obj[i * (n + 1) + j + 1] = nobj[i];
          }
          for (int i = 0; i < m; ++i) g.vert[i * (n + 1) + j + 1] = nvert[i];
          step(j + 1, nobj, nvert);
          if (sigma) break;
          int t = 0;
          while (t <= m) {
            if (++pick[t] <
                static_cast<int>(cert.lifts[cobj[t]][phi].size()))
              break;
            pick[t] = 0;
            ++t;
          }
          if (t > m) break;
        }
      };
  step(0, obj0, vert0);
}

// every span of length >= 2 is a chosen lift; unit steps and identities
// hold by construction (forced lifts, normal cleavage)
bool spans_chosen(const Cleavage& c, const FiniteCategory& e, const Grid& g) {
  for (int i = 0; i <= g.m; ++i)
    for (int a = 0; a <= g.n; ++a)
      for (int b2 = a + 2; b2 <= g.n; ++b2)
        if (!c.in_sigma(grid_row_composite(e, g, i, a, b2))) return false;
  return true;
}

void fill_ops(BiSSet& x, const FiniteCategory& e) {
  alloc_ops(x);
  for (int m = 0; m <= x.mcap; ++m)
    for (int n = 0; n <= x.ncap; ++n)
      for (int c = 0; c < x.size(m, n); ++c) {
        Grid g = decode_grid(m, n, x.cells[m][n][c]);
        for (int i = 0; i <= m && m >= 1; ++i) {
          Grid r = apply_monotone(e, g, skip_map(m, i), id_map(n));
          int idx = x.index_of(m - 1, n, encode_grid(r));
          assert(idx >= 0);
          x.vface[m][n][i][c] = idx;
        }
        for (int j = 0; j <= m && m < x.mcap; ++j) {
          Grid r = apply_monotone(e, g, twice_map(m, j), id_map(n));
          int idx = x.index_of(m + 1, n, encode_grid(r));
          assert(idx >= 0);
          x.vdegen[m][n][j][c] = idx;
        }
        for (int i = 0; i <= n && n >= 1; ++i) {
          Grid r = apply_monotone(e, g, id_map(m), skip_map(n, i));
          int idx = x.index_of(m, n - 1, encode_grid(r));
          assert(idx >= 0);
          x.hface[m][n][i][c] = idx;
        }
        for (int j = 0; j <= n && n < x.ncap; ++j) {
          Grid r = apply_monotone(e, g, id_map(m), twice_map(n, j));
          int idx = x.index_of(m, n + 1, encode_grid(r));
          assert(idx >= 0);
          x.hdegen[m][n][j][c] = idx;
        }
      }
}

int chain_head(const FiniteCategory& b, const SSet& bn, int n, int chain) {
  const Key& k = bn.cells[n][chain];
  return n == 0 ? static_cast<int>(k[0]) : b.src[static_cast<int>(k[0])];
}

} // namespace

// ------------------------------------------------------------------- grids

Key encode_grid(const Grid& g) {
  Key k;
  k.reserve(g.obj.size() + g.vert.size() + g.horiz.size());
  for (int v : g.obj) k.push_back(v);
  for (int v : g.vert) k.push_back(v);
  for (int v : g.horiz) k.push_back(v);
  return k;
}

Grid decode_grid(int m, int n, const Key& k) {
  Grid g;
  g.m = m;
  g.n = n;
  size_t no = static_cast<size_t>(m + 1) * (n + 1);
  size_t nv = static_cast<size_t>(m) * (n + 1);
  size_t nh = static_cast<size_t>(m + 1) * n;
  assert(k.size() == no + nv + nh);
  g.obj.resize(no);
  g.vert.resize(nv);
  g.horiz.resize(nh);
  for (size_t t = 0; t < no; ++t) g.obj[t] = static_cast<int>(k[t]);
  for (size_t t = 0; t < nv; ++t) g.vert[t] = static_cast<int>(k[no + t]);
  for (size_t t = 0; t < nh; ++t) g.horiz[t] = static_cast<int>(k[no + nv + t]);
  return g;
}

int grid_row_composite(const FiniteCategory& e, const Grid& g, int i, int a,
                       int b) {
  int f = e.id_arrow[g.ob(i, a)];
  for (int j = a; j < b; ++j) f = e.compose(g.hor(i, j), f);
  return f;
}

int grid_col_composite(const FiniteCategory& e, const Grid& g, int j, int a,
                       int b) {
  int f = e.id_arrow[g.ob(a, j)];
  for (int i = a; i < b; ++i) f = e.compose(g.ver(i, j), f);
  return f;
}

Grid apply_monotone(const FiniteCategory& e, const Grid& g,
                    const std::vector<int>& rho, const std::vector<int>& gamma) {
  Grid r;
  r.m = static_cast<int>(rho.size()) - 1;
  r.n = static_cast<int>(gamma.size()) - 1;
  r.obj.resize((r.m + 1) * (r.n + 1));
  r.vert.resize(r.m * (r.n + 1));
  r.horiz.resize((r.m + 1) * r.n);
  for (int i = 0; i <= r.m; ++i)
    for (int j = 0; j <= r.n; ++j)
      r.obj[i * (r.n + 1) + j] = g.ob(rho[i], gamma[j]);
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j <= r.n; ++j)
      r.vert[i * (r.n + 1) + j] =
          grid_col_composite(e, g, gamma[j], rho[i], rho[i + 1]);
  for (int i = 0; i <= r.m; ++i)
    for (int j = 0; j < r.n; ++j)
      r.horiz[i * r.n + j] =
          grid_row_composite(e, g, rho[i], gamma[j], gamma[j + 1]);
  return r;
}

std::optional<std::string> check_grid(const CertPtr& cert, const Grid& g) {
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();
  const Functor& p = cert->p;
  for (int o : g.obj)
    if (o < 0 || o >= e.objects()) return "object index out of range";
  for (int f : g.vert)
    if (f < 0 || f >= e.arrows()) return "vertical index out of range";
  for (int f : g.horiz)
    if (f < 0 || f >= e.arrows()) return "horizontal index out of range";
  for (int i = 0; i < g.m; ++i)
    for (int j = 0; j <= g.n; ++j) {
      int f = g.ver(i, j);
      if (e.src[f] != g.ob(i, j) || e.dst[f] != g.ob(i + 1, j))
        return "vertical at " + at_pos(i, j) + " has wrong endpoints";
      if (!b.is_identity(p.fl[f]))
        return "vertical at " + at_pos(i, j) + " does not lie over an identity";
    }
  for (int i = 0; i <= g.m; ++i)
    for (int j = 0; j < g.n; ++j) {
      int f = g.hor(i, j);
      if (e.src[f] != g.ob(i, j) || e.dst[f] != g.ob(i, j + 1))
        return "horizontal at " + at_pos(i, j) + " has wrong endpoints";
      if (p.fl[f] != p.fl[g.hor(0, j)])
        return "horizontal at " + at_pos(i, j) + " lies over the wrong base arrow";
    }
  for (int i1 = 0; i1 < g.m; ++i1)
    for (int i2 = i1 + 1; i2 <= g.m; ++i2)
      for (int j1 = 0; j1 < g.n; ++j1)
        for (int j2 = j1 + 1; j2 <= g.n; ++j2) {
          int down_right = e.compose(grid_row_composite(e, g, i2, j1, j2),
                                     grid_col_composite(e, g, j1, i1, i2));
          int right_down = e.compose(grid_col_composite(e, g, j2, i1, i2),
                                     grid_row_composite(e, g, i1, j1, j2));
          if (down_right != right_down)
            return "rectangle " + at_pos(i1, j1) + ".." + at_pos(i2, j2) +
                   " does not commute";
        }
  for (int i = 0; i <= g.m; ++i)
    for (int a = 0; a < g.n; ++a)
      for (int b2 = a + 1; b2 <= g.n; ++b2)
        if (!cert->cartesian[grid_row_composite(e, g, i, a, b2)])
          return "row " + std::to_string(i) + " composite over columns " +
                 std::to_string(a) + ".." + std::to_string(b2) +
                 " is not cartesian";
  return std::nullopt;
}

std::optional<std::string> check_cleaved_grid(const Cleavage& c, const Grid& g) {
  if (auto r = check_grid(c.cert, g)) return r;
  const FiniteCategory& e = c.cert->total();
  for (int i = 0; i <= g.m; ++i)
    for (int a = 0; a <= g.n; ++a)
      for (int b2 = a; b2 <= g.n; ++b2)
        if (!c.in_sigma(grid_row_composite(e, g, i, a, b2)))
          return "row " + std::to_string(i) + " composite over columns " +
                 std::to_string(a) + ".." + std::to_string(b2) +
                 " is not a chosen lift";
  return std::nullopt;
}

Key base_key(const Functor& p, const Grid& g) {
  if (g.n == 0) return {p.ob[g.ob(0, 0)]};
  Key k;
  for (int j = 0; j < g.n; ++j) k.push_back(p.fl[g.hor(0, j)]);
  return k;
}

Key mast_key(const Grid& g, const Subcategory& fib) {
  const Functor& inc = fib.inclusion;
  if (g.m == 0) {
    for (int x = 0; x < fib.cat->objects(); ++x)
      if (inc.ob[x] == g.ob(0, 0)) return {x};
    assert(false);
    return {};
  }
  Key k;
  for (int i = 0; i < g.m; ++i) {
    int found = -1;
    for (int f = 0; f < fib.cat->arrows(); ++f)
      if (inc.fl[f] == g.ver(i, 0)) {
        found = f;
        break;
      }
    assert(found >= 0);
    k.push_back(found);
  }
  return k;
}

// ------------------------------------------------------------------ nerves

FibredNerve fibred_nerve(const CertPtr& cert, int cap) {
  require(cert != nullptr && cert->is_fibration(), "ValidationError",
          "the fibred nerve requires a fibration");
  FibredNerve out;
  out.cert = cert;
  out.cap = cap;
  out.base_nerve = nerve(cert->p.cod, cap);
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();
  for (int bo = 0; bo < b.objects(); ++bo) {
    out.fiber.push_back(fiber(cert->p, bo));
    out.fiber_nerve.push_back(nerve(out.fiber.back().cat, cap));
  }
  auto x = std::make_shared<BiSSet>();
  x->name = "Nf(" + cert->p.name + ")";
  x->shape(cap, cap);
  const SSet& bn = *out.base_nerve;
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) {
      for (int bc = 0; bc < bn.size(n); ++bc) {
        std::vector<int> bobj = chain_objects(b, bn, n, bc);
        std::vector<int> garr;
        for (int j = 0; j < n; ++j)
          garr.push_back(static_cast<int>(bn.cells[n][bc][j]));
        const SSet& fn = *out.fiber_nerve[bobj[0]];
        for (int mc = 0; mc < fn.size(m); ++mc) {
          std::vector<int> obj0, vert0;
          mast_column(e, out.fiber[bobj[0]], fn.cells[m][mc], m, obj0, vert0);
          extend_columns(*cert, nullptr, bobj, garr, m, n, obj0, vert0,
                         x->cells[m][n]);
        }
      }
      std::sort(x->cells[m][n].begin(), x->cells[m][n].end());
    }
  fill_ops(*x, e);
  x->validate();
  out.bis = x;
  return out;
}

CleavedNerve cleaved_nerve(const Cleavage& c, int cap) {
  require(c.cert != nullptr && c.cert->is_fibration(), "ValidationError",
          "the cleaved nerve requires a fibration");
  validate_cleavage(c);
  require_normal(c);
  CleavedNerve out;
  out.cleavage = c;
  out.cap = cap;
  out.base_nerve = nerve(c.cert->p.cod, cap);
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  for (int bo = 0; bo < b.objects(); ++bo) {
    out.fiber.push_back(fiber(c.cert->p, bo));
    out.fiber_nerve.push_back(nerve(out.fiber.back().cat, cap));
  }
  bool closed = is_closed(c);
  auto x = std::make_shared<BiSSet>();
  x->name = "Nc(" + c.name + ")";
  x->shape(cap, cap);
  const SSet& bn = *out.base_nerve;
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) {
      for (int bc = 0; bc < bn.size(n); ++bc) {
        std::vector<int> bobj = chain_objects(b, bn, n, bc);
        std::vector<int> garr;
        for (int j = 0; j < n; ++j)
          garr.push_back(static_cast<int>(bn.cells[n][bc][j]));
        const SSet& fn = *out.fiber_nerve[bobj[0]];
        for (int mc = 0; mc < fn.size(m); ++mc) {
          std::vector<int> obj0, vert0;
          mast_column(e, out.fiber[bobj[0]], fn.cells[m][mc], m, obj0, vert0);
          std::vector<Key> cand;
          extend_columns(*c.cert, &c, bobj, garr, m, n, obj0, vert0, cand);
          assert(cand.size() == 1);
          if (closed || spans_chosen(c, e, decode_grid(m, n, cand[0])))
            x->cells[m][n].push_back(cand[0]);
        }
      }
      std::sort(x->cells[m][n].begin(), x->cells[m][n].end());
    }
  fill_ops(*x, e);
  x->validate();
  out.bis = x;
  return out;
}

BiMap cleaved_inclusion(const CleavedNerve& cn, const FibredNerve& nf) {
  require(functors_equal(cn.cleavage.cert->p, nf.cert->p), "ValidationError",
          "inclusion: nerves of different fibrations");
  require(cn.cap == nf.cap, "ValidationError", "inclusion: caps differ");
  BiMap f;
  f.name = "i";
  f.src = cn.bis;
  f.dst = nf.bis;
  f.map.resize(cn.cap + 1);
  for (int m = 0; m <= cn.cap; ++m) {
    f.map[m].resize(cn.cap + 1);
    for (int n = 0; n <= cn.cap; ++n) {
      f.map[m][n].resize(cn.bis->size(m, n));
      for (int c = 0; c < cn.bis->size(m, n); ++c) {
        int idx = nf.bis->index_of(m, n, cn.bis->cells[m][n][c]);
        assert(idx >= 0);
        f.map[m][n][c] = idx;
      }
    }
  }
  validate_bimap(f);
  return f;
}

// ------------------------------------------------------------- base slices

static BaseSlice slice_impl(const Functor& p, BiPtr bis, SSPtr base_nerve,
                            int n, int chain) {
  require(n >= 0 && n <= bis->ncap, "ValidationError",
          "base slice: level out of range");
  require(chain >= 0 && chain < base_nerve->size(n), "ValidationError",
          "base slice: no such chain");
  BaseSlice sl;
  sl.n = n;
  sl.chain = chain;
  const Key& bkey = base_nerve->cells[n][chain];
  auto x = std::make_shared<SSet>();
  x->name = bis->name + "|" + std::to_string(n) + "." + std::to_string(chain);
  x->shape(bis->mcap);
  sl.to_parent.assign(bis->mcap + 1, {});
  std::vector<std::vector<int>> back(bis->mcap + 1);
  for (int m = 0; m <= bis->mcap; ++m) {
    back[m].assign(bis->size(m, n), -1);
    for (int c = 0; c < bis->size(m, n); ++c) {
      Grid g = decode_grid(m, n, bis->cells[m][n][c]);
      if (base_key(p, g) != bkey) continue;
      back[m][c] = static_cast<int>(x->cells[m].size());
      sl.to_parent[m].push_back(c);
      x->cells[m].push_back(bis->cells[m][n][c]);
    }
  }
  alloc_ops(*x);
  for (int m = 0; m <= x->cap; ++m)
    for (int c = 0; c < x->size(m); ++c) {
      int pc = sl.to_parent[m][c];
      for (int i = 0; i <= m && m >= 1; ++i) {
        int idx = back[m - 1][bis->dv(m, n, i, pc)];
        assert(idx >= 0);
        x->face[m][i][c] = idx;
      }
      for (int j = 0; j <= m && m < x->cap; ++j) {
        int idx = back[m + 1][bis->sv(m, n, j, pc)];
        assert(idx >= 0);
        x->degen[m][j][c] = idx;
      }
    }
  x->finish();
  x->validate();
  sl.sset = x;
  return sl;
}

BaseSlice base_slice(const FibredNerve& nf, int n, int chain) {
  return slice_impl(nf.cert->p, nf.bis, nf.base_nerve, n, chain);
}

BaseSlice base_slice(const CleavedNerve& cn, int n, int chain) {
  return slice_impl(cn.cleavage.cert->p, cn.bis, cn.base_nerve, n, chain);
}

static SMap mu_impl(const Functor& p, const std::vector<Subcategory>& fib,
                    const std::vector<SSPtr>& fn, SSPtr base_nerve,
                    const BaseSlice& sl) {
  const FiniteCategory& b = *p.cod;
  int b0 = chain_head(b, *base_nerve, sl.n, sl.chain);
  SMap f;
  f.name = "mu";
  f.src = sl.sset;
  f.dst = fn[b0];
  f.map.resize(sl.sset->cap + 1);
  for (int m = 0; m <= sl.sset->cap; ++m) {
    f.map[m].resize(sl.sset->size(m));
    for (int c = 0; c < sl.sset->size(m); ++c) {
      Grid g = decode_grid(m, sl.n, sl.sset->cells[m][c]);
      int idx = fn[b0]->index_of(m, mast_key(g, fib[b0]));
      assert(idx >= 0);
      f.map[m][c] = idx;
    }
  }
  validate_smap(f);
  return f;
}

SMap mu(const FibredNerve& nf, const BaseSlice& sl) {
  return mu_impl(nf.cert->p, nf.fiber, nf.fiber_nerve, nf.base_nerve, sl);
}

SMap mu(const CleavedNerve& cn, const BaseSlice& sl) {
  return mu_impl(cn.cleavage.cert->p, cn.fiber, cn.fiber_nerve, cn.base_nerve,
                 sl);
}

SMap nu(const Cleavage& c, const FibredNerve& nf, const BaseSlice& sl) {
  require(functors_equal(c.cert->p, nf.cert->p), "ValidationError",
          "section: cleavage lives on a different fibration");
  const FiniteCategory& e = nf.cert->total();
  const FiniteCategory& b = nf.cert->base();
  const Key& bkey = nf.base_nerve->cells[sl.n][sl.chain];
  std::vector<int> bobj = chain_objects(b, *nf.base_nerve, sl.n, sl.chain);
  std::vector<int> garr;
  for (int j = 0; j < sl.n; ++j) garr.push_back(static_cast<int>(bkey[j]));
  int b0 = bobj[0];
  SMap f;
  f.name = "nu";
  f.src = nf.fiber_nerve[b0];
  f.dst = sl.sset;
  f.map.resize(f.src->cap + 1);
  for (int m = 0; m <= f.src->cap; ++m) {
    f.map[m].resize(f.src->size(m));
    for (int mc = 0; mc < f.src->size(m); ++mc) {
      std::vector<int> obj0, vert0;
      mast_column(e, nf.fiber[b0], f.src->cells[m][mc], m, obj0, vert0);
      std::vector<Key> cand;
      extend_columns(*nf.cert, &c, bobj, garr, m, sl.n, obj0, vert0, cand);
      assert(cand.size() == 1);
      int idx = sl.sset->index_of(m, cand[0]);
      assert(idx >= 0);
      f.map[m][mc] = idx;
    }
  }
  validate_smap(f);
  return f;
}

// -------------------------------------------------------------- comparison

SMap k_map(BiPtr grids, SSPtr diag, SSPtr total_nerve, CatPtr e) {
  SMap f;
  f.name = "k";
  f.src = diag;
  f.dst = total_nerve;
  f.map.resize(diag->cap + 1);
  for (int n = 0; n <= diag->cap; ++n) {
    f.map[n].resize(diag->size(n));
    for (int c = 0; c < diag->size(n); ++c) {
      int gi = static_cast<int>(diag->cells[n][c][0]);
      Grid g = decode_grid(n, n, grids->cells[n][n][gi]);
      Key chain;
      if (n == 0)
        chain = {g.ob(0, 0)};
      else
        for (int i = 0; i < n; ++i)
          chain.push_back(e->compose(g.ver(i, i + 1), g.hor(i, i)));
      int idx = total_nerve->index_of(n, chain);
      assert(idx >= 0);
      f.map[n][c] = idx;
    }
  }
  validate_smap(f);
  return f;
}

SMap kbar_map(BiPtr grids, SSPtr codiag, SSPtr total_nerve, CatPtr e) {
  SMap f;
  f.name = "kbar";
  f.src = codiag;
  f.dst = total_nerve;
  f.map.resize(codiag->cap + 1);
  for (int n = 0; n <= codiag->cap; ++n) {
    f.map[n].resize(codiag->size(n));
    for (int c = 0; c < codiag->size(n); ++c) {
      const Key& tuple = codiag->cells[n][c];
      Key chain;
      if (n == 0) {
        Grid g = decode_grid(0, 0, grids->cells[0][0][static_cast<int>(tuple[0])]);
        chain = {g.ob(0, 0)};
      } else {
        std::vector<Grid> xs;
        for (int r = 0; r <= n; ++r)
          xs.push_back(decode_grid(
              r, n - r, grids->cells[r][n - r][static_cast<int>(tuple[r])]));
        for (int i = 0; i < n; ++i)
          chain.push_back(e->compose(xs[i + 1].ver(i, 0), xs[i].hor(i, 0)));
      }
      int idx = total_nerve->index_of(n, chain);
      assert(idx >= 0);
      f.map[n][c] = idx;
    }
  }
  validate_smap(f);
  return f;
}

Staircase tuple_to_staircase(BiPtr grids, const Key& tuple, int n) {
  assert(static_cast<int>(tuple.size()) == n + 1);
  Staircase t;
  t.n = n;
  t.obj.assign((n + 1) * (n + 1), -1);
  t.vert.assign(n * (n + 1), -1);
  t.horiz.assign((n + 1) * n, -1);
  auto put = [](std::vector<int>& tab, int slot, int v) {
    require(tab[slot] < 0 || tab[slot] == v, "ValidationError",
            "staircase components disagree on an overlap");
    tab[slot] = v;
  };
  for (int r = 0; r <= n; ++r) {
    Grid g =
        decode_grid(r, n - r, grids->cells[r][n - r][static_cast<int>(tuple[r])]);
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j <= n - r; ++j)
        put(t.obj, i * (n + 1) + (r + j), g.ob(i, j));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j <= n - r; ++j)
        put(t.vert, i * (n + 1) + (r + j), g.ver(i, j));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < n - r; ++j)
        put(t.horiz, i * n + (r + j), g.hor(i, j));
  }
  return t;
}

Key staircase_to_tuple(BiPtr grids, const Staircase& t) {
  Key tuple;
  for (int r = 0; r <= t.n; ++r) {
    Grid g;
    g.m = r;
    g.n = t.n - r;
    g.obj.resize((r + 1) * (g.n + 1));
    g.vert.resize(r * (g.n + 1));
    g.horiz.resize((r + 1) * g.n);
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j <= g.n; ++j) g.obj[i * (g.n + 1) + j] = t.ob(i, r + j);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j <= g.n; ++j) g.vert[i * (g.n + 1) + j] = t.ver(i, r + j);
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < g.n; ++j) g.horiz[i * g.n + j] = t.hor(i, r + j);
    int idx = grids->index_of(r, t.n - r, encode_grid(g));
    require(idx >= 0, "ValidationError",
            "staircase component is not a stored grid");
    tuple.push_back(idx);
  }
  return tuple;
}

static BiMap grid_bimap(const Functor& u, BiPtr src, BiPtr dst,
                        const std::string& name) {
  BiMap f;
  f.name = name;
  f.src = src;
  f.dst = dst;
  f.map.resize(src->mcap + 1);
  for (int m = 0; m <= src->mcap; ++m) {
    f.map[m].resize(src->ncap + 1);
    for (int n = 0; n <= src->ncap; ++n) {
      f.map[m][n].resize(src->size(m, n));
      for (int c = 0; c < src->size(m, n); ++c) {
        Grid g = decode_grid(m, n, src->cells[m][n][c]);
        for (int& o : g.obj) o = u.ob[o];
        for (int& a : g.vert) a = u.fl[a];
        for (int& a : g.horiz) a = u.fl[a];
        int idx = dst->index_of(m, n, encode_grid(g));
        require(idx >= 0, "ValidationError",
                "map " + name + ": the image of a grid at (" +
                    std::to_string(m) + "," + std::to_string(n) +
                    ") is not a cell of " + dst->name);
        f.map[m][n][c] = idx;
      }
    }
  }
  validate_bimap(f);
  return f;
}

BiMap fibred_nerve_map(const Functor& u, const FibredNerve& src,
                       const FibredNerve& dst) {
  return grid_bimap(u, src.bis, dst.bis, "Nf(" + u.name + ")");
}

BiMap cleaved_nerve_map(const Functor& u, const CleavedNerve& src,
                        const CleavedNerve& dst) {
  return grid_bimap(u, src.bis, dst.bis, "Nc(" + u.name + ")");
}

SMap diagonal_map(const BiMap& f, SSPtr src_diag, SSPtr dst_diag) {
  SMap r;
  r.name = "d(" + f.name + ")";
  r.src = src_diag;
  r.dst = dst_diag;
  r.map.resize(src_diag->cap + 1);
  for (int n = 0; n <= src_diag->cap; ++n) {
    r.map[n].resize(src_diag->size(n));
    for (int c = 0; c < src_diag->size(n); ++c)
      r.map[n][c] = f.at(n, n, static_cast<int>(src_diag->cells[n][c][0]));
  }
  validate_smap(r);
  return r;
}

// ---------------------------------------------------- structural matchings

HcComparison cleaved_to_hc(const DiagramOfCategories& z, int cap) {
  HcComparison out;
  out.gro = grothendieck(z);
  out.cn = cleaved_nerve(out.gro.distinguished, cap);
  out.nerves = nerve_diagram(z, cap);
  out.h = hc(out.nerves, cap);
  const FiniteCategory& b = *z.base;
  BiMap f;
  f.name = "hc-match";
  f.src = out.cn.bis;
  f.dst = out.h.bis;
  f.map.resize(cap + 1);
  for (int m = 0; m <= cap; ++m) {
    f.map[m].resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
      f.map[m][n].resize(out.cn.bis->size(m, n));
      for (int c = 0; c < out.cn.bis->size(m, n); ++c) {
        Grid g = decode_grid(m, n, out.cn.bis->cells[m][n][c]);
        Key bk = base_key(out.gro.projection, g);
        int bc = out.h.base_nerve->index_of(n, bk);
        assert(bc >= 0);
        int b0 = n == 0 ? static_cast<int>(bk[0])
                        : b.src[static_cast<int>(bk[0])];
        Key zk;
        if (m == 0)
          zk = {out.gro.object_data[g.ob(0, 0)].first};
        else
          for (int i = 0; i < m; ++i)
            zk.push_back(out.gro.arrow_data[g.ver(i, 0)].f);
        int zc = out.nerves.value[b0]->index_of(m, zk);
        assert(zc >= 0);
        int idx = out.h.bis->index_of(m, n, {bc, zc});
        assert(idx >= 0);
        f.map[m][n][c] = idx;
      }
    }
  }
  validate_bimap(f);
  require(is_level_bijection(f), "ValidationError",
          "hc-match is not a levelwise bijection");
  out.iso = f;
  return out;
}

TcpComparison cleaved_to_tcp(const CatGroupAction& a, int cap) {
  validate_action(a);
  TcpComparison out;
  DiagramOfCategories z = action_diagram(a);
  out.gro = grothendieck(z);
  out.cn = cleaved_nerve(out.gro.distinguished, cap);
  out.diag = diagonal(out.cn.bis);
  out.act = nerve_action(a, cap);
  out.tw = canonical_twisting(a.group, nerve(a.group, cap));
  out.tcp = twisted_cartesian_product(out.act, out.tw);
  SMap f;
  f.name = "tcp-match";
  f.src = out.diag;
  f.dst = out.tcp;
  f.map.resize(out.diag->cap + 1);
  for (int n = 0; n <= out.diag->cap; ++n) {
    f.map[n].resize(out.diag->size(n));
    for (int c = 0; c < out.diag->size(n); ++c) {
      int gi = static_cast<int>(out.diag->cells[n][c][0]);
      Grid g = decode_grid(n, n, out.cn.bis->cells[n][n][gi]);
      Key ak;
      if (n == 0)
        ak = {out.gro.object_data[g.ob(0, 0)].first};
      else
        for (int i = 0; i < n; ++i)
          ak.push_back(out.gro.arrow_data[g.ver(i, 0)].f);
      int ai = out.act.space->index_of(n, ak);
      assert(ai >= 0);
      int bi = out.tw.base->index_of(n, base_key(out.gro.projection, g));
      assert(bi >= 0);
      int idx = out.tcp->index_of(n, {ai, bi});
      assert(idx >= 0);
      f.map[n][c] = idx;
    }
  }
  validate_smap(f);
  require(is_level_bijection(f), "ValidationError",
          "tcp-match is not a levelwise bijection");
  out.iso = f;
  return out;
}

} // namespace cleave
