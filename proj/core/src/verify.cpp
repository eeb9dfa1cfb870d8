#include "cleave/verify.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/nerves.hpp"
#include "cleave/quillen.hpp"
#include "cleave/spectral.hpp"

namespace cleave {

namespace {

struct Ctx {
  CheckResult res;

  void line(const std::string& s) { res.detail.push_back(s); }
  void check(bool ok, const std::string& what) {
    if (!ok) {
      res.pass = false;
      res.detail.push_back("FAIL: " + what);
    }
  }
};

std::string sizes_of(const SSPtr& x, int cap) {
  std::string out;
  for (int n = 0; n <= cap; ++n)
    out += (n ? "/" : "") + std::to_string(x->size(n));
  return out;
}

bool smaps_equal(const SMap& f, const SMap& g, int cap) {
  for (int n = 0; n <= cap; ++n)
    if (f.map[n] != g.map[n]) return false;
  return true;
}

bool smap_is_identity(const SMap& f, int cap) {
  if (f.src != f.dst) return false;
  for (int n = 0; n <= cap; ++n)
    for (int c = 0; c < f.src->size(n); ++c)
      if (f.at(n, c) != c) return false;
  return true;
}

bool bimap_is_bijection(const BiMap& f) {
  for (int m = 0; m < static_cast<int>(f.map.size()); ++m)
    for (int n = 0; n < static_cast<int>(f.map[m].size()); ++n) {
      if (f.src->size(m, n) != f.dst->size(m, n)) return false;
      std::vector<char> hit(f.map[m][n].size(), 0);
      for (int v : f.map[m][n]) {
        if (v < 0 || v >= static_cast<int>(hit.size()) || hit[v]) return false;
        hit[v] = 1;
      }
    }
  return true;
}

// --- the codiagonal is the total nerve, for splitting fibrations ---------
CheckResult check_codiag3() {
  Ctx t;
  t.res.name = "codiag3";
  const Corpus& cp = builtin_corpus();
  const int cap = 3;

  std::vector<std::pair<std::string, const Cleavage*>> fixtures = {
      {"stair", &cp.cleavage.at("stair")},
      {"id2", &cp.cleavage.at("id2")},
      {"cod2", &cp.cleavage.at("cod2")},
      {"gro-f1", &cp.gro.at("gro-f1").distinguished},
      {"gro-constcirc", &cp.gro.at("gro-constcirc").distinguished},
      {"gro-fcirc", &cp.gro.at("gro-fcirc").distinguished},
  };
  for (const auto& [name, c] : fixtures) {
    t.check(is_closed(*c), name + " cleavage is closed (splitting)");
    CatPtr e = c->cert->p.dom;
    CleavedNerve cn = cleaved_nerve(*c, cap);
    SSPtr cod = codiagonal(cn.bis);
    SSPtr diag = diagonal(cn.bis);
    SSPtr ne = nerve(e, cap);
    SMap kb = kbar_map(cn.bis, cod, ne, e);
    validate_smap(kb);
    t.check(is_level_bijection(kb),
            name + ": codiagonal -> total nerve is a levelwise bijection");
    SMap k = k_map(cn.bis, diag, ne, e);
    SMap th = theta(cn.bis, diag, cod);
    validate_smap(k);
    validate_smap(th);
    t.check(smaps_equal(compose(kb, th), k, cap),
            name + ": kbar ∘ theta = k");
    t.line(name + ": levels " + sizes_of(cod, cap) + " in bijection, operators commute");
  }
  return t.res;
}

// --- cleaved nerve of a Grothendieck construction vs hc ------------------
CheckResult check_hc() {
  Ctx t;
  t.res.name = "hc";
  const Corpus& cp = builtin_corpus();
  const int cap = 3;
  for (const char* name : {"f1", "f2", "fcirc", "fdisc", "constcirc"}) {
    HcComparison h = cleaved_to_hc(cp.diagram.at(name), cap);
    validate_bimap(h.iso);
    t.check(bimap_is_bijection(h.iso),
            std::string(name) + ": cleaved nerve ≅ hc levelwise");
    std::string row;
    for (int m = 0; m <= cap; ++m)
      row += (m ? " " : "") + std::to_string(h.iso.src->size(m, m));
    t.line(std::string(name) + ": diagonal sizes " + row + ", all (m,n) <= (3,3) agree");
  }
  return t.res;
}

// --- group actions: diagonal of the cleaved nerve vs twisted product -----
CheckResult check_tcp() {
  Ctx t;
  t.res.name = "tcp";
  const Corpus& cp = builtin_corpus();
  const int cap = 3;
  for (const char* name : {"fcirc", "fdisc"}) {
    TcpComparison c = cleaved_to_tcp(cp.action.at(name), cap);
    validate_smap(c.iso);
    t.check(is_level_bijection(c.iso),
            std::string(name) + ": diagonal ≅ twisted product levelwise");

    // the twisted face: d0(a, b) = (tau(b)·d0 a, d0 b); others untwisted
    for (int n = 1; n <= cap; ++n)
      for (int cell = 0; cell < c.tcp->size(n); ++cell) {
        const Key& key = c.tcp->cells[n][cell];
        int a = static_cast<int>(key[0]), b = static_cast<int>(key[1]);
        int g = c.tw.tau[n][b];
        int a0 = c.act.act[g][n - 1][c.act.space->d(n, 0, a)];
        int b0 = c.tw.base->d(n, 0, b);
        int want = c.tcp->index_of(n - 1, {a0, b0});
        t.check(c.tcp->d(n, 0, cell) == want,
                std::string(name) + ": twisted d0 formula at level " +
                    std::to_string(n));
        for (int i = 1; i <= n; ++i) {
          int wi = c.tcp->index_of(
              n - 1, {static_cast<long long>(c.act.space->d(n, i, a)),
                      static_cast<long long>(c.tw.base->d(n, i, b))});
          t.check(c.tcp->d(n, i, cell) == wi,
                  std::string(name) + ": untwisted face " + std::to_string(i));
        }
      }
    t.line(std::string(name) + ": levels " + sizes_of(c.tcp, cap) +
           " in bijection, twisted d0 verified");
  }
  return t.res;
}

// --- the non-closed cleavage whose cleaved nerve has extra H1 ------------
CheckResult check_counterexample() {
  Ctx t;
  t.res.name = "counterexample";
  const Corpus& cp = builtin_corpus();
  const Cleavage& bad = cp.cleavage.at("loop3-bad");

  CleavedNerve cn = cleaved_nerve(bad, 3);
  AbelianGroup h1c = homology(normalized_chain_complex(diagonal(cn.bis)).cx, 1);
  FibredNerve nf = fibred_nerve(bad.cert, 2);
  AbelianGroup h1f = homology(normalized_chain_complex(diagonal(nf.bis)).cx, 1);
  AbelianGroup h1e = homology(normalized_chain_complex(nerve(bad.cert->p.dom, 3)).cx, 1);

  AbelianGroup z, zero;
  z.free_rank = 1;
  t.check(h1c == z, "H1 of the cleaved diagonal is Z");
  t.check(h1f == zero, "H1 of the fibred diagonal vanishes");
  t.check(h1e == zero, "H1 of the total nerve vanishes");
  t.check(!(h1c == h1f), "the inclusion cannot be a homology isomorphism");
  t.line("cleaved H1 = " + h1c.to_string() + " (cap 3), fibred H1 = " +
         h1f.to_string() + " (cap 2), total nerve H1 = " + h1e.to_string());
  t.line("lifts 0->1, 0->3, 1->2 chosen: not closed, cleaved nerve keeps a loop");
  return t.res;
}

// --- diagonal comparison maps are homology isomorphisms ------------------
CheckResult check_comparison() {
  Ctx t;
  t.res.name = "comparison";
  const Corpus& cp = builtin_corpus();
  const int deg = 3, cap = deg + 1;

  std::vector<std::pair<std::string, const Cleavage*>> fixtures = {
      {"stair", &cp.cleavage.at("stair")},
      {"cod2", &cp.cleavage.at("cod2")},
      {"prodcirc", &cp.cleavage.at("prodcirc")},
      {"prodord", &cp.cleavage.at("prodord")},
      {"id2", &cp.cleavage.at("id2")},
      {"gro-f1", &cp.gro.at("gro-f1").distinguished},
      {"gro-fcirc", &cp.gro.at("gro-fcirc").distinguished},
  };
  for (const auto& [name, c] : fixtures) {
    CatPtr e = c->cert->p.dom;
    FibredNerve nf = fibred_nerve(c->cert, cap);
    SSPtr diagf = diagonal(nf.bis);
    SSPtr ne = nerve(e, cap);
    SMap k = k_map(nf.bis, diagf, ne, e);
    t.check(map_is_homology_iso(k, deg),
            name + ": k is a homology iso in degrees 0.." + std::to_string(deg));

    CleavedNerve cn = cleaved_nerve(*c, cap);
    BiMap inc = cleaved_inclusion(cn, nf);
    SSPtr diagc = diagonal(cn.bis);
    SMap di = diagonal_map(inc, diagc, diagf);
    SMap ki = compose(k, di);
    t.check(map_is_homology_iso(ki, deg),
            name + ": k∘i is a homology iso in degrees 0.." + std::to_string(deg));
    t.line(name + ": k and k∘i are isos in degrees 0..3 (caps " +
           std::to_string(cap) + ")");
  }
  return t.res;
}

// --- masts: sections, injectivity, and slice homology --------------------
CheckResult check_mast() {
  Ctx t;
  t.res.name = "mast";
  const Corpus& cp = builtin_corpus();

  std::vector<std::pair<std::string, int>> fixtures = {
      {"stair", 3}, {"cod2", 3}, {"prodcirc", 3}, {"loop3-s1", 2}, {"loop3-bad", 2},
  };
  int pairs = 0;
  for (const auto& [name, cap] : fixtures) {
    const Cleavage& c = cp.cleavage.at(name);
    FibredNerve nf = fibred_nerve(c.cert, cap);
    for (int n = 0; n <= cap; ++n)
      for (int chain = 0; chain < nf.base_nerve->size(n); ++chain) {
        BaseSlice sl = base_slice(nf, n, chain);
        SMap m = mu(nf, sl);
        SMap s = nu(c, nf, sl);
        validate_smap(m);
        validate_smap(s);
        t.check(smap_is_identity(compose(m, s), cap),
                name + ": mu ∘ nu = id on slice (" + std::to_string(n) + "," +
                    std::to_string(chain) + ")");
        t.check(map_is_homology_iso(m, cap - 1),
                name + ": mu is a homology iso on slice (" + std::to_string(n) +
                    "," + std::to_string(chain) + ")");
        ++pairs;
      }

    // (base, mast) determines a cleaved simplex; for closed cleavages the
    // pairs are exactly hit
    CleavedNerve cn = cleaved_nerve(c, cap);
    bool closed = is_closed(c);
    for (int m = 0; m <= cap; ++m)
      for (int n = 0; n <= cap; ++n) {
        std::set<std::pair<Key, Key>> seen;
        long long expected = 0;
        for (int chain = 0; chain < cn.base_nerve->size(n); ++chain) {
          const Key& bk = cn.base_nerve->cells[n][chain];
          int b0 = n == 0 ? static_cast<int>(bk[0])
                          : c.cert->base().src[static_cast<int>(bk[0])];
          expected += cn.fiber_nerve[b0]->size(m);
        }
        for (int cell = 0; cell < cn.bis->size(m, n); ++cell) {
          Grid g = decode_grid(m, n, cn.bis->cells[m][n][cell]);
          int b0 = c.cert->p.ob[g.ob(0, 0)];
          auto key = std::make_pair(base_key(c.cert->p, g), mast_key(g, cn.fiber[b0]));
          t.check(seen.insert(key).second,
                  name + ": (base, mast) repeats at (" + std::to_string(m) + "," +
                      std::to_string(n) + ")");
        }
        if (closed)
          t.check(static_cast<long long>(cn.bis->size(m, n)) == expected,
                  name + ": closed cleavage misses a (base, mast) pair at (" +
                      std::to_string(m) + "," + std::to_string(n) + ")");
      }
    t.line(name + ": cap " + std::to_string(cap) + ", " +
           (closed ? "closed, (base,mast) bijective" : "not closed, (base,mast) injective"));
  }
  t.line("slices checked: " + std::to_string(pairs));
  t.check(pairs >= 10, "at least 10 (fibration, base chain) pairs");
  return t.res;
}

// --- cleavages vs good maps ----------------------------------------------
CheckResult check_goodmaps() {
  Ctx t;
  t.res.name = "goodmaps";
  const Corpus& cp = builtin_corpus();

  std::vector<std::pair<std::string, size_t>> fixtures = {
      {"loop3", 4}, {"stair", 1}};
  for (const auto& [name, count] : fixtures) {
    CertPtr cert = cp.cert.at(name);
    MappingCategory mc = mapping_category(cert->p);
    std::vector<Cleavage> all = enumerate_cleavages(cert, 100);
    t.check(all.size() == count, name + ": expected " + std::to_string(count) +
                                     " normal cleavages, found " +
                                     std::to_string(all.size()));
    int very_good = 0;
    for (const Cleavage& c : all) {
      Functor s = good_map_from_cleavage(c, mc);
      GoodMapCheck gm = check_good_map(s, mc, cert);
      t.check(gm.good, name + ": induced section is a good map");
      Cleavage back = cleavage_from_good_map(s, mc, cert, c.name);
      t.check(back.lift == c.lift, name + ": good map round-trips to the same cleavage");
      bool vg = is_very_good(s, mc, c);
      t.check(vg == is_closed(c),
              name + ": very good section ⇔ closed cleavage (" + c.name + ")");
      very_good += vg;
    }
    t.line(name + ": " + std::to_string(all.size()) + " normal cleavages, " +
           std::to_string(very_good) + " closed/very good, all round-trip");
  }
  return t.res;
}

// --- the spectral sequence of the base-degree filtration -----------------
CheckResult check_spectral() {
  Ctx t;
  t.res.name = "spectral";
  const Corpus& cp = builtin_corpus();
  const int cap = 4;

  std::vector<std::pair<std::string, const Cleavage*>> fixtures = {
      {"prodcirc", &cp.cleavage.at("prodcirc")},
      {"gro-fcirc", &cp.gro.at("gro-fcirc").distinguished},
  };
  for (const auto& [name, c] : fixtures) {
    FibredNerve nf = fibred_nerve(c->cert, cap);
    Bicomplex bc = fibration_bicomplex(nf);
    bc.validate();

    for (const char* cname : {"F2", "Q"}) {
      Coeff k = parse_coeff(cname);
      SpectralSequence ss = spectral_sequence(bc, k, cap + 2);
      const SpectralPage& e2 = ss.pages[1];

      // (a) E² against the independently computed H_n(B, H_m(F) ⊗ k)
      for (int m = 0; m + 0 <= 3; ++m) {
        FieldModule fm = field_fiber_module(*c, m, cap, k);
        std::vector<long long> hn = field_module_homology(fm, cap);
        for (int n = 0; m + n <= 3; ++n)
          t.check(e2.dim[m][n] == hn[n],
                  name + " over " + cname + ": E2(" + std::to_string(m) + "," +
                      std::to_string(n) + ") = " + std::to_string(e2.dim[m][n]) +
                      " vs module side " + std::to_string(hn[n]));
      }
      // (b) E∞ totals against the total complex
      for (int d = 0; d <= 3; ++d)
        t.check(ss.einf_total[d] == ss.tot_dim[d],
                name + " over " + cname + ": E∞ total degree " + std::to_string(d));
      std::string row;
      for (int d = 0; d <= 3; ++d) row += (d ? " " : "") + std::to_string(ss.tot_dim[d]);
      t.line(name + " over " + cname + ": E2 = module side for m+n <= 3, E∞ totals " +
             row + ", stable at r=" + std::to_string(ss.stable_at));
    }

    // (c) integral E² against coefficient homology of the fiber module
    for (int m = 0; m <= 3; ++m) {
      CatModule fm = fiber_homology_module(*c, m, cap);
      for (int n = 0; m + n <= 3; ++n) {
        AbelianGroup a = integral_e2(bc, m, n);
        AbelianGroup b = coefficient_homology(fm, cap, n);
        t.check(a == b, name + ": integral E2(" + std::to_string(m) + "," +
                            std::to_string(n) + ") " + a.to_string() + " vs " +
                            b.to_string());
      }
    }
    t.line(name + ": integral E2 matches the fiber-homology module for m+n <= 3");
  }
  return t.res;
}

// --- projections with homologically trivial fibers -----------------------
CheckResult check_acyclic() {
  Ctx t;
  t.res.name = "acyclic";
  const Corpus& cp = builtin_corpus();
  const int deg = 3, cap = deg + 1;

  AbelianGroup z, zero;
  z.free_rank = 1;
  auto point_homology = [&](CatPtr cat, const std::string& what) {
    PresentedComplex cx = normalized_chain_complex(nerve(cat, cap)).cx;
    bool ok = homology(cx, 0) == z;
    for (int n = 1; n <= deg; ++n) ok = ok && homology(cx, n) == zero;
    t.check(ok, what + " has point homology in degrees 0..3");
    return ok;
  };

  std::vector<std::pair<std::string, CertPtr>> fibrations = {
      {"cod2", cp.cert.at("cod2")},
      {"gro-f1", cp.gro.at("gro-f1").cert},
      {"prodord", cp.cert.at("prodord")},
      {"stair", cp.cert.at("stair")},
      {"id2", cp.cert.at("id2")},
  };
  for (const auto& [name, cert] : fibrations) {
    for (int b = 0; b < cert->base().objects(); ++b)
      point_homology(fiber(cert->p, b).cat,
                     name + ": fiber over " + cert->base().object_name[b]);
    SMap pn = nerve_map(cert->p, nerve(cert->p.dom, cap), nerve(cert->p.cod, cap));
    t.check(map_is_homology_iso(pn, deg),
            name + ": projection is a homology iso in degrees 0..3");
    t.line(name + ": trivial fibers, projection iso in degrees 0..3");
  }

  for (const char* name : {"walk", "collapse"}) {
    const Functor& u = cp.functor.at(name);
    MappingCategory mc = mapping_category(u);
    t.check(functors_equal(compose(mc.pi, mc.i), u),
            std::string(name) + ": pi ∘ i = u");
    CertPtr cert = certify_fibration(mc.pi);
    t.check(cert->is_fibration(), std::string(name) + ": pi is a fibration");
    for (int b = 0; b < cert->base().objects(); ++b)
      point_homology(fiber(mc.pi, b).cat,
                     std::string(name) + ": homotopy fiber over " +
                         cert->base().object_name[b]);
    SMap pn = nerve_map(mc.pi, nerve(mc.cat, cap), nerve(u.cod, cap));
    SMap in = nerve_map(mc.i, nerve(u.dom, cap), nerve(mc.cat, cap));
    SMap un = nerve_map(u, nerve(u.dom, cap), nerve(u.cod, cap));
    t.check(map_is_homology_iso(pn, deg), std::string(name) + ": pi_* iso");
    t.check(map_is_homology_iso(in, deg), std::string(name) + ": i_* iso");
    t.check(map_is_homology_iso(un, deg), std::string(name) + ": u_* iso");
    t.line(std::string(name) + ": u = pi ∘ i, trivial homotopy fibers, u_* iso in degrees 0..3");
  }
  return t.res;
}

// --- the classical two-element group value -------------------------------
CheckResult check_group() {
  Ctx t;
  t.res.name = "group";
  const Corpus& cp = builtin_corpus();
  auto start = std::chrono::steady_clock::now();

  PresentedComplex cx = normalized_chain_complex(nerve(cp.category.at("z2"), 4)).cx;
  AbelianGroup z, z2t, zero;
  z.free_rank = 1;
  z2t.torsion = {2};
  const AbelianGroup want[4] = {z, z2t, zero, z2t};
  for (int n = 0; n <= 3; ++n) {
    AbelianGroup h = homology(cx, n);
    t.check(h == want[n], "H" + std::to_string(n) + " = " + want[n].to_string() +
                              ", got " + h.to_string());
    t.line("H" + std::to_string(n) + " = " + h.to_string() +
           " (guaranteed: degree <= 3 at cap 4)");
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  t.check(ms < 5000, "under five seconds");
  t.line("computed within the five-second budget");
  return t.res;
}

// --- homology-level fibration criterion ----------------------------------
CheckResult check_quillen() {
  Ctx t;
  t.res.name = "quillen";
  const Corpus& cp = builtin_corpus();
  Coeff coeffs[3] = {parse_coeff("Z"), parse_coeff("Q"), parse_coeff("F2")};

  std::vector<std::pair<std::string, const Cleavage*>> good = {
      {"prodcirc", &cp.cleavage.at("prodcirc")},
      {"stair", &cp.cleavage.at("stair")},
      {"cod2", &cp.cleavage.at("cod2")},
      {"gro-fcirc", &cp.gro.at("gro-fcirc").distinguished},
  };
  for (const auto& [name, c] : good) {
    for (const Coeff& k : coeffs) {
      QuillenReport r = is_quillen_fibration_homology(*c, 2, k);
      t.check(r.ok, name + " over " + k.to_string() + ": base changes are H-isos");
    }
    t.line(name + ": every base change an iso on fiber homology (degrees <= 2, Z/Q/F2)");
  }

  const Cleavage& bad = cp.gro.at("gro-f2").distinguished;
  const FiniteCategory& b = bad.cert->base();
  for (const Coeff& k : coeffs) {
    QuillenReport r = is_quillen_fibration_homology(bad, 2, k);
    t.check(!r.ok, "gro-f2 over " + k.to_string() + " is not an H-fibration");
    for (const auto& v : r.arrows) {
      if (b.is_identity(v.phi)) {
        t.check(v.ok, "identity base change is an iso");
      } else {
        t.check(!v.ok && v.fail_degree == 1,
                "circle-collapsing base change fails exactly at H1");
      }
    }
  }
  t.line("gro-f2: collapsing the circle fiber fails at H1 over Z, Q, F2");
  return t.res;
}

// --- structural law suites ------------------------------------------------
CheckResult check_laws() {
  Ctx t;
  t.res.name = "laws";
  const Corpus& cp = builtin_corpus();

  // simplicial identities and boundary laws on assorted complexes
  std::vector<std::pair<std::string, SSPtr>> ssets;
  ssets.emplace_back("nerve(ord2)", nerve(cp.category.at("[2]"), 3));
  ssets.emplace_back("nerve(circ)", nerve(cp.category.at("circ"), 3));
  ssets.emplace_back("nerve(z2)", nerve(cp.category.at("z2"), 3));
  ssets.emplace_back("nerve(loop3)", nerve(cp.category.at("loop3"), 2));
  ssets.emplace_back("product", sset_product(nerve(cp.category.at("circ"), 3),
                                             nerve(cp.category.at("[1]"), 3)));
  {
    CleavedNerve cn = cleaved_nerve(cp.cleavage.at("stair"), 3);
    ssets.emplace_back("diag(stair)", diagonal(cn.bis));
    ssets.emplace_back("codiag(stair)", codiagonal(cn.bis));
  }
  ssets.emplace_back("tcp(fcirc)", cleaved_to_tcp(cp.action.at("fcirc"), 3).tcp);
  for (const auto& [name, x] : ssets) {
    auto bad = x->check();
    t.check(!bad.has_value(), name + ": simplicial identities (" +
                                  bad.value_or("") + ")");
    bool dd = true;
    try {
      normalized_chain_complex(x).cx.validate();
    } catch (const Error&) {
      dd = false;
    }
    t.check(dd, name + ": boundary squares to zero");
  }
  t.line(std::to_string(ssets.size()) + " simplicial sets: identities + ∂² = 0");

  // exact integer Smith forms on random matrices
  std::mt19937 rng(20240817u);
  std::uniform_int_distribution<int> dim(1, 12), ent(-9, 9);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    IntMat a(dim(rng), dim(rng));
    for (auto& v : a.a) v = ent(rng);
    SmithForm f = smith_normal_form(a);
    t.check(mul(mul(f.u, a), f.v) == f.s, "smith: u·a·v = s");
    IntMat uid = mul(f.u, f.uinv);
    t.check(uid == IntMat::identity(a.rows), "smith: u·uinv = 1");
    bool diag_ok = static_cast<int>(f.diag.size()) == f.rank;
    for (size_t j = 0; j + 1 < f.diag.size(); ++j)
      diag_ok = diag_ok && f.diag[j] > 0 && f.diag[j + 1] % f.diag[j] == 0;
    for (int r = 0; r < f.s.rows; ++r)
      for (int c = 0; c < f.s.cols; ++c)
        diag_ok = diag_ok && (r == c || f.s.at(r, c) == 0);
    t.check(diag_ok, "smith: positive divisibility chain, off-diagonal zero");
    ++checked;
  }
  t.line(std::to_string(checked) + " random matrices: Smith postconditions exact");

  // bisimplicial identities + H(total) = H(diagonal) to degree 3
  std::vector<std::pair<std::string, BiPtr>> bisets;
  auto add_nf = [&](const std::string& n, const CertPtr& cert, int cap) {
    bisets.emplace_back(n + ".fibred", fibred_nerve(cert, cap).bis);
  };
  auto add_cn = [&](const std::string& n, const Cleavage& c, int cap) {
    bisets.emplace_back(n + ".cleaved", cleaved_nerve(c, cap).bis);
  };
  add_nf("stair", cp.cert.at("stair"), 4);
  add_cn("stair", cp.cleavage.at("stair"), 4);
  add_nf("prodcirc", cp.cert.at("prodcirc"), 4);
  add_nf("prodord", cp.cert.at("prodord"), 4);
  add_nf("id2", cp.cert.at("id2"), 4);
  add_cn("gro-f1", cp.gro.at("gro-f1").distinguished, 4);
  add_nf("gro-fcirc", cp.gro.at("gro-fcirc").cert, 4);
  add_cn("gro-fcirc", cp.gro.at("gro-fcirc").distinguished, 4);
  add_cn("gro-fdisc", cp.gro.at("gro-fdisc").distinguished, 4);
  add_cn("loop3-bad", cp.cleavage.at("loop3-bad"), 4);
  bisets.emplace_back("hc(f1)", hc(nerve_diagram(cp.diagram.at("f1"), 4), 4).bis);
  bisets.emplace_back("hc(fcirc)", hc(nerve_diagram(cp.diagram.at("fcirc"), 4), 4).bis);
  for (const auto& [name, x] : bisets) {
    auto bad = x->check();
    t.check(!bad.has_value(), name + ": bisimplicial identities (" +
                                  bad.value_or("") + ")");
    Bicomplex bc = bicomplex_from(x);
    bc.validate();
    t.check(eilenberg_zilber_check(x, 3),
            name + ": H(total) = H(diagonal) in degrees 0..3");
  }
  t.line(std::to_string(bisets.size()) +
         " bisimplicial sets: identities, bicomplex laws, H(Tot) = H(diag) to degree 3");
  return t.res;
}

using CheckFn = CheckResult (*)();

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> reg = {
      {"acyclic", check_acyclic},
      {"codiag3", check_codiag3},
      {"comparison", check_comparison},
      {"counterexample", check_counterexample},
      {"goodmaps", check_goodmaps},
      {"group", check_group},
      {"hc", check_hc},
      {"laws", check_laws},
      {"mast", check_mast},
      {"quillen", check_quillen},
      {"spectral", check_spectral},
      {"tcp", check_tcp},
  };
  return reg;
}

CheckResult run_one(CheckFn fn, const std::string& name) {
  try {
    return fn();
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = name;
    r.pass = false;
    r.detail.push_back(std::string("ERROR: ") + e.what());
    return r;
  }
}

} // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<CheckResult> run_verify(const std::vector<std::string>& only,
                                    bool concurrent) {
  const auto& reg = registry();
  std::vector<std::string> names = only.empty() ? verify_check_names() : only;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names)
    require(reg.count(n) > 0, "UnknownName", "no check named '" + n + "'");

  std::vector<CheckResult> out(names.size());
  if (concurrent && names.size() > 1) {
    // the corpus is shared and immutable; checks are independent
    builtin_corpus();
    std::vector<std::future<CheckResult>> fut;
    fut.reserve(names.size());
    for (const auto& n : names)
      fut.push_back(std::async(std::launch::async, run_one, reg.at(n), n));
    for (size_t i = 0; i < fut.size(); ++i) out[i] = fut[i].get();
  } else {
    for (size_t i = 0; i < names.size(); ++i) out[i] = run_one(reg.at(names[i]), names[i]);
  }
  return out;
}

}  // namespace cleave
