#include "cleave/fibration.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "cleave/error.hpp"

namespace cleave {

std::vector<int> lift_fillers(const Functor& p, int via, int g, int psi) {
  const FiniteCategory& e = *p.dom;
  std::vector<int> out;
  for (int h = 0; h < e.arrows(); ++h) {
    if (e.src[h] != e.dst[via] || e.dst[h] != e.dst[g]) continue;
    if (p.fl[h] != psi) continue;
    if (e.compose(h, via) == g) out.push_back(h);
  }
  return out;
}

CartesianCheck check_cartesian(const Functor& p, int f) {
  const FiniteCategory& e = *p.dom;
  const FiniteCategory& b = *p.cod;
  int phi = p.fl[f];
  CartesianCheck out;
  for (int g = 0; g < e.arrows(); ++g) {
    if (e.src[g] != e.src[f]) continue;
    int pg = p.fl[g];
    for (int psi = 0; psi < b.arrows(); ++psi) {
      if (!b.composable(psi, phi) || b.compose(psi, phi) != pg) continue;
      int count = static_cast<int>(lift_fillers(p, f, g, psi).size());
      if (count == 1) continue;
      out.strongly = false;
      if (b.is_identity(psi) && out.cartesian) {
        out.cartesian = false;
        out.g = g;
        out.psi = psi;
        out.count = count;
      } else if (out.g == -1) {
        out.g = g;
        out.psi = psi;
        out.count = count;
      }
    }
  }
  return out;
}

bool is_cartesian(const Functor& p, int f) { return check_cartesian(p, f).cartesian; }

bool is_strongly_cartesian(const Functor& p, int f) {
  return check_cartesian(p, f).strongly;
}

CertPtr certify_fibration(const Functor& p) {
  validate_functor(p);
  const FiniteCategory& e = *p.dom;
  const FiniteCategory& b = *p.cod;

  auto cert = std::make_shared<FibrationCertificate>();
  cert->p = p;
  cert->cartesian.resize(e.arrows());
  cert->strongly_cartesian.resize(e.arrows());
  for (int f = 0; f < e.arrows(); ++f) {
    CartesianCheck c = check_cartesian(p, f);
    cert->cartesian[f] = c.cartesian ? 1 : 0;
    cert->strongly_cartesian[f] = c.strongly ? 1 : 0;
  }

  bool pre = true;
  cert->lifts.assign(e.objects(), std::vector<std::vector<int>>(b.arrows()));
  for (int x = 0; x < e.objects(); ++x)
    for (int phi = 0; phi < b.arrows(); ++phi) {
      if (b.src[phi] != p.ob[x]) continue;
      auto& slot = cert->lifts[x][phi];
      for (int f = 0; f < e.arrows(); ++f)
        if (e.src[f] == x && p.fl[f] == phi && cert->cartesian[f]) slot.push_back(f);
      if (slot.empty() && pre) {
        pre = false;
        cert->missing_lift = {x, phi};
      }
    }

  if (!pre) {
    cert->cls = FibClass::NotPrefibration;
    return cert;
  }

  bool closed = true;
  for (int g = 0; g < e.arrows() && closed; ++g)
    for (int f = 0; f < e.arrows() && closed; ++f) {
      if (!e.composable(g, f)) continue;
      if (!cert->cartesian[f] || !cert->cartesian[g]) continue;
      if (!cert->cartesian[e.compose(g, f)]) {
        closed = false;
        cert->nonclosed = {g, f};
      }
    }
  cert->cls = closed ? FibClass::Fibration : FibClass::Prefibration;
  return cert;
}

// ---------------------------------------------------------------- cleavages

bool Cleavage::in_sigma(int f) const {
  const FiniteCategory& e = cert->total();
  int x = e.src[f];
  int phi = cert->p.fl[f];
  return lift[x][phi] == f;
}

bool is_normal(const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  for (int x = 0; x < e.objects(); ++x)
    if (c.lift[x][b.id_arrow[c.cert->p.ob[x]]] != e.id_arrow[x]) return false;
  return true;
}

bool is_closed(const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  for (int x = 0; x < e.objects(); ++x)
    for (int phi = 0; phi < b.arrows(); ++phi) {
      if (b.src[phi] != c.cert->p.ob[x]) continue;
      int f1 = c.lift[x][phi];
      for (int psi = 0; psi < b.arrows(); ++psi) {
        if (!b.composable(psi, phi)) continue;
        int f2 = c.lift[e.dst[f1]][psi];
        if (e.compose(f2, f1) != c.lift[x][b.compose(psi, phi)]) return false;
      }
    }
  return true;
}

bool closed_by_right_cancellation(const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  for (int f = 0; f < e.arrows(); ++f) {
    if (!c.in_sigma(f)) continue;
    for (int g = 0; g < e.arrows(); ++g) {
      if (!e.composable(g, f)) continue;
      if (c.in_sigma(e.compose(g, f)) && !c.in_sigma(g)) return false;
    }
  }
  return true;
}

void validate_cleavage(const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  require(static_cast<int>(c.lift.size()) == e.objects(), "ValidationError",
          "cleavage table has wrong shape");
  for (int x = 0; x < e.objects(); ++x) {
    require(static_cast<int>(c.lift[x].size()) == b.arrows(), "ValidationError",
            "cleavage table has wrong shape");
    for (int phi = 0; phi < b.arrows(); ++phi) {
      int f = c.lift[x][phi];
      if (b.src[phi] != c.cert->p.ob[x]) {
        require(f == -1, "ValidationError",
                "cleavage assigns a lift where none is required");
        continue;
      }
      require(f >= 0 && f < e.arrows() && e.src[f] == x && c.cert->p.fl[f] == phi,
              "ValidationError",
              "cleavage lift for (" + e.object_name[x] + ", " + b.arrow_name[phi] +
                  ") has the wrong signature");
      require(c.cert->cartesian[f] != 0, "ValidationError",
              "cleavage lift '" + e.arrow_name[f] + "' is not cartesian");
    }
  }
}

void require_normal(const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  for (int x = 0; x < e.objects(); ++x) {
    int phi = b.id_arrow[c.cert->p.ob[x]];
    int f = c.lift[x][phi];
    require(f == e.id_arrow[x], "NotNormal",
            "lift of (" + e.object_name[x] + ", " + b.arrow_name[phi] +
                ") is '" + e.arrow_name[f] + "', not the identity");
  }
}

Cleavage default_cleavage(const CertPtr& cert, std::string name) {
  require(cert->is_prefibration(), "ValidationError",
          "cannot cleave: some arrow has no cartesian lift");
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();
  Cleavage c;
  c.cert = cert;
  c.name = std::move(name);
  c.lift.assign(e.objects(), std::vector<int>(b.arrows(), -1));
  for (int x = 0; x < e.objects(); ++x)
    for (int phi = 0; phi < b.arrows(); ++phi) {
      if (b.src[phi] != cert->p.ob[x]) continue;
      c.lift[x][phi] =
          b.is_identity(phi) ? e.id_arrow[x] : cert->lifts[x][phi].front();
    }
  return c;
}

std::vector<Cleavage> enumerate_cleavages(const CertPtr& cert, long long limit,
                                          bool normal_only) {
  require(cert->is_prefibration(), "ValidationError",
          "cannot cleave: some arrow has no cartesian lift");
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();

  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<int>> choices;
  for (int x = 0; x < e.objects(); ++x)
    for (int phi = 0; phi < b.arrows(); ++phi) {
      if (b.src[phi] != cert->p.ob[x]) continue;
      slots.push_back({x, phi});
      if (normal_only && b.is_identity(phi))
        choices.push_back({e.id_arrow[x]});
      else
        choices.push_back(cert->lifts[x][phi]);
    }

  const long long kCountCap = 1000000;
  long long total = 1;
  bool exact = true;
  for (const auto& ch : choices) {
    total *= static_cast<long long>(ch.size());
    if (total > kCountCap) {
      exact = false;
      total = kCountCap + 1;
      break;
    }
  }
  if (total > limit) {
    std::string n = exact ? std::to_string(total) : "more than 10^6";
    fail("LimitExceeded", n + " cleavages requested, limit is " +
                              std::to_string(limit));
  }

  std::vector<Cleavage> out;
  std::vector<size_t> pick(slots.size(), 0);
  while (true) {
    Cleavage c;
    c.cert = cert;
    c.name = "sigma" + std::to_string(out.size());
    c.lift.assign(e.objects(), std::vector<int>(b.arrows(), -1));
    for (size_t k = 0; k < slots.size(); ++k)
      c.lift[slots[k].first][slots[k].second] = choices[k][pick[k]];
    out.push_back(std::move(c));

    int k = static_cast<int>(slots.size()) - 1;
    while (k >= 0 && pick[k] + 1 == choices[k].size()) pick[k--] = 0;
    if (k < 0) break;
    ++pick[k];
  }
  return out;
}

BaseChange base_change(const Cleavage& c, int phi) {
  const FiniteCategory& e = c.cert->total();
  const FiniteCategory& b = c.cert->base();
  const Functor& p = c.cert->p;
  assert(phi >= 0 && phi < b.arrows());

  BaseChange out;
  out.src_fiber = fiber(p, b.src[phi]);
  out.dst_fiber = fiber(p, b.dst[phi]);
  const FiniteCategory& fs = *out.src_fiber.cat;
  const FiniteCategory& fd = *out.dst_fiber.cat;

  Functor u;
  u.name = b.arrow_name[phi] + "_*";
  u.dom = out.src_fiber.cat;
  u.cod = out.dst_fiber.cat;
  u.ob.resize(fs.objects());
  u.fl.resize(fs.arrows());
  for (int x = 0; x < fs.objects(); ++x) {
    int parent = out.src_fiber.inclusion.ob[x];
    int image = e.dst[c.lift[parent][phi]];
    u.ob[x] = *fd.object_index(e.object_name[image]);
  }
  for (int f = 0; f < fs.arrows(); ++f) {
    int g = out.src_fiber.inclusion.fl[f];
    int x = e.src[g], y = e.dst[g];
    int lx = c.lift[x][phi], ly = c.lift[y][phi];
    auto hs = lift_fillers(p, lx, e.compose(ly, g), b.id_arrow[b.dst[phi]]);
    assert(hs.size() == 1);
    int h = hs[0];
    u.fl[f] = e.is_identity(h) ? fd.id_arrow[u.ob[fs.src[f]]]
                               : *fd.arrow_index(e.arrow_name[h]);
  }
  validate_functor(u);
  out.functor = std::move(u);
  return out;
}

// ---------------------------------------------------------------- good maps

GoodMapCheck check_good_map(const Functor& s, const MappingCategory& mc,
                            const CertPtr& cert) {
  const FiniteCategory& e = cert->total();
  GoodMapCheck out;

  Functor si = compose(s, mc.i);
  for (int x = 0; x < e.objects() && out.good; ++x)
    if (si.ob[x] != x) {
      out = {false, "retraction", x};
    }
  for (int f = 0; f < e.arrows() && out.good; ++f)
    if (si.fl[f] != f) {
      out = {false, "retraction", f};
    }
  if (!out.good) return out;

  Functor ps = compose(cert->p, s);
  for (int x = 0; x < mc.cat->objects() && out.good; ++x)
    if (ps.ob[x] != mc.pi.ob[x]) {
      out = {false, "projection", x};
    }
  for (int f = 0; f < mc.cat->arrows() && out.good; ++f)
    if (ps.fl[f] != mc.pi.fl[f]) {
      out = {false, "projection", f};
    }
  if (!out.good) return out;

  CertPtr pi_cert = certify_fibration(mc.pi);
  for (int f = 0; f < mc.cat->arrows(); ++f)
    if (pi_cert->cartesian[f] && !cert->cartesian[s.fl[f]])
      return {false, "cartesian", f};
  return out;
}

void require_good(const Functor& s, const MappingCategory& mc, const CertPtr& cert) {
  GoodMapCheck c = check_good_map(s, mc, cert);
  if (c.good) return;
  std::string what;
  if (c.violated == "retraction")
    what = "it is not a retraction of the canonical embedding";
  else if (c.violated == "projection")
    what = "it does not lie over the base";
  else
    what = "it does not preserve cartesian arrows (witness arrow index " +
           std::to_string(c.witness) + ")";
  fail("NotGood", what);
}

Functor good_map_from_cleavage(const Cleavage& c, const MappingCategory& mc) {
  const CertPtr& cert = c.cert;
  const FiniteCategory& e = cert->total();
  require(cert->is_fibration(), "ValidationError",
          "good maps require a fibration");
  require_normal(c);

  Functor s;
  s.name = "s_" + c.name;
  s.dom = mc.cat;
  s.cod = cert->p.dom;
  s.ob.resize(mc.cat->objects());
  s.fl.resize(mc.cat->arrows());
  for (int o = 0; o < mc.cat->objects(); ++o) {
    auto [a, phi] = mc.object_data[o];
    s.ob[o] = e.dst[c.lift[a][phi]];
  }
  for (int m = 0; m < mc.cat->arrows(); ++m) {
    if (mc.cat->is_identity(m)) {
      s.fl[m] = e.id_arrow[s.ob[mc.cat->src[m]]];
      continue;
    }
    int so = mc.cat->src[m], to = mc.cat->dst[m];
    auto [a, phi] = mc.object_data[so];
    auto [a2, phi2] = mc.object_data[to];
    int f = mc.r.fl[m], beta = mc.pi.fl[m];
    auto hs = lift_fillers(cert->p, c.lift[a][phi],
                      e.compose(c.lift[a2][phi2], f), beta);
    assert(hs.size() == 1);
    s.fl[m] = hs[0];
  }
  validate_functor(s);
  return s;
}

Cleavage cleavage_from_good_map(const Functor& s, const MappingCategory& mc,
                                const CertPtr& cert, std::string name) {
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();
  Cleavage c;
  c.cert = cert;
  c.name = std::move(name);
  c.lift.assign(e.objects(), std::vector<int>(b.arrows(), -1));
  for (int x = 0; x < e.objects(); ++x) {
    int px = cert->p.ob[x];
    int so = mc.object_of(x, b.id_arrow[px]);
    assert(so >= 0);
    for (int phi = 0; phi < b.arrows(); ++phi) {
      if (b.src[phi] != px) continue;
      int to = mc.object_of(x, phi);
      assert(to >= 0);
      int m = mc.arrow_of(e.id_arrow[x], phi, so, to);
      assert(m >= 0);
      c.lift[x][phi] = s.fl[m];
    }
  }
  validate_cleavage(c);
  return c;
}

bool is_very_good(const Functor& s, const MappingCategory& mc, const Cleavage& c) {
  const FiniteCategory& e = c.cert->total();
  for (int m = 0; m < mc.cat->arrows(); ++m)
    if (e.is_identity(mc.r.fl[m]) && !c.in_sigma(s.fl[m])) return false;
  return true;
}

// ----------------------------------------------------------------- diagrams

void validate_diagram(const DiagramOfCategories& z) {
  const FiniteCategory& b = *z.base;
  std::string who = z.name.empty() ? "diagram" : "diagram " + z.name;
  require(static_cast<int>(z.value.size()) == b.objects(), "ValidationError",
          who + ": values missing for some objects");
  require(static_cast<int>(z.map.size()) == b.arrows(), "ValidationError",
          who + ": maps missing for some arrows");
  for (int phi = 0; phi < b.arrows(); ++phi) {
    require(same_category(*z.map[phi].dom, *z.value[b.src[phi]]) &&
                same_category(*z.map[phi].cod, *z.value[b.dst[phi]]),
            "ValidationError",
            who + ": map for '" + b.arrow_name[phi] + "' has wrong endpoints");
    validate_functor(z.map[phi]);
  }
  for (int x = 0; x < b.objects(); ++x)
    require(functors_equal(z.map[b.id_arrow[x]], identity_functor(z.value[x])),
            "ValidationError",
            who + ": identity of '" + b.object_name[x] + "' not sent to identity");
  for (int g = 0; g < b.arrows(); ++g)
    for (int f = 0; f < b.arrows(); ++f)
      if (b.composable(g, f))
        require(functors_equal(z.map[b.compose(g, f)], compose(z.map[g], z.map[f])),
                "ValidationError",
                who + ": not functorial on (" + b.arrow_name[g] + ", " +
                    b.arrow_name[f] + ")");
}

// ------------------------------------------------------------- grothendieck

namespace {

std::string pn(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

struct GrArrow {
  int f, phi, x; // f in value[dst phi], x in value[src phi]
};

} // namespace

Grothendieck grothendieck(const DiagramOfCategories& z) {
  validate_diagram(z);
  const FiniteCategory& b = *z.base;

  auto on = [&](int x, int bo) {
    return pn(z.value[bo]->object_name[x], b.object_name[bo]);
  };
  auto is_ga_id = [&](const GrArrow& a) {
    return b.is_identity(a.phi) && z.value[b.dst[a.phi]]->is_identity(a.f);
  };
  auto an = [&](const GrArrow& a) -> std::string {
    int b0 = b.src[a.phi], b1 = b.dst[a.phi];
    if (is_ga_id(a)) return "id:" + on(a.x, b0);
    return "(" + z.value[b1]->arrow_name[a.f] + "," + b.arrow_name[a.phi] + "," +
           z.value[b0]->object_name[a.x] + ")";
  };

  std::vector<GrArrow> garrows;
  for (int phi = 0; phi < b.arrows(); ++phi) {
    int b0 = b.src[phi], b1 = b.dst[phi];
    for (int x = 0; x < z.value[b0]->objects(); ++x) {
      int fx = z.map[phi].ob[x];
      for (int f = 0; f < z.value[b1]->arrows(); ++f)
        if (z.value[b1]->src[f] == fx) garrows.push_back({f, phi, x});
    }
  }

  CategoryBuilder bld(z.name.empty() ? "total" : z.name + "_total");
  for (int bo = 0; bo < b.objects(); ++bo)
    for (int x = 0; x < z.value[bo]->objects(); ++x) bld.object(on(x, bo));
  for (const GrArrow& a : garrows) {
    if (is_ga_id(a)) continue;
    int b0 = b.src[a.phi], b1 = b.dst[a.phi];
    bld.arrow(an(a), on(a.x, b0), on(z.value[b1]->dst[a.f], b1));
  }
  for (const GrArrow& a1 : garrows) {
    if (is_ga_id(a1)) continue;
    int m1 = b.dst[a1.phi];
    for (const GrArrow& a2 : garrows) {
      if (is_ga_id(a2)) continue;
      if (b.src[a2.phi] != m1 || a2.x != z.value[m1]->dst[a1.f]) continue;
      int m2 = b.dst[a2.phi];
      GrArrow c{z.value[m2]->compose(a2.f, z.map[a2.phi].fl[a1.f]),
                b.compose(a2.phi, a1.phi), a1.x};
      bld.composite(an(a2), an(a1), an(c));
    }
  }

  Grothendieck out;
  out.total = bld.build();

  Functor proj;
  proj.name = (z.name.empty() ? std::string("total") : z.name) + "_proj";
  proj.dom = out.total;
  proj.cod = z.base;
  proj.ob.resize(out.total->objects());
  proj.fl.resize(out.total->arrows());
  out.object_data.resize(out.total->objects());
  out.arrow_data.resize(out.total->arrows());
  for (int bo = 0; bo < b.objects(); ++bo)
    for (int x = 0; x < z.value[bo]->objects(); ++x) {
      int o = *out.total->object_index(on(x, bo));
      proj.ob[o] = bo;
      out.object_data[o] = {x, bo};
    }
  for (int o = 0; o < out.total->objects(); ++o) {
    proj.fl[out.total->id_arrow[o]] = b.id_arrow[proj.ob[o]];
    auto [x, bo] = out.object_data[o];
    out.arrow_data[out.total->id_arrow[o]] = {z.value[bo]->id_arrow[x],
                                              b.id_arrow[bo], x};
  }
  for (const GrArrow& a : garrows) {
    if (is_ga_id(a)) continue;
    int idx = *out.total->arrow_index(an(a));
    proj.fl[idx] = a.phi;
    out.arrow_data[idx] = {a.f, a.phi, a.x};
  }
  validate_functor(proj);
  out.projection = proj;

  out.cert = certify_fibration(proj);
  assert(out.cert->is_fibration());

  Cleavage dist;
  dist.cert = out.cert;
  dist.name = "distinguished";
  dist.lift.assign(out.total->objects(), std::vector<int>(b.arrows(), -1));
  for (int bo = 0; bo < b.objects(); ++bo)
    for (int x = 0; x < z.value[bo]->objects(); ++x) {
      int o = *out.total->object_index(on(x, bo));
      for (int phi = 0; phi < b.arrows(); ++phi) {
        if (b.src[phi] != bo) continue;
        GrArrow a{z.value[b.dst[phi]]->id_arrow[z.map[phi].ob[x]], phi, x};
        dist.lift[o][phi] = is_ga_id(a) ? out.total->id_arrow[o]
                                        : *out.total->arrow_index(an(a));
      }
    }
  validate_cleavage(dist);
  assert(is_normal(dist) && is_closed(dist));
  out.distinguished = std::move(dist);
  return out;
}

} // namespace cleave
