#include "cleave/category.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "cleave/error.hpp"

namespace cleave {

int FiniteCategory::compose(int g, int f) const {
  assert(composable(g, f));
  int h = comp[static_cast<size_t>(g) * arrows() + f];
  assert(h >= 0);
  return h;
}

std::optional<int> FiniteCategory::object_index(const std::string& n) const {
  auto it = std::lower_bound(object_name.begin(), object_name.end(), n);
  if (it != object_name.end() && *it == n)
    return static_cast<int>(it - object_name.begin());
  return std::nullopt;
}

std::optional<int> FiniteCategory::arrow_index(const std::string& n) const {
  auto it = std::lower_bound(arrow_name.begin(), arrow_name.end(), n);
  if (it != arrow_name.end() && *it == n)
    return static_cast<int>(it - arrow_name.begin());
  return std::nullopt;
}

std::vector<int> FiniteCategory::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < arrows(); ++f)
    if (src[f] == x && dst[f] == y) out.push_back(f);
  return out;
}

// ---------------------------------------------------------------- builder

CategoryBuilder::CategoryBuilder(std::string name) : name_(std::move(name)) {}

CategoryBuilder& CategoryBuilder::object(const std::string& id) {
  objects_.push_back(id);
  return *this;
}

CategoryBuilder& CategoryBuilder::arrow(const std::string& id, const std::string& src,
                                        const std::string& dst) {
  arrows_.push_back({id, src, dst});
  return *this;
}

CategoryBuilder& CategoryBuilder::composite(const std::string& g, const std::string& f,
                                            const std::string& gf) {
  composites_.push_back({g, f, gf});
  return *this;
}

CatPtr CategoryBuilder::build() const {
  auto cat = std::make_shared<FiniteCategory>();
  cat->name = name_;

  cat->object_name = objects_;
  std::sort(cat->object_name.begin(), cat->object_name.end());
  for (size_t i = 0; i + 1 < cat->object_name.size(); ++i)
    require(cat->object_name[i] != cat->object_name[i + 1], "ValidationError",
            "duplicate object '" + cat->object_name[i] + "'");

  // collect arrows, adding implicit identities id:X where missing
  std::vector<RawArrow> raw = arrows_;
  std::set<std::string> declared;
  for (const RawArrow& a : raw) {
    require(declared.insert(a.id).second, "ValidationError",
            "duplicate arrow '" + a.id + "'");
  }
  for (const std::string& x : cat->object_name) {
    std::string idname = "id:" + x;
    if (!declared.count(idname)) raw.push_back({idname, x, x});
  }
  std::sort(raw.begin(), raw.end(),
            [](const RawArrow& a, const RawArrow& b) { return a.id < b.id; });

  const int na = static_cast<int>(raw.size());
  cat->arrow_name.resize(na);
  cat->src.resize(na);
  cat->dst.resize(na);
  for (int i = 0; i < na; ++i) {
    cat->arrow_name[i] = raw[i].id;
    auto s = cat->object_index(raw[i].src);
    auto d = cat->object_index(raw[i].dst);
    require(s.has_value(), "UnknownName",
            "arrow '" + raw[i].id + "' references unknown object '" + raw[i].src + "'");
    require(d.has_value(), "UnknownName",
            "arrow '" + raw[i].id + "' references unknown object '" + raw[i].dst + "'");
    cat->src[i] = *s;
    cat->dst[i] = *d;
  }

  // identities: by convention the identity of X is the arrow named id:X
  cat->id_arrow.assign(cat->objects(), -1);
  for (int x = 0; x < cat->objects(); ++x) {
    std::string idname = "id:" + cat->object_name[x];
    auto f = cat->arrow_index(idname);
    assert(f.has_value());
    require(cat->src[*f] == x && cat->dst[*f] == x, "BadIdentity",
            "arrow '" + idname + "' must be an endo-arrow of '" +
                cat->object_name[x] + "'");
    cat->id_arrow[x] = *f;
  }

  cat->comp.assign(static_cast<size_t>(na) * na, -1);
  auto entry = [&](int g, int f) -> int& {
    return cat->comp[static_cast<size_t>(g) * na + f];
  };

  for (const RawComposite& c : composites_) {
    auto g = cat->arrow_index(c.g), f = cat->arrow_index(c.f), gf = cat->arrow_index(c.gf);
    require(g.has_value(), "UnknownName", "unknown arrow '" + c.g + "' in composite");
    require(f.has_value(), "UnknownName", "unknown arrow '" + c.f + "' in composite");
    require(gf.has_value(), "UnknownName", "unknown arrow '" + c.gf + "' in composite");
    require(cat->composable(*g, *f), "ValidationError",
            "composite declared for non-composable pair " + c.g + " . " + c.f);
    require(cat->src[*gf] == cat->src[*f] && cat->dst[*gf] == cat->dst[*g],
            "ValidationError",
            "composite " + c.g + " . " + c.f + " = " + c.gf + " has wrong endpoints");
    int& slot = entry(*g, *f);
    require(slot == -1 || slot == *gf, "ValidationError",
            "conflicting composites for " + c.g + " . " + c.f);
    slot = *gf;
  }

  // identity composites are forced; a conflicting declaration is a bad identity
  for (int f = 0; f < na; ++f) {
    int idl = cat->id_arrow[cat->dst[f]], idr = cat->id_arrow[cat->src[f]];
    int& l = entry(idl, f);
    require(l == -1 || l == f, "BadIdentity",
            "id:" + cat->object_name[cat->dst[f]] + " fails the identity law on '" +
                cat->arrow_name[f] + "'");
    l = f;
    int& rx = entry(f, idr);
    require(rx == -1 || rx == f, "BadIdentity",
            "id:" + cat->object_name[cat->src[f]] + " fails the identity law on '" +
                cat->arrow_name[f] + "'");
    rx = f;
  }

  for (int g = 0; g < na; ++g)
    for (int f = 0; f < na; ++f)
      if (cat->composable(g, f))
        require(entry(g, f) != -1, "MissingComposite",
                "comp(" + cat->arrow_name[g] + ", " + cat->arrow_name[f] +
                    ") is not declared");

  for (int h = 0; h < na; ++h)
    for (int g = 0; g < na; ++g) {
      if (!cat->composable(h, g)) continue;
      for (int f = 0; f < na; ++f) {
        if (!cat->composable(g, f)) continue;
        int left = entry(entry(h, g), f);
        int right = entry(h, entry(g, f));
        require(left == right, "NonAssociative",
                "(" + cat->arrow_name[h] + " . " + cat->arrow_name[g] + ") . " +
                    cat->arrow_name[f] + " != " + cat->arrow_name[h] + " . (" +
                    cat->arrow_name[g] + " . " + cat->arrow_name[f] + ")");
      }
    }

  return cat;
}

// ---------------------------------------------------------------- functors

bool same_category(const FiniteCategory& a, const FiniteCategory& b) {
  return a.object_name == b.object_name && a.arrow_name == b.arrow_name &&
         a.src == b.src && a.dst == b.dst && a.id_arrow == b.id_arrow &&
         a.comp == b.comp;
}

void validate_functor(const Functor& u) {
  const FiniteCategory& a = *u.dom;
  const FiniteCategory& b = *u.cod;
  std::string who = u.name.empty() ? "functor" : "functor " + u.name;
  require(static_cast<int>(u.ob.size()) == a.objects() &&
              static_cast<int>(u.fl.size()) == a.arrows(),
          "ValidationError", who + ": map tables have wrong shape");
  for (int x = 0; x < a.objects(); ++x)
    require(u.ob[x] >= 0 && u.ob[x] < b.objects(), "ValidationError",
            who + ": object image out of range");
  for (int f = 0; f < a.arrows(); ++f) {
    require(u.fl[f] >= 0 && u.fl[f] < b.arrows(), "ValidationError",
            who + ": arrow image out of range");
    require(b.src[u.fl[f]] == u.ob[a.src[f]] && b.dst[u.fl[f]] == u.ob[a.dst[f]],
            "ValidationError",
            who + ": image of '" + a.arrow_name[f] + "' has wrong endpoints");
  }
  for (int x = 0; x < a.objects(); ++x)
    require(u.fl[a.id_arrow[x]] == b.id_arrow[u.ob[x]], "ValidationError",
            who + ": identity of '" + a.object_name[x] + "' not preserved");
  for (int g = 0; g < a.arrows(); ++g)
    for (int f = 0; f < a.arrows(); ++f)
      if (a.composable(g, f))
        require(u.fl[a.compose(g, f)] == b.compose(u.fl[g], u.fl[f]),
                "ValidationError",
                who + ": composition not preserved on (" + a.arrow_name[g] + ", " +
                    a.arrow_name[f] + ")");
}

Functor identity_functor(CatPtr c) {
  Functor u;
  u.name = "id_" + c->name;
  u.dom = c;
  u.cod = c;
  u.ob.resize(c->objects());
  u.fl.resize(c->arrows());
  for (int x = 0; x < c->objects(); ++x) u.ob[x] = x;
  for (int f = 0; f < c->arrows(); ++f) u.fl[f] = f;
  return u;
}

Functor compose(const Functor& g, const Functor& f) {
  assert(g.dom == f.cod || same_category(*g.dom, *f.cod));
  Functor h;
  h.name = g.name + "." + f.name;
  h.dom = f.dom;
  h.cod = g.cod;
  h.ob.resize(f.ob.size());
  h.fl.resize(f.fl.size());
  for (size_t x = 0; x < f.ob.size(); ++x) h.ob[x] = g.ob[f.ob[x]];
  for (size_t a = 0; a < f.fl.size(); ++a) h.fl[a] = g.fl[f.fl[a]];
  return h;
}

bool functors_equal(const Functor& a, const Functor& b) {
  return same_category(*a.dom, *b.dom) && same_category(*a.cod, *b.cod) &&
         a.ob == b.ob && a.fl == b.fl;
}

// ----------------------------------------------------------- constructions

CatPtr ordinal(int n) {
  assert(n >= 0);
  CategoryBuilder b("[" + std::to_string(n) + "]");
  auto nm = [](int i) { return std::to_string(i); };
  auto ar = [&](int i, int j) { return nm(i) + "->" + nm(j); };
  for (int i = 0; i <= n; ++i) b.object(nm(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) b.arrow(ar(i, j), nm(i), nm(j));
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) b.composite(ar(j, k), ar(i, j), ar(i, k));
  return b.build();
}

namespace {

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

} // namespace

CatPtr product(CatPtr a, CatPtr b) {
  CategoryBuilder bld(a->name + "x" + b->name);
  for (const std::string& x : a->object_name)
    for (const std::string& y : b->object_name) bld.object(pair_name(x, y));

  // the pair (id, id) is the identity of the pair object and stays implicit
  auto arrow_nm = [&](int f, int g) -> std::string {
    if (a->is_identity(f) && g >= 0 && b->is_identity(g))
      return "id:" + pair_name(a->object_name[a->src[f]], b->object_name[b->src[g]]);
    return pair_name(a->arrow_name[f], b->arrow_name[g]);
  };
  for (int f = 0; f < a->arrows(); ++f)
    for (int g = 0; g < b->arrows(); ++g) {
      if (a->is_identity(f) && b->is_identity(g)) continue;
      bld.arrow(arrow_nm(f, g),
                pair_name(a->object_name[a->src[f]], b->object_name[b->src[g]]),
                pair_name(a->object_name[a->dst[f]], b->object_name[b->dst[g]]));
    }
  for (int f2 = 0; f2 < a->arrows(); ++f2)
    for (int g2 = 0; g2 < b->arrows(); ++g2) {
      if (a->is_identity(f2) && b->is_identity(g2)) continue;
      for (int f1 = 0; f1 < a->arrows(); ++f1)
        for (int g1 = 0; g1 < b->arrows(); ++g1) {
          if (a->is_identity(f1) && b->is_identity(g1)) continue;
          if (!a->composable(f2, f1) || !b->composable(g2, g1)) continue;
          bld.composite(arrow_nm(f2, g2), arrow_nm(f1, g1),
                        arrow_nm(a->compose(f2, f1), b->compose(g2, g1)));
        }
    }
  return bld.build();
}

ArrowCategory arrow_category(CatPtr b) {
  // objects: arrows f of b; arrows: squares (u,v): f -> g with v∘f = g∘u
  struct Square {
    int u, v, f, g;
  };
  std::vector<Square> squares;
  for (int f = 0; f < b->arrows(); ++f)
    for (int g = 0; g < b->arrows(); ++g)
      for (int u = 0; u < b->arrows(); ++u) {
        if (b->src[u] != b->src[f] || b->dst[u] != b->src[g]) continue;
        for (int v = 0; v < b->arrows(); ++v) {
          if (b->src[v] != b->dst[f] || b->dst[v] != b->dst[g]) continue;
          if (b->compose(v, f) == b->compose(g, u)) squares.push_back({u, v, f, g});
        }
      }

  auto sq_name = [&](const Square& s) -> std::string {
    if (s.f == s.g && b->is_identity(s.u) && b->is_identity(s.v))
      return "id:" + b->arrow_name[s.f];
    return "(" + b->arrow_name[s.u] + "," + b->arrow_name[s.v] + ":" +
           b->arrow_name[s.f] + "=>" + b->arrow_name[s.g] + ")";
  };

  CategoryBuilder bld(b->name + "^I");
  for (int f = 0; f < b->arrows(); ++f) bld.object(b->arrow_name[f]);
  for (const Square& s : squares) {
    if (s.f == s.g && b->is_identity(s.u) && b->is_identity(s.v)) continue;
    bld.arrow(sq_name(s), b->arrow_name[s.f], b->arrow_name[s.g]);
  }
  for (const Square& s1 : squares) {
    if (s1.f == s1.g && b->is_identity(s1.u) && b->is_identity(s1.v)) continue;
    for (const Square& s2 : squares) {
      if (s2.f == s2.g && b->is_identity(s2.u) && b->is_identity(s2.v)) continue;
      if (s2.f != s1.g) continue;
      Square c{b->compose(s2.u, s1.u), b->compose(s2.v, s1.v), s1.f, s2.g};
      bld.composite(sq_name(s2), sq_name(s1), sq_name(c));
    }
  }
  ArrowCategory out;
  out.cat = bld.build();

  Functor dom_f, cod_f;
  dom_f.name = "dom";
  cod_f.name = "cod";
  dom_f.dom = cod_f.dom = out.cat;
  dom_f.cod = cod_f.cod = b;
  dom_f.ob.resize(out.cat->objects());
  cod_f.ob.resize(out.cat->objects());
  for (int x = 0; x < out.cat->objects(); ++x) {
    int f = *b->arrow_index(out.cat->object_name[x]);
    dom_f.ob[x] = b->src[f];
    cod_f.ob[x] = b->dst[f];
  }
  dom_f.fl.resize(out.cat->arrows());
  cod_f.fl.resize(out.cat->arrows());
  // recover (u,v) per square arrow: identities map to identities, the rest
  // are found by name
  std::map<std::string, std::pair<int, int>> uv;
  for (const Square& s : squares) uv[sq_name(s)] = {s.u, s.v};
  for (int e = 0; e < out.cat->arrows(); ++e) {
    auto it = uv.find(out.cat->arrow_name[e]);
    assert(it != uv.end());
    dom_f.fl[e] = it->second.first;
    cod_f.fl[e] = it->second.second;
  }
  validate_functor(dom_f);
  validate_functor(cod_f);
  out.dom_functor = std::move(dom_f);
  out.cod_functor = std::move(cod_f);
  return out;
}

Subcategory fiber(const Functor& u, int b) {
  require(b >= 0 && b < u.cod->objects(), "ObjectNotInCodomain",
          "object index " + std::to_string(b) + " is not in the codomain");
  const FiniteCategory& a = *u.dom;
  int idb = u.cod->id_arrow[b];

  CategoryBuilder bld(a.name + "_" + u.cod->object_name[b]);
  std::vector<int> objs, arrs;
  for (int x = 0; x < a.objects(); ++x)
    if (u.ob[x] == b) {
      bld.object(a.object_name[x]);
      objs.push_back(x);
    }
  for (int f = 0; f < a.arrows(); ++f)
    if (u.fl[f] == idb && !a.is_identity(f)) {
      bld.arrow(a.arrow_name[f], a.object_name[a.src[f]], a.object_name[a.dst[f]]);
      arrs.push_back(f);
    }
  for (int g : arrs)
    for (int f : arrs)
      if (a.composable(g, f)) {
        int gf = a.compose(g, f);
        std::string nm = a.is_identity(gf) ? "id:" + a.object_name[a.src[gf]]
                                           : a.arrow_name[gf];
        bld.composite(a.arrow_name[g], a.arrow_name[f], nm);
      }

  Subcategory out;
  out.cat = bld.build();
  Functor inc;
  inc.name = "incl";
  inc.dom = out.cat;
  inc.cod = u.dom;
  inc.ob.resize(out.cat->objects());
  inc.fl.resize(out.cat->arrows());
  for (int x = 0; x < out.cat->objects(); ++x)
    inc.ob[x] = *a.object_index(out.cat->object_name[x]);
  for (int f = 0; f < out.cat->arrows(); ++f) {
    if (out.cat->is_identity(f)) {
      inc.fl[f] = a.id_arrow[inc.ob[out.cat->src[f]]];
    } else {
      inc.fl[f] = *a.arrow_index(out.cat->arrow_name[f]);
    }
  }
  validate_functor(inc);
  out.inclusion = std::move(inc);
  return out;
}

namespace {

// Shared enumeration for comma-style categories: objects (a, φ: u(a) → b)
// with b constrained by `pick_b`; arrows (f, β) with φ' ∘ u(f) = β ∘ φ.
// For the homotopy fiber β is forced to be id_b.
struct CommaData {
  std::vector<std::pair<int, int>> objects; // (a, phi)
  struct Arrow {
    int f, beta, so, to; // so/to index into objects
  };
  std::vector<Arrow> arrows;
};

CommaData enumerate_comma(const Functor& u, bool fix_target, int b) {
  const FiniteCategory& a = *u.dom;
  const FiniteCategory& bb = *u.cod;
  CommaData out;
  for (int x = 0; x < a.objects(); ++x)
    for (int phi = 0; phi < bb.arrows(); ++phi) {
      if (bb.src[phi] != u.ob[x]) continue;
      if (fix_target && bb.dst[phi] != b) continue;
      out.objects.push_back({x, phi});
    }
  for (int so = 0; so < static_cast<int>(out.objects.size()); ++so)
    for (int to = 0; to < static_cast<int>(out.objects.size()); ++to) {
      auto [x, phi] = out.objects[so];
      auto [y, psi] = out.objects[to];
      for (int f = 0; f < a.arrows(); ++f) {
        if (a.src[f] != x || a.dst[f] != y) continue;
        for (int beta = 0; beta < bb.arrows(); ++beta) {
          if (bb.src[beta] != bb.dst[phi] || bb.dst[beta] != bb.dst[psi]) continue;
          if (fix_target && !bb.is_identity(beta)) continue;
          if (bb.compose(psi, u.fl[f]) == bb.compose(beta, phi))
            out.arrows.push_back({f, beta, so, to});
        }
      }
    }
  return out;
}

} // namespace

HomotopyFiber homotopy_fiber(const Functor& u, int b) {
  require(b >= 0 && b < u.cod->objects(), "ObjectNotInCodomain",
          "object index " + std::to_string(b) + " is not in the codomain");
  const FiniteCategory& a = *u.dom;
  const FiniteCategory& bb = *u.cod;
  CommaData data = enumerate_comma(u, true, b);

  auto ob_name = [&](int i) {
    auto [x, phi] = data.objects[i];
    return pair_name(a.object_name[x], bb.arrow_name[phi]);
  };
  auto is_id = [&](const CommaData::Arrow& e) {
    return e.so == e.to && a.is_identity(e.f);
  };
  auto ar_name = [&](const CommaData::Arrow& e) -> std::string {
    if (is_id(e)) return "id:" + ob_name(e.so);
    auto [x, phi] = data.objects[e.so];
    auto [y, psi] = data.objects[e.to];
    return "(" + a.arrow_name[e.f] + ":" + bb.arrow_name[phi] + "=>" +
           bb.arrow_name[psi] + ")";
  };

  CategoryBuilder bld(a.name + "/" + bb.object_name[b]);
  for (int i = 0; i < static_cast<int>(data.objects.size()); ++i) bld.object(ob_name(i));
  for (const auto& e : data.arrows)
    if (!is_id(e)) bld.arrow(ar_name(e), ob_name(e.so), ob_name(e.to));
  for (const auto& e1 : data.arrows) {
    if (is_id(e1)) continue;
    for (const auto& e2 : data.arrows) {
      if (is_id(e2) || e2.so != e1.to) continue;
      CommaData::Arrow c{a.compose(e2.f, e1.f), 0, e1.so, e2.to};
      c.beta = bb.id_arrow[b];
      bld.composite(ar_name(e2), ar_name(e1), ar_name(c));
    }
  }

  HomotopyFiber out;
  out.cat = bld.build();
  out.strict = fiber(u, b);

  Functor inc;
  inc.name = "fiber_incl";
  inc.dom = out.strict.cat;
  inc.cod = out.cat;
  inc.ob.resize(out.strict.cat->objects());
  inc.fl.resize(out.strict.cat->arrows());
  int idb = bb.id_arrow[b];
  for (int x = 0; x < out.strict.cat->objects(); ++x) {
    std::string nm =
        pair_name(out.strict.cat->object_name[x], bb.arrow_name[idb]);
    inc.ob[x] = *out.cat->object_index(nm);
  }
  for (int f = 0; f < out.strict.cat->arrows(); ++f) {
    if (out.strict.cat->is_identity(f)) {
      inc.fl[f] = out.cat->id_arrow[inc.ob[out.strict.cat->src[f]]];
      continue;
    }
    std::string nm = "(" + out.strict.cat->arrow_name[f] + ":" +
                     bb.arrow_name[idb] + "=>" + bb.arrow_name[idb] + ")";
    auto idx = out.cat->arrow_index(nm);
    assert(idx.has_value());
    inc.fl[f] = *idx;
  }
  validate_functor(inc);
  out.fiber_inclusion = std::move(inc);
  return out;
}

int MappingCategory::object_of(int a, int phi) const {
  for (size_t k = 0; k < object_data.size(); ++k)
    if (object_data[k].first == a && object_data[k].second == phi)
      return static_cast<int>(k);
  return -1;
}

int MappingCategory::arrow_of(int f, int beta, int so, int to) const {
  for (int e = 0; e < cat->arrows(); ++e)
    if (cat->src[e] == so && cat->dst[e] == to && r.fl[e] == f && pi.fl[e] == beta)
      return e;
  return -1;
}

MappingCategory mapping_category(const Functor& u) {
  const FiniteCategory& a = *u.dom;
  const FiniteCategory& bb = *u.cod;
  CommaData data = enumerate_comma(u, false, -1);

  auto ob_name = [&](int i) {
    auto [x, phi] = data.objects[i];
    return pair_name(a.object_name[x], bb.arrow_name[phi]);
  };
  auto is_id = [&](const CommaData::Arrow& e) {
    return e.so == e.to && a.is_identity(e.f) && bb.is_identity(e.beta);
  };
  auto ar_name = [&](const CommaData::Arrow& e) -> std::string {
    if (is_id(e)) return "id:" + ob_name(e.so);
    auto [x, phi] = data.objects[e.so];
    auto [y, psi] = data.objects[e.to];
    return "(" + a.arrow_name[e.f] + "," + bb.arrow_name[e.beta] + ":" +
           bb.arrow_name[phi] + "=>" + bb.arrow_name[psi] + ")";
  };

  CategoryBuilder bld(a.name + "^" + (u.name.empty() ? "u" : u.name));
  for (int i = 0; i < static_cast<int>(data.objects.size()); ++i) bld.object(ob_name(i));
  for (const auto& e : data.arrows)
    if (!is_id(e)) bld.arrow(ar_name(e), ob_name(e.so), ob_name(e.to));
  for (const auto& e1 : data.arrows) {
    if (is_id(e1)) continue;
    for (const auto& e2 : data.arrows) {
      if (is_id(e2) || e2.so != e1.to) continue;
      CommaData::Arrow c{a.compose(e2.f, e1.f), bb.compose(e2.beta, e1.beta), e1.so,
                         e2.to};
      bld.composite(ar_name(e2), ar_name(e1), ar_name(c));
    }
  }

  MappingCategory out;
  out.cat = bld.build();

  // object/arrow lookup tables from comma data into the built category
  std::vector<int> oidx(data.objects.size());
  out.object_data.resize(data.objects.size());
  for (size_t i = 0; i < data.objects.size(); ++i) {
    oidx[i] = *out.cat->object_index(ob_name(static_cast<int>(i)));
    out.object_data[oidx[i]] = data.objects[i];
  }
  auto find_arrow = [&](const CommaData::Arrow& e) {
    auto idx = out.cat->arrow_index(ar_name(e));
    assert(idx.has_value());
    return *idx;
  };

  Functor i_f, pi_f, r_f;
  i_f.name = "i";
  i_f.dom = u.dom;
  i_f.cod = out.cat;
  i_f.ob.resize(a.objects());
  i_f.fl.resize(a.arrows());
  auto comma_object = [&](int x, int phi) {
    for (size_t k = 0; k < data.objects.size(); ++k)
      if (data.objects[k].first == x && data.objects[k].second == phi)
        return static_cast<int>(k);
    assert(false);
    return -1;
  };
  for (int x = 0; x < a.objects(); ++x)
    i_f.ob[x] = oidx[comma_object(x, bb.id_arrow[u.ob[x]])];
  for (int f = 0; f < a.arrows(); ++f) {
    CommaData::Arrow e{f, u.fl[f], comma_object(a.src[f], bb.id_arrow[u.ob[a.src[f]]]),
                       comma_object(a.dst[f], bb.id_arrow[u.ob[a.dst[f]]])};
    i_f.fl[f] = is_id(e) ? out.cat->id_arrow[oidx[e.so]] : find_arrow(e);
  }
  validate_functor(i_f);

  pi_f.name = "pi";
  pi_f.dom = out.cat;
  pi_f.cod = u.cod;
  pi_f.ob.resize(out.cat->objects());
  pi_f.fl.resize(out.cat->arrows());
  r_f.name = "r";
  r_f.dom = out.cat;
  r_f.cod = u.dom;
  r_f.ob.resize(out.cat->objects());
  r_f.fl.resize(out.cat->arrows());
  for (size_t k = 0; k < data.objects.size(); ++k) {
    pi_f.ob[oidx[k]] = bb.dst[data.objects[k].second];
    r_f.ob[oidx[k]] = data.objects[k].first;
  }
  // identities first, then named squares
  for (int e = 0; e < out.cat->arrows(); ++e) {
    if (out.cat->is_identity(e)) {
      pi_f.fl[e] = bb.id_arrow[pi_f.ob[out.cat->src[e]]];
      r_f.fl[e] = a.id_arrow[r_f.ob[out.cat->src[e]]];
    }
  }
  for (const auto& e : data.arrows) {
    if (is_id(e)) continue;
    int idx = find_arrow(e);
    pi_f.fl[idx] = e.beta;
    r_f.fl[idx] = e.f;
  }
  validate_functor(pi_f);
  validate_functor(r_f);

  out.i = std::move(i_f);
  out.pi = std::move(pi_f);
  out.r = std::move(r_f);
  return out;
}

// ------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
  const FiniteCategory& c;
  const FiniteCategory& d;
  std::vector<int> ob;   // c-object -> d-object or -1
  std::vector<char> used;
  std::vector<int> fl;   // c-arrow -> d-arrow or -1

  bool arrows_ok() {
    // all arrows assigned: verify composition and identities
    for (int x = 0; x < c.objects(); ++x)
      if (fl[c.id_arrow[x]] != d.id_arrow[ob[x]]) return false;
    for (int g = 0; g < c.arrows(); ++g)
      for (int f = 0; f < c.arrows(); ++f)
        if (c.composable(g, f))
          if (fl[c.compose(g, f)] != d.compose(fl[g], fl[f])) return false;
    return true;
  }

  bool assign_homs(int pair_idx, const std::vector<std::pair<int, int>>& pairs) {
    if (pair_idx == static_cast<int>(pairs.size())) return arrows_ok();
    auto [x, y] = pairs[pair_idx];
    std::vector<int> from, to;
    for (int f : c.hom(x, y))
      if (!c.is_identity(f)) from.push_back(f);
    for (int f : d.hom(ob[x], ob[y]))
      if (!d.is_identity(f)) to.push_back(f);
    if (from.size() != to.size()) return false;
    std::sort(to.begin(), to.end());
    do {
      for (size_t k = 0; k < from.size(); ++k) fl[from[k]] = to[k];
      if (assign_homs(pair_idx + 1, pairs)) return true;
    } while (std::next_permutation(to.begin(), to.end()));
    for (int f : from) fl[f] = -1;
    return false;
  }

  bool assign_objects(int x) {
    if (x == c.objects()) {
      for (int i = 0; i < c.objects(); ++i) fl[c.id_arrow[i]] = d.id_arrow[ob[i]];
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < c.objects(); ++i)
        for (int j = 0; j < c.objects(); ++j) pairs.push_back({i, j});
      return assign_homs(0, pairs);
    }
    for (int y = 0; y < d.objects(); ++y) {
      if (used[y]) continue;
      if (c.hom(x, x).size() != d.hom(y, y).size()) continue;
      ob[x] = y;
      used[y] = 1;
      bool homs_match = true;
      for (int i = 0; i <= x && homs_match; ++i)
        homs_match = c.hom(x, i).size() == d.hom(y, ob[i]).size() &&
                     c.hom(i, x).size() == d.hom(ob[i], y).size();
      if (homs_match && assign_objects(x + 1)) return true;
      used[y] = 0;
      ob[x] = -1;
    }
    return false;
  }
};

} // namespace

std::optional<CatIso> find_isomorphism(const FiniteCategory& c,
                                       const FiniteCategory& d) {
  if (c.objects() != d.objects() || c.arrows() != d.arrows()) return std::nullopt;
  IsoSearch s{c, d, std::vector<int>(c.objects(), -1),
              std::vector<char>(d.objects(), 0), std::vector<int>(c.arrows(), -1)};
  if (!s.assign_objects(0)) return std::nullopt;
  return CatIso{s.ob, s.fl};
}

bool is_isomorphic(const FiniteCategory& c, const FiniteCategory& d) {
  return find_isomorphism(c, d).has_value();
}

} // namespace cleave
