#include "cleave/corpus.hpp"

#include <cassert>
#include <utility>
#include <vector>

namespace cleave {

namespace {

Functor make_functor(std::string name, CatPtr dom, CatPtr cod,
                     const std::vector<std::pair<std::string, std::string>>& ob,
                     const std::vector<std::pair<std::string, std::string>>& fl) {
  Functor u;
  u.name = std::move(name);
  u.dom = dom;
  u.cod = cod;
  u.ob.assign(dom->objects(), -1);
  u.fl.assign(dom->arrows(), -1);
  for (const auto& [x, y] : ob) u.ob[*dom->object_index(x)] = *cod->object_index(y);
  for (const auto& [f, g] : fl) u.fl[*dom->arrow_index(f)] = *cod->arrow_index(g);
  for (int o = 0; o < dom->objects(); ++o)
    u.fl[dom->id_arrow[o]] = cod->id_arrow[u.ob[o]];
  validate_functor(u);
  return u;
}

CatPtr make_disc2() {
  CategoryBuilder b("disc2");
  b.object("a");
  b.object("b");
  return b.build();
}

CatPtr make_circ() {
  CategoryBuilder b("circ");
  b.object("x");
  b.object("y");
  b.arrow("f", "x", "y");
  b.arrow("g", "x", "y");
  return b.build();
}

CatPtr make_z2() {
  CategoryBuilder b("z2");
  b.object("e");
  b.arrow("t", "e", "e");
  b.composite("t", "t", "id:e");
  return b.build();
}

CatPtr make_z4() {
  CategoryBuilder b("z4");
  b.object("e");
  b.arrow("r1", "e", "e");
  b.arrow("r2", "e", "e");
  b.arrow("r3", "e", "e");
  const char* nm[4] = {"id:e", "r1", "r2", "r3"};
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) b.composite(nm[i], nm[j], nm[(i + j) % 4]);
  return b.build();
}

// Two parallel lifts of 0->2 joined by an iso between the targets; the
// smallest total category whose projection to [2] has competing cleavages.
CatPtr make_loop3() {
  CategoryBuilder b("loop3");
  for (int i = 0; i < 4; ++i) b.object(std::to_string(i));
  b.arrow("a01", "0", "1");
  b.arrow("a12", "1", "2");
  b.arrow("a13", "1", "3");
  b.arrow("a02", "0", "2");
  b.arrow("a03", "0", "3");
  b.arrow("u", "2", "3");
  b.arrow("v", "3", "2");
  b.composite("a12", "a01", "a02");
  b.composite("a13", "a01", "a03");
  b.composite("u", "a02", "a03");
  b.composite("v", "a03", "a02");
  b.composite("u", "a12", "a13");
  b.composite("v", "a13", "a12");
  b.composite("u", "v", "id:3");
  b.composite("v", "u", "id:2");
  return b.build();
}

// A prefibration that is not a fibration: h is the cartesian lift over
// 0->2, so the composite g1∘f = w∘h lands outside the cartesian arrows,
// and f is cartesian without being strongly cartesian.
CatPtr make_prefib() {
  CategoryBuilder b("prefib");
  b.object("e0");
  b.object("e1");
  b.object("e2");
  b.object("e2'");
  b.arrow("f", "e0", "e1");
  b.arrow("g1", "e1", "e2");
  b.arrow("c", "e0", "e2");
  b.arrow("h", "e0", "e2'");
  b.arrow("w", "e2'", "e2");
  b.composite("g1", "f", "c");
  b.composite("w", "h", "c");
  return b.build();
}

Cleavage pick_cleavage(const std::vector<Cleavage>& all, const CertPtr& cert,
                       const std::string& lift02, const std::string& lift12,
                       std::string name) {
  const FiniteCategory& e = cert->total();
  const FiniteCategory& b = cert->base();
  int e0 = *e.object_index("0"), e1 = *e.object_index("1");
  int b02 = *b.arrow_index("0->2"), b12 = *b.arrow_index("1->2");
  for (Cleavage c : all) {
    if (c.lift_for(e0, b02) == *e.arrow_index(lift02) &&
        c.lift_for(e1, b12) == *e.arrow_index(lift12)) {
      c.name = std::move(name);
      return c;
    }
  }
  assert(false && "no such cleavage");
  return all.front();
}

Corpus build_corpus() {
  Corpus c;

  for (int n = 0; n <= 3; ++n)
    c.category["[" + std::to_string(n) + "]"] = ordinal(n);
  CatPtr ord0 = c.category["[0]"], ord1 = c.category["[1]"];
  CatPtr ord2 = c.category["[2]"], ord3 = c.category["[3]"];

  CatPtr disc2 = c.category["disc2"] = make_disc2();
  CatPtr circ = c.category["circ"] = make_circ();
  CatPtr z2 = c.category["z2"] = make_z2();
  CatPtr z4 = c.category["z4"] = make_z4();
  CatPtr loop3 = c.category["loop3"] = make_loop3();
  CatPtr prefib = c.category["prefib"] = make_prefib();

  ArrowCategory arr2 = arrow_category(ord2);
  c.category[arr2.cat->name] = arr2.cat;
  CatPtr circx1 = product(circ, ord1);
  c.category[circx1->name] = circx1;
  CatPtr ord1x2 = product(ord1, ord2);
  c.category[ord1x2->name] = ord1x2;

  c.functor["stair"] = make_functor(
      "stair", ord2, ord1, {{"0", "0"}, {"1", "1"}, {"2", "1"}},
      {{"0->1", "0->1"}, {"0->2", "0->1"}, {"1->2", "id:1"}});
  c.functor["loop3"] = make_functor(
      "loop3", loop3, ord2,
      {{"0", "0"}, {"1", "1"}, {"2", "2"}, {"3", "2"}},
      {{"a01", "0->1"}, {"a12", "1->2"}, {"a13", "1->2"},
       {"a02", "0->2"}, {"a03", "0->2"}, {"u", "id:2"}, {"v", "id:2"}});
  c.functor["cod2"] = arr2.cod_functor;
  c.functor["prodcirc"] = product_projection(circx1, circ, ord1, "prodcirc");
  c.functor["prodord"] = product_projection(ord1x2, ord1, ord2, "prodord");
  c.functor["id2"] = identity_functor(ord2);
  c.functor["z4z2"] = make_functor(
      "z4z2", z4, z2, {{"e", "e"}},
      {{"r1", "t"}, {"r2", "id:e"}, {"r3", "t"}});
  c.functor["prefib"] = make_functor(
      "prefib", prefib, ord2,
      {{"e0", "0"}, {"e1", "1"}, {"e2", "2"}, {"e2'", "2"}},
      {{"f", "0->1"}, {"g1", "1->2"}, {"c", "0->2"}, {"h", "0->2"},
       {"w", "id:2"}});
  c.functor["notprefib"] = make_functor("notprefib", ord0, ord1, {{"0", "0"}}, {});
  c.functor["walk"] = make_functor("walk", ord1, ord2, {{"0", "0"}, {"1", "2"}},
                                   {{"0->1", "0->2"}});
  c.functor["collapse"] = make_functor(
      "collapse", ord2, ord0, {{"0", "0"}, {"1", "0"}, {"2", "0"}},
      {{"0->1", "id:0"}, {"0->2", "id:0"}, {"1->2", "id:0"}});
  c.functor["swap"] =
      make_functor("swap", circ, circ, {{"x", "x"}, {"y", "y"}},
                   {{"f", "g"}, {"g", "f"}});
  c.functor["swapdisc"] =
      make_functor("swapdisc", disc2, disc2, {{"a", "b"}, {"b", "a"}}, {});

  for (const char* k : {"stair", "loop3", "cod2", "prodcirc", "prodord",
                        "id2", "z4z2", "prefib", "notprefib"})
    c.cert[k] = certify_fibration(c.functor[k]);

  for (const char* k : {"stair", "cod2", "prodcirc", "prodord", "id2"})
    c.cleavage[k] = default_cleavage(c.cert[k], k);

  {
    auto all = enumerate_cleavages(c.cert["loop3"], 100);
    assert(all.size() == 4);
    c.cleavage["loop3-s1"] = pick_cleavage(all, c.cert["loop3"], "a02", "a12", "loop3-s1");
    c.cleavage["loop3-s2"] = pick_cleavage(all, c.cert["loop3"], "a03", "a13", "loop3-s2");
    c.cleavage["loop3-s4"] = pick_cleavage(all, c.cert["loop3"], "a02", "a13", "loop3-s4");
    c.cleavage["loop3-bad"] = pick_cleavage(all, c.cert["loop3"], "a03", "a12", "loop3-bad");
  }
  {
    auto all = enumerate_cleavages(c.cert["z4z2"], 100);
    assert(all.size() == 2);
    for (Cleavage cl : all) {
      const FiniteCategory& e = *z4;
      std::string k = cl.lift_for(0, *z2->arrow_index("t")) == *e.arrow_index("r1")
                          ? "z4z2-1"
                          : "z4z2-3";
      cl.name = k;
      c.cleavage[k] = cl;
    }
  }

  Functor collapse1 = make_functor("!", ord1, ord0, {{"0", "0"}, {"1", "0"}},
                                   {{"0->1", "id:0"}});
  {
    DiagramOfCategories z{"f1", ord1, {ord1, ord0}, {}};
    z.map.assign(ord1->arrows(), Functor{});
    z.map[ord1->id_arrow[0]] = identity_functor(ord1);
    z.map[ord1->id_arrow[1]] = identity_functor(ord0);
    z.map[*ord1->arrow_index("0->1")] = collapse1;
    validate_diagram(z);
    c.diagram["f1"] = z;
  }
  {
    DiagramOfCategories z{"constcirc", ord1, {circ, circ}, {}};
    z.map.assign(ord1->arrows(), Functor{});
    z.map[ord1->id_arrow[0]] = identity_functor(circ);
    z.map[ord1->id_arrow[1]] = identity_functor(circ);
    z.map[*ord1->arrow_index("0->1")] = identity_functor(circ);
    validate_diagram(z);
    c.diagram["constcirc"] = z;
  }

  {
    Functor circ0 = make_functor("circ!", circ, ord0, {{"x", "0"}, {"y", "0"}},
                                 {{"f", "id:0"}, {"g", "id:0"}});
    DiagramOfCategories z{"f2", ord1, {circ, ord0}, {}};
    z.map.assign(ord1->arrows(), Functor{});
    z.map[ord1->id_arrow[0]] = identity_functor(circ);
    z.map[ord1->id_arrow[1]] = identity_functor(ord0);
    z.map[*ord1->arrow_index("0->1")] = circ0;
    validate_diagram(z);
    c.diagram["f2"] = z;
  }

  {
    CatGroupAction a{"fcirc", z2, circ, {}};
    a.by.assign(z2->arrows(), Functor{});
    a.by[z2->id_arrow[0]] = identity_functor(circ);
    a.by[*z2->arrow_index("t")] = c.functor["swap"];
    validate_action(a);
    c.action["fcirc"] = a;
    c.diagram["fcirc"] = action_diagram(a);
  }
  {
    CatGroupAction a{"fdisc", z2, disc2, {}};
    a.by.assign(z2->arrows(), Functor{});
    a.by[z2->id_arrow[0]] = identity_functor(disc2);
    a.by[*z2->arrow_index("t")] = c.functor["swapdisc"];
    validate_action(a);
    c.action["fdisc"] = a;
    c.diagram["fdisc"] = action_diagram(a);
  }

  for (const char* k : {"f1", "f2", "fcirc", "fdisc", "constcirc"})
    c.gro["gro-" + std::string(k)] = grothendieck(c.diagram[k]);

  (void)ord3;
  return c;
}

}  // namespace

const Corpus& builtin_corpus() {
  static const Corpus c = build_corpus();
  return c;
}

Functor product_projection(CatPtr ab, CatPtr a, CatPtr b, std::string name) {
  Functor p;
  p.name = std::move(name);
  p.dom = ab;
  p.cod = b;
  p.ob.resize(ab->objects());
  p.fl.resize(ab->arrows());
  assert(ab->objects() == a->objects() * b->objects());
  for (int o = 0; o < ab->objects(); ++o) p.ob[o] = o % b->objects();
  for (int k = 0; k < ab->arrows(); ++k) {
    if (ab->is_identity(k)) {
      p.fl[k] = b->id_arrow[p.ob[ab->src[k]]];
      continue;
    }
    // pair arrows are named "(F,G)"; split at the comma both factors accept
    const std::string& nm = ab->arrow_name[k];
    assert(nm.front() == '(' && nm.back() == ')');
    int found = -1;
    for (size_t i = 1; i + 1 < nm.size(); ++i) {
      if (nm[i] != ',') continue;
      if (a->arrow_index(nm.substr(1, i - 1)) &&
          b->arrow_index(nm.substr(i + 1, nm.size() - i - 2))) {
        found = *b->arrow_index(nm.substr(i + 1, nm.size() - i - 2));
        break;
      }
    }
    assert(found >= 0);
    p.fl[k] = found;
  }
  validate_functor(p);
  return p;
}

}  // namespace cleave
