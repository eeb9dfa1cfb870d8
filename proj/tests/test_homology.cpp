#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/homology.hpp"

using namespace cleave;

TEST_CASE("normalized chains keep only nondegenerate cells") {
  const Corpus& c = builtin_corpus();
  NormalizedChains nc = normalized_chain_complex(nerve(c.category.at("circ"), 4));
  nc.cx.validate();
  // two objects, two parallel arrows, nothing composable beyond them
  CHECK(nc.cells[0].size() == 2);
  CHECK(nc.cells[1].size() == 2);
  CHECK(nc.cells[2].size() == 0);
  CHECK(nc.cells[3].size() == 0);
}

TEST_CASE("the two-arrow category has circle homology") {
  const Corpus& c = builtin_corpus();
  PresentedComplex cx = normalized_chain_complex(nerve(c.category.at("circ"), 4)).cx;
  CHECK(homology(cx, 0).to_string() == "Z");
  CHECK(homology(cx, 1).to_string() == "Z");
  CHECK(homology(cx, 2).to_string() == "0");
  CHECK(homology(cx, 3).to_string() == "0");
}

TEST_CASE("homology of the two-element group category") {
  const Corpus& c = builtin_corpus();
  PresentedComplex cx = normalized_chain_complex(nerve(c.category.at("z2"), 4)).cx;
  const char* want[4] = {"Z", "Z/2", "0", "Z/2"};
  for (int n = 0; n <= 3; ++n) CHECK(homology(cx, n).to_string() == want[n]);

  // over fields the torsion flattens out or vanishes
  for (int n = 0; n <= 3; ++n) {
    CHECK(homology_over_field(cx, n, parse_coeff("F2")) == 1);
    CHECK(homology_over_field(cx, n, parse_coeff("Q")) == (n == 0 ? 1 : 0));
    CHECK(homology_over_field(cx, n, parse_coeff("F3")) == (n == 0 ? 1 : 0));
  }
}

TEST_CASE("induced maps on homology") {
  const Corpus& c = builtin_corpus();
  const Functor& u = c.functor.at("stair");
  NormalizedChains nsrc = normalized_chain_complex(nerve(u.dom, 4));
  NormalizedChains ndst = normalized_chain_complex(nerve(u.cod, 4));
  SMap f = nerve_map(u, nsrc.space, ndst.space);
  CHECK(map_is_homology_iso(f, 3)); // both sides are points

  Functor pt;
  pt.name = "pt";
  pt.dom = c.category.at("[0]");
  pt.cod = c.category.at("circ");
  int x = *pt.cod->object_index("x");
  pt.ob = {x};
  pt.fl = {pt.cod->id_arrow[x]};
  validate_functor(pt);
  NormalizedChains psrc = normalized_chain_complex(nerve(pt.dom, 2));
  NormalizedChains pdst = normalized_chain_complex(nerve(pt.cod, 2));
  SMap g = nerve_map(pt, psrc.space, pdst.space);
  InducedMap m1 = induced_map_on_homology(g, psrc, pdst, 1);
  CHECK_FALSE(m1.iso); // 0 -> Z
  CHECK(induced_map_on_homology(g, psrc, pdst, 0).iso);
  CHECK_FALSE(map_is_homology_iso(g, 1));

  bool refused = false;
  try {
    map_is_homology_iso(g, 2); // cap 2 only determines degrees <= 1
  } catch (const Error& e) {
    refused = e.kind() == "DegreeAboveGuarantee";
  }
  CHECK(refused);
}

TEST_CASE("constant coefficients reproduce nerve homology") {
  const Corpus& c = builtin_corpus();
  CatModule a = constant_module(c.category.at("circ"));
  validate_module(a);
  CHECK(coefficient_homology(a, 4, 0).to_string() == "Z");
  CHECK(coefficient_homology(a, 4, 1).to_string() == "Z");
  CHECK(coefficient_homology(a, 4, 2).to_string() == "0");
}

TEST_CASE("sign coefficients over the two-element group") {
  const Corpus& c = builtin_corpus();
  CatPtr z2 = c.category.at("z2");
  CatModule sgn;
  sgn.name = "sign";
  sgn.base = z2;
  sgn.gens = {1};
  sgn.rels = {IntMat(1, 0)};
  sgn.act.assign(z2->arrows(), IntMat(1, 1));
  sgn.act[z2->id_arrow[0]].at(0, 0) = 1;
  sgn.act[*z2->arrow_index("t")].at(0, 0) = -1;
  validate_module(sgn);

  const char* want[4] = {"Z/2", "0", "Z/2", "0"};
  for (int n = 0; n <= 3; ++n)
    CHECK(coefficient_homology(sgn, 4, n).to_string() == want[n]);

  bool refused = false;
  try {
    coefficient_homology(sgn, 4, 4);
  } catch (const Error& e) {
    refused = e.kind() == "DegreeAboveGuarantee";
  }
  CHECK(refused);

  CatModule broken = sgn;
  broken.act[*z2->arrow_index("t")].at(0, 0) = 2; // t.t = id is violated
  bool lawful = true;
  try {
    validate_module(broken);
  } catch (const Error& e) {
    lawful = e.kind() != "FunctorialityFailure";
  }
  CHECK_FALSE(lawful);
}

TEST_CASE("fiber homologies form a module over the base") {
  const Corpus& c = builtin_corpus();
  const Cleavage& cl = c.gro.at("gro-fcirc").distinguished;

  CatModule h0 = fiber_homology_module(cl, 0, 4);
  validate_module(h0);
  CHECK(h0.group_at(0).to_string() == "Z");
  const char* triv[4] = {"Z", "Z/2", "0", "Z/2"};
  for (int n = 0; n <= 3; ++n)
    CHECK(coefficient_homology(h0, 4, n).to_string() == triv[n]);

  // the group generator flips the fiber's loop, so degree one twists
  CatModule h1 = fiber_homology_module(cl, 1, 4);
  validate_module(h1);
  CHECK(h1.group_at(0).to_string() == "Z");
  const char* sgn[4] = {"Z/2", "0", "Z/2", "0"};
  for (int n = 0; n <= 3; ++n)
    CHECK(coefficient_homology(h1, 4, n).to_string() == sgn[n]);
}

TEST_CASE("bicomplexes and their total complexes") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("stair"), 3);
  Bicomplex bc = fibration_bicomplex(nf);
  bc.validate();
  TotalComplex tc = total_complex(bc);
  tc.cx.validate();
  CHECK(homology(tc.cx, 0).to_string() == "Z"); // contractible total category
  CHECK(homology(tc.cx, 1).to_string() == "0");
  CHECK(eilenberg_zilber_check(nf.bis, 2));

  DiagramOfSSets z = nerve_diagram(c.diagram.at("constcirc"), 3);
  Hc h = hc(z, 3);
  Bicomplex hbc = bicomplex_from(h.bis);
  hbc.validate();
  CHECK(eilenberg_zilber_check(h.bis, 2));
  TotalComplex htc = total_complex(hbc);
  CHECK(homology(htc.cx, 0).to_string() == "Z");
  CHECK(homology(htc.cx, 1).to_string() == "Z"); // the circle survives
}
