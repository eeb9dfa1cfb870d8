#include <algorithm>

#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/simplicial.hpp"

using namespace cleave;

namespace {
int nondeg(const SSPtr& x, int n) {
  int k = 0;
  for (int c = 0; c < x->size(n); ++c)
    if (!x->degenerate[n][c]) ++k;
  return k;
}
} // namespace

TEST_CASE("nerve of a chain poset") {
  const Corpus& c = builtin_corpus();
  SSPtr n2 = nerve(c.category.at("[2]"), 4);
  n2->validate();
  // level n holds the monotone (n+1)-tuples in {0,1,2}
  CHECK(n2->size(0) == 3);
  CHECK(n2->size(1) == 6);
  CHECK(n2->size(2) == 10);
  CHECK(n2->size(3) == 15);
  CHECK(n2->size(4) == 21);
  CHECK(nondeg(n2, 0) == 3);
  CHECK(nondeg(n2, 1) == 3);
  CHECK(nondeg(n2, 2) == 1); // the full chain 0 -> 1 -> 2
  CHECK(nondeg(n2, 3) == 0);
}

TEST_CASE("nerve of the two-element group") {
  const Corpus& c = builtin_corpus();
  SSPtr b = nerve(c.category.at("z2"), 5);
  b->validate();
  for (int n = 0; n <= 5; ++n) {
    CHECK(b->size(n) == (1 << n));
    CHECK(nondeg(b, n) == 1); // the chain (t, t, ..., t)
  }
}

TEST_CASE("face tables are actually checked") {
  const Corpus& c = builtin_corpus();
  SSet s = *nerve(c.category.at("[1]"), 2);
  CHECK_FALSE(s.check().has_value());
  s.face[2][0][0] = (s.face[2][0][0] + 1) % s.size(1);
  CHECK(s.check().has_value());
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("functors act on nerves") {
  const Corpus& c = builtin_corpus();
  const Functor& u = c.functor.at("stair");
  SSPtr src = nerve(u.dom, 3), dst = nerve(u.cod, 3);
  SMap f = nerve_map(u, src, dst);
  validate_smap(f);
  CHECK_FALSE(is_level_bijection(f));
  SMap i = nerve_map(identity_functor(u.dom), src, src);
  validate_smap(i);
  CHECK(is_level_bijection(i));
}

TEST_CASE("product of simplicial sets") {
  const Corpus& c = builtin_corpus();
  SSPtr n1 = nerve(c.category.at("[1]"), 3);
  SSPtr p = sset_product(n1, n1);
  p->validate();
  for (int n = 0; n <= 3; ++n)
    CHECK(p->size(n) == (n + 2) * (n + 2));
}

TEST_CASE("diagonal, codiagonal and the inclusion between them") {
  const Corpus& c = builtin_corpus();
  DiagramOfSSets z = nerve_diagram(c.diagram.at("constcirc"), 3);
  validate_sset_diagram(z);
  Hc h = hc(z, 3);
  h.bis->validate();
  // constant value: each (m, n) cell pairs an n-chain of the base interval
  // with an m-chain of the circle-shaped category
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      CHECK(h.bis->size(m, n) == (n + 2) * (2 * m + 2));
  SSPtr dg = diagonal(h.bis);
  dg->validate();
  for (int n = 0; n <= 3; ++n)
    CHECK(dg->size(n) == h.bis->size(n, n));
  SSPtr cd = codiagonal(h.bis);
  cd->validate();
  CHECK(cd->size(0) == dg->size(0));
  SMap th = theta(h.bis, dg, cd);
  validate_smap(th);
  for (int n = 0; n <= 3; ++n) {
    // injective level by level
    std::vector<int> img(th.map[n]);
    std::sort(img.begin(), img.end());
    CHECK(std::adjacent_find(img.begin(), img.end()) == img.end());
  }
}

TEST_CASE("group actions pass to nerves") {
  const Corpus& c = builtin_corpus();
  SimplicialGroupAction a = nerve_action(c.action.at("fcirc"), 3);
  validate_action(a);
  CatPtr g = a.group;
  int t = *g->arrow_index("t");
  for (int n = 0; n <= 3; ++n)
    for (int cell = 0; cell < a.space->size(n); ++cell)
      CHECK(a.act[t][n][a.act[t][n][cell]] == cell); // involution
}

TEST_CASE("twisted product over the group nerve") {
  const Corpus& c = builtin_corpus();
  CatPtr z2 = c.category.at("z2");
  SSPtr bz2 = nerve(z2, 3);
  SimplicialGroupAction a = nerve_action(c.action.at("fcirc"), 3);
  TwistingFunction t = canonical_twisting(z2, bz2);
  SSPtr x = twisted_cartesian_product(a, t);
  x->validate();
  for (int n = 0; n <= 3; ++n)
    CHECK(x->size(n) == a.space->size(n) * bz2->size(n));

  TwistingFunction broken = t;
  int tarw = *z2->arrow_index("t");
  int idarw = z2->id_arrow[0];
  broken.tau[1][1] = broken.tau[1][1] == tarw ? idarw : tarw;
  CHECK_THROWS_AS(twisted_cartesian_product(a, broken), Error);
}
