#include "doctest.h"

#include "cleave/category.hpp"
#include "cleave/corpus.hpp"
#include "cleave/error.hpp"

using namespace cleave;

TEST_CASE("ordinal categories have binomial-sized nerve data") {
  CatPtr c = ordinal(2);
  CHECK(c->objects() == 3);
  CHECK(c->arrows() == 6); // 3 identities + 0->1, 0->2, 1->2
  int f = *c->arrow_index("0->1");
  int g = *c->arrow_index("1->2");
  CHECK(c->compose(g, f) == *c->arrow_index("0->2"));
  CHECK(c->hom(0, 2).size() == 1);
  CHECK(c->hom(2, 0).empty());
}

TEST_CASE("builder refuses missing and inconsistent composition tables") {
  {
    CategoryBuilder b("m");
    b.object("x");
    b.object("y");
    b.object("z");
    b.arrow("f", "x", "y");
    b.arrow("g", "y", "z");
    CHECK_THROWS_AS(b.build(), Error);
  }
  {
    CategoryBuilder b("i");
    b.object("x");
    b.arrow("f", "x", "x");
    b.composite("f", "id:x", "id:x"); // identity law broken
    CHECK_THROWS_AS(b.build(), Error);
  }
}

TEST_CASE("non-associative tables are refused") {
  // three parallel endomaps with a deliberately twisted table
  CategoryBuilder b("na");
  b.object("x");
  b.arrow("f", "x", "x");
  b.arrow("g", "x", "x");
  b.arrow("h", "x", "x");
  // f.f = g, f.g = h, g.f = h, then force (f.f).f != f.(f.f)
  b.composite("f", "f", "g");
  b.composite("f", "g", "h");
  b.composite("g", "f", "f"); // breaks associativity: (ff)f = gf = f, f(ff) = fg = h
  b.composite("g", "g", "f");
  b.composite("f", "h", "f");
  b.composite("h", "f", "f");
  b.composite("g", "h", "f");
  b.composite("h", "g", "f");
  b.composite("h", "h", "f");
  CHECK_THROWS_AS(b.build(), Error);
}

TEST_CASE("product and arrow categories have the expected shapes") {
  CatPtr a = ordinal(1);
  CatPtr p = product(a, a); // commuting square
  CHECK(p->objects() == 4);
  CHECK(p->arrows() == 9);

  ArrowCategory arr = arrow_category(ordinal(1));
  CHECK(arr.cat->objects() == 3); // id_0, id_1, 0->1
  validate_functor(arr.dom_functor);
  validate_functor(arr.cod_functor);
}

TEST_CASE("fibers and homotopy fibers of the walking arrow") {
  const Corpus& c = builtin_corpus();
  const Functor& stair = c.functor.at("stair");
  Subcategory f1 = fiber(stair, 1);
  CHECK(f1.cat->objects() == 2); // objects 1, 2 of the staircase
  CHECK(f1.cat->arrows() == 3);
  validate_functor(f1.inclusion);

  HomotopyFiber h = homotopy_fiber(stair, 1);
  CHECK(h.cat->objects() == 3); // (0, 0->1), (1, id), (2, id)
  validate_functor(h.fiber_inclusion);

  CHECK_THROWS_AS(fiber(stair, 7), Error);
}

TEST_CASE("mapping category factorization is exact") {
  const Corpus& c = builtin_corpus();
  const Functor& u = c.functor.at("walk"); // [1] -> [2], 0 |-> 0, 1 |-> 2
  MappingCategory mc = mapping_category(u);
  validate_functor(mc.i);
  validate_functor(mc.pi);
  validate_functor(mc.r);
  CHECK(functors_equal(compose(mc.pi, mc.i), u));
  CHECK(functors_equal(compose(mc.r, mc.i), identity_functor(u.dom)));
}

TEST_CASE("functor validation catches non-functorial tables") {
  CatPtr a = ordinal(2);
  Functor u;
  u.name = "broken";
  u.dom = a;
  u.cod = a;
  u.ob = {0, 1, 2};
  u.fl.assign(a->arrows(), -1);
  for (int x = 0; x < 3; ++x) u.fl[a->id_arrow[x]] = a->id_arrow[x];
  u.fl[*a->arrow_index("0->1")] = *a->arrow_index("0->1");
  u.fl[*a->arrow_index("1->2")] = *a->arrow_index("1->2");
  u.fl[*a->arrow_index("0->2")] = *a->arrow_index("0->1"); // wrong target
  CHECK_THROWS_AS(validate_functor(u), Error);
}
