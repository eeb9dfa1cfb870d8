#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/fibration.hpp"

using namespace cleave;

TEST_CASE("certification separates the three classes") {
  const Corpus& c = builtin_corpus();
  CHECK(c.cert.at("stair")->cls == FibClass::Fibration);
  CHECK(c.cert.at("loop3")->cls == FibClass::Fibration);
  CHECK(c.cert.at("cod2")->cls == FibClass::Fibration);
  CHECK(c.cert.at("prefib")->cls == FibClass::Prefibration);
  CHECK(c.cert.at("notprefib")->cls == FibClass::NotPrefibration);
}

TEST_CASE("prefib: cartesian without strongly cartesian") {
  const Corpus& c = builtin_corpus();
  const CertPtr& cert = c.cert.at("prefib");
  const FiniteCategory& e = cert->total();
  int f = *e.arrow_index("f");
  CHECK(cert->cartesian[f] != 0);
  CHECK(cert->strongly_cartesian[f] == 0);
}

TEST_CASE("loop3 carries exactly four normal cleavages, two closed") {
  const Corpus& c = builtin_corpus();
  auto all = enumerate_cleavages(c.cert.at("loop3"), 100);
  CHECK(all.size() == 4);
  int closed = 0;
  for (const auto& cl : all) {
    validate_cleavage(cl);
    require_normal(cl);
    if (is_closed(cl)) ++closed;
  }
  CHECK(closed == 2);
  CHECK(is_closed(c.cleavage.at("loop3-s1")));
  CHECK(is_closed(c.cleavage.at("loop3-s2")));
  CHECK_FALSE(is_closed(c.cleavage.at("loop3-s4")));
  CHECK_FALSE(is_closed(c.cleavage.at("loop3-bad")));
}

TEST_CASE("closedness equals right cancellation for normal cleavages") {
  const Corpus& c = builtin_corpus();
  for (const char* k : {"loop3-s1", "loop3-s2", "loop3-s4", "loop3-bad",
                        "stair", "cod2"}) {
    const Cleavage& cl = c.cleavage.at(k);
    CHECK(is_closed(cl) == closed_by_right_cancellation(cl));
  }
}

TEST_CASE("enumeration bound is enforced") {
  const Corpus& c = builtin_corpus();
  CHECK_THROWS_AS(enumerate_cleavages(c.cert.at("loop3"), 3), Error);
}

TEST_CASE("cleavages and good maps are in bijection") {
  const Corpus& c = builtin_corpus();
  const CertPtr& cert = c.cert.at("loop3");
  MappingCategory mc = mapping_category(cert->p);
  for (const auto& cl : enumerate_cleavages(cert, 100)) {
    Functor s = good_map_from_cleavage(cl, mc);
    GoodMapCheck chk = check_good_map(s, mc, cert);
    CHECK(chk.good);
    Cleavage back = cleavage_from_good_map(s, mc);
    CHECK(back.lift == cl.lift);
    // the map is a strict functor exactly when the cleavage is closed
    CHECK(is_very_good(s, mc, cl) == is_closed(cl));
  }
}

TEST_CASE("base change functors act on fibers") {
  const Corpus& c = builtin_corpus();
  const Cleavage& cl = c.cleavage.at("stair");
  const FiniteCategory& b = cl.cert->base();
  int phi = *b.arrow_index("0->1");
  BaseChange bc = base_change(cl, phi);
  validate_functor(bc.functor);
  CHECK(bc.src_fiber.cat->objects() == 1); // fiber over 0
  CHECK(bc.dst_fiber.cat->objects() == 2); // fiber over 1
}
