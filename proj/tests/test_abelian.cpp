#include "doctest.h"

#include "cleave/abelian.hpp"
#include "cleave/error.hpp"

using namespace cleave;

namespace {

IntMat from(std::initializer_list<std::initializer_list<long long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  IntMat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

} // namespace

TEST_CASE("canonical forms of groups from relations") {
  CHECK(group_from_relations(1, IntMat(1, 0)).to_string() == "Z");
  CHECK(group_from_relations(1, from({{2}})).to_string() == "Z/2");
  CHECK(group_from_relations(2, from({{2, 0}, {0, 4}})).to_string() ==
        "Z/2 + Z/4");
  CHECK(group_from_relations(2, from({{1, 0}, {0, 1}})).to_string() == "0");
  // gcd-coupled relations: [[2,4]] on Z^2 -> Z + Z/2
  CHECK(group_from_relations(2, from({{2, 4}})).to_string() == "Z + Z/2");
}

TEST_CASE("homology of a hand-built presented complex") {
  // 0 -> Z --2--> Z -> 0 concentrated in degrees 1, 0
  PresentedComplex cx;
  cx.gens = {1, 1};
  cx.rels = {IntMat(1, 0), IntMat(1, 0)};
  cx.diff = {IntMat(0, 0), from({{2}})};
  cx.validate();
  CHECK(homology_at(cx, 0).group.to_string() == "Z/2");
  CHECK(homology_at(cx, 1).group.to_string() == "0");
}

TEST_CASE("presented maps compose and certify isomorphisms") {
  PresentedComplex a; // Z/3 in degree 0
  a.gens = {1};
  a.rels = {from({{3}})};
  a.diff = {IntMat(0, 0)};
  a.validate();

  // multiplication by 2 is invertible mod 3; by 3 it is zero
  HomologyData ha = homology_at(a, 0);
  IntMat two = from({{2}});
  IntMat three = from({{3}});
  CHECK(presented_map_is_isomorphism(two, ha, ha));
  CHECK_FALSE(presented_map_is_isomorphism(three, ha, ha));
}

TEST_CASE("invalid complexes are refused") {
  PresentedComplex cx; // d^2 != 0
  cx.gens = {1, 1, 1};
  cx.rels = {IntMat(1, 0), IntMat(1, 0), IntMat(1, 0)};
  cx.diff = {IntMat(0, 0), from({{1}}), from({{1}})};
  CHECK_THROWS_AS(cx.validate(), Error);
}
