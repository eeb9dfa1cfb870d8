#include "doctest.h"

#include <random>

#include "cleave/intmat.hpp"

using namespace cleave;

namespace {

void check_postconditions(const IntMat& a, const SmithForm& f) {
  // u a v == s
  IntMat uav = mul(mul(f.u, a), f.v);
  REQUIRE(uav.rows == f.s.rows);
  REQUIRE(uav.cols == f.s.cols);
  for (int r = 0; r < uav.rows; ++r)
    for (int c = 0; c < uav.cols; ++c) CHECK(uav.at(r, c) == f.s.at(r, c));
  // u uinv == id
  IntMat ui = mul(f.u, f.uinv);
  for (int r = 0; r < ui.rows; ++r)
    for (int c = 0; c < ui.cols; ++c)
      CHECK(ui.at(r, c) == (r == c ? 1 : 0));
  // diagonal, positive divisibility chain
  int n = std::min(f.s.rows, f.s.cols);
  for (int r = 0; r < f.s.rows; ++r)
    for (int c = 0; c < f.s.cols; ++c)
      if (r != c) CHECK(f.s.at(r, c) == 0);
  for (int t = 0; t < n; ++t) {
    if (t < f.rank)
      CHECK(f.s.at(t, t) > 0);
    else
      CHECK(f.s.at(t, t) == 0);
    if (t + 1 < f.rank) CHECK(f.s.at(t + 1, t + 1) % f.s.at(t, t) == 0);
  }
}

} // namespace

TEST_CASE("smith form of small known matrices") {
  {
    IntMat a(2, 2);
    a.at(0, 0) = 2; a.at(0, 1) = 4;
    a.at(1, 0) = 6; a.at(1, 1) = 8;
    SmithForm f = smith_normal_form(a);
    CHECK(f.rank == 2);
    CHECK(f.diag[0] == 2);
    CHECK(f.diag[1] == 4); // det = -8, gcd = 2
    check_postconditions(a, f);
  }
  {
    // boundary of the 2-simplex: H1 of the circle triangulation
    IntMat d(3, 3);
    d.at(0, 0) = -1; d.at(0, 1) = -1; d.at(0, 2) = 0;
    d.at(1, 0) = 1;  d.at(1, 1) = 0;  d.at(1, 2) = -1;
    d.at(2, 0) = 0;  d.at(2, 1) = 1;  d.at(2, 2) = 1;
    SmithForm f = smith_normal_form(d);
    CHECK(f.rank == 2);
    CHECK(f.diag[0] == 1);
    CHECK(f.diag[1] == 1);
    check_postconditions(d, f);
  }
  {
    IntMat z(3, 2); // zero matrix
    SmithForm f = smith_normal_form(z);
    CHECK(f.rank == 0);
    check_postconditions(z, f);
    IntMat k = kernel_basis(f);
    CHECK(k.cols == 2);
  }
}

TEST_CASE("kernel basis spans the integer kernel") {
  IntMat a(2, 3);
  a.at(0, 0) = 1; a.at(0, 1) = 2; a.at(0, 2) = 3;
  a.at(1, 0) = 0; a.at(1, 1) = 2; a.at(1, 2) = 4;
  SmithForm f = smith_normal_form(a);
  IntMat k = kernel_basis(f);
  CHECK(k.cols == 1);
  IntMat ak = mul(a, k);
  for (int r = 0; r < ak.rows; ++r)
    for (int c = 0; c < ak.cols; ++c) CHECK(ak.at(r, c) == 0);
}

TEST_CASE("dense random matrices stay fast and exact") {
  // the 8x10 matrix at i=4 of this sequence once blew past any time budget;
  // the whole suite doubles as the regression guard
  std::mt19937 rng(20240817u);
  std::uniform_int_distribution<int> dim(1, 12), ent(-9, 9);
  for (int i = 0; i < 200; ++i) {
    IntMat a(dim(rng), dim(rng));
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) a.at(r, c) = ent(rng);
    SmithForm f = smith_normal_form(a);
    check_postconditions(a, f);
  }
}
