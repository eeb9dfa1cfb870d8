#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/nerves.hpp"

using namespace cleave;

TEST_CASE("grids over the staircase projection") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("stair"), 3);
  nf.bis->validate();
  // point fiber over 0, interval fiber over 1: one forced grid per mixed
  // base chain, a free fiber chain over the constant ones
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      CHECK(nf.bis->size(m, n) == m + n + 3);

  CleavedNerve cn = cleaved_nerve(c.cleavage.at("stair"), 3);
  cn.bis->validate();
  BiMap inc = cleaved_inclusion(cn, nf);
  validate_bimap(inc);
  CHECK(is_level_bijection(inc)); // the one cleavage keeps every grid
}

TEST_CASE("cleaved grids are the chosen ones") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("loop3"), 2);
  nf.bis->validate();
  CleavedNerve s1 = cleaved_nerve(c.cleavage.at("loop3-s1"), 2);
  CleavedNerve s4 = cleaved_nerve(c.cleavage.at("loop3-s4"), 2);
  s1.bis->validate();
  s4.bis->validate();

  BiMap inc = cleaved_inclusion(s1, nf);
  validate_bimap(inc);
  bool strict = false;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      CHECK(s1.bis->size(m, n) <= nf.bis->size(m, n));
      if (s1.bis->size(m, n) < nf.bis->size(m, n)) strict = true;
    }
  CHECK(strict);
  // in s4 the two unit lifts through 1 compose to an arrow that is not
  // itself chosen, so exactly one horizontal 2-chain is dropped
  CHECK(s4.bis->size(0, 2) == s1.bis->size(0, 2) - 1);

  for (int n = 0; n <= 2; ++n)
    for (int cell = 0; cell < s1.bis->size(1, n); ++cell) {
      Grid g = decode_grid(1, n, s1.bis->cells[1][n][cell]);
      CHECK_FALSE(check_cleaved_grid(c.cleavage.at("loop3-s1"), g).has_value());
    }
}

TEST_CASE("mast extraction retracts onto the fiber") {
  const Corpus& c = builtin_corpus();
  for (const char* key : {"loop3-s1", "loop3-s2", "loop3-s4", "loop3-bad"}) {
    const Cleavage& cl = c.cleavage.at(key);
    FibredNerve nf = fibred_nerve(cl.cert, 2);
    for (int n = 0; n <= 2; ++n)
      for (int chain = 0; chain < nf.base_nerve->size(n); ++chain) {
        BaseSlice sl = base_slice(nf, n, chain);
        SMap m = mu(nf, sl);
        SMap s = nu(cl, nf, sl);
        validate_smap(m);
        validate_smap(s);
        SMap round = compose(m, s);
        for (int lvl = 0; lvl <= 2; ++lvl)
          for (int cell = 0; cell < round.src->size(lvl); ++cell)
            CHECK(round.at(lvl, cell) == cell);
      }
  }
}

TEST_CASE("diagonal and codiagonal comparisons into the total nerve") {
  const Corpus& c = builtin_corpus();
  CatPtr total = c.functor.at("loop3").dom;
  SSPtr tn = nerve(total, 2);

  CleavedNerve s1 = cleaved_nerve(c.cleavage.at("loop3-s1"), 2);
  SSPtr d1 = diagonal(s1.bis);
  SSPtr cd1 = codiagonal(s1.bis);
  SMap k1 = k_map(s1.bis, d1, tn, total);
  SMap kb1 = kbar_map(s1.bis, cd1, tn, total);
  validate_smap(k1);
  validate_smap(kb1);
  CHECK(is_level_bijection(kb1)); // closed cleavage

  CleavedNerve s4 = cleaved_nerve(c.cleavage.at("loop3-s4"), 2);
  SSPtr cd4 = codiagonal(s4.bis);
  SMap kb4 = kbar_map(s4.bis, cd4, tn, total);
  validate_smap(kb4);
  CHECK_FALSE(is_level_bijection(kb4)); // and a non-closed one fails
}

TEST_CASE("staircases store codiagonal tuples faithfully") {
  const Corpus& c = builtin_corpus();
  CleavedNerve s1 = cleaved_nerve(c.cleavage.at("loop3-s1"), 2);
  SSPtr cd = codiagonal(s1.bis);
  for (int n = 0; n <= 2; ++n)
    for (const Key& tuple : cd->cells[n]) {
      Staircase st = tuple_to_staircase(s1.bis, tuple, n);
      CHECK(staircase_to_tuple(s1.bis, st) == tuple);
    }
}

TEST_CASE("maps of fibrations act on grids") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("stair"), 3);
  Functor idt = identity_functor(c.functor.at("stair").dom);
  BiMap f = fibred_nerve_map(idt, nf, nf);
  validate_bimap(f);
  CHECK(is_level_bijection(f));

  CleavedNerve cn = cleaved_nerve(c.cleavage.at("stair"), 3);
  BiMap g = cleaved_nerve_map(idt, cn, cn);
  validate_bimap(g);
  SMap dg = diagonal_map(g, diagonal(cn.bis), diagonal(cn.bis));
  validate_smap(dg);
  CHECK(is_level_bijection(dg));
}

TEST_CASE("cleaved nerve of a collapsed diagram matches the homotopy colimit") {
  const Corpus& c = builtin_corpus();
  HcComparison cmp = cleaved_to_hc(c.diagram.at("f1"), 3);
  validate_bimap(cmp.iso);
  CHECK(is_level_bijection(cmp.iso));
}

TEST_CASE("diagonal of a group action matches the twisted product") {
  const Corpus& c = builtin_corpus();
  TcpComparison cmp = cleaved_to_tcp(c.action.at("fdisc"), 3);
  validate_smap(cmp.iso);
  CHECK(is_level_bijection(cmp.iso));
  for (int n = 0; n <= 3; ++n)
    CHECK(cmp.tcp->size(n) == cmp.diag->size(n));
}
