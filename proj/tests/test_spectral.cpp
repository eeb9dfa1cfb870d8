#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/spectral.hpp"

using namespace cleave;

TEST_CASE("pages of a product over the interval") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("prodcirc"), 4);
  Bicomplex bc = fibration_bicomplex(nf);
  bc.validate();

  for (const char* cname : {"F2", "Q"}) {
    Coeff k = parse_coeff(cname);
    SpectralSequence ss = spectral_sequence(bc, k, 6);
    CHECK(ss.pages[0].r == 1);
    // contractible base: everything collapses onto the fiber column
    const SpectralPage& e2 = ss.pages[1];
    for (int m = 0; m + 0 <= 3; ++m)
      for (int n = 0; m + n <= 3; ++n)
        CHECK(e2.dim[m][n] == ((n == 0 && m <= 1) ? 1 : 0));
    CHECK(ss.stable_at == 2);
    for (int d = 0; d <= 3; ++d) {
      CHECK(ss.einf_total[d] == (d <= 1 ? 1 : 0));
      CHECK(ss.tot_dim[d] == ss.einf_total[d]);
    }
  }
}

TEST_CASE("page cutoff is reported, not papered over") {
  const Corpus& c = builtin_corpus();
  FibredNerve nf = fibred_nerve(c.cert.at("prodcirc"), 4);
  Bicomplex bc = fibration_bicomplex(nf);
  bool refused = false;
  try {
    spectral_sequence(bc, parse_coeff("F2"), 1);
  } catch (const Error& e) {
    refused = e.kind() == "NotStabilized";
  }
  CHECK(refused);
}

TEST_CASE("integral second page of a twisted group quotient") {
  const Corpus& c = builtin_corpus();
  const Grothendieck& g = c.gro.at("gro-fcirc");
  FibredNerve nf = fibred_nerve(g.cert, 4);
  Bicomplex bc = fibration_bicomplex(nf);
  bc.validate();

  e2_row_complex(bc, 0).validate();
  e2_row_complex(bc, 1).validate();

  // row 0: ordinary homology of the one-object group category
  CHECK(integral_e2(bc, 0, 0).to_string() == "Z");
  CHECK(integral_e2(bc, 0, 1).to_string() == "Z/2");
  CHECK(integral_e2(bc, 0, 2).to_string() == "0");
  CHECK(integral_e2(bc, 0, 3).to_string() == "Z/2");
  // row 1: the generator flips the fiber loop, so the coefficients twist
  CHECK(integral_e2(bc, 1, 0).to_string() == "Z/2");
  CHECK(integral_e2(bc, 1, 1).to_string() == "0");
  CHECK(integral_e2(bc, 1, 2).to_string() == "Z/2");

  // same values out of the independently built module on the base
  for (int m = 0; m <= 1; ++m) {
    CatModule fm = fiber_homology_module(g.distinguished, m, 4);
    for (int n = 0; m + n <= 3; ++n)
      CHECK(integral_e2(bc, m, n) == coefficient_homology(fm, 4, n));
  }
}

TEST_CASE("field module side matches the second page") {
  const Corpus& c = builtin_corpus();
  const Grothendieck& g = c.gro.at("gro-fcirc");
  FibredNerve nf = fibred_nerve(g.cert, 4);
  Bicomplex bc = fibration_bicomplex(nf);

  for (const char* cname : {"F2", "Q", "F3"}) {
    Coeff k = parse_coeff(cname);
    SpectralSequence ss = spectral_sequence(bc, k, 6);
    const SpectralPage& e2 = ss.pages[1];
    for (int m = 0; m <= 3; ++m) {
      FieldModule fm = field_fiber_module(g.distinguished, m, 4, k);
      std::vector<long long> hn = field_module_homology(fm, 4);
      for (int n = 0; m + n <= 3; ++n) CHECK(e2.dim[m][n] == hn[n]);
    }
    for (int d = 0; d <= 3; ++d) CHECK(ss.einf_total[d] == ss.tot_dim[d]);
  }
}
