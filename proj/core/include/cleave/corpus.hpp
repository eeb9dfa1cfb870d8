#pragma once

#include <map>
#include <string>

#include "cleave/fibration.hpp"
#include "cleave/simplicial.hpp"

namespace cleave {

// Built-in instances shared by the test batteries and `cleave verify`.
// Keys are stable fixture ids; the stored objects carry their own names.
struct Corpus {
  std::map<std::string, CatPtr> category;
  std::map<std::string, Functor> functor;
  std::map<std::string, CertPtr> cert;
  std::map<std::string, Cleavage> cleavage;
  std::map<std::string, DiagramOfCategories> diagram;
  std::map<std::string, CatGroupAction> action;
  std::map<std::string, Grothendieck> gro;
};

const Corpus& builtin_corpus();

// Projection of product(a, b) onto its second factor.
Functor product_projection(CatPtr ab, CatPtr a, CatPtr b, std::string name);

}  // namespace cleave
