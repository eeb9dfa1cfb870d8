#pragma once

#include <map>

#include "cleave/fibration.hpp"
#include "cleave/simplicial.hpp"

namespace cleave {

// Everything a single input file declares, validated on construction.
struct Workspace {
  std::map<std::string, CatPtr> category;
  std::map<std::string, Functor> functor;
  std::map<std::string, Cleavage> cleavage;
  std::map<std::string, DiagramOfCategories> diagram;
  std::map<std::string, CatGroupAction> action;
  std::vector<std::pair<std::string, std::string>> order; // (kind, name)
};

// Line-oriented, UTF-8, '#' starts a comment.  Top-level directives open
// blocks whose body lines are indented:
//
//   category NAME
//     object ID
//     arrow ID : SRC -> DST
//     compose G . F = H          (identities implicit as id:OBJ)
//   functor NAME : C -> D
//     ob A => B
//     fl F => G                  (identity arrows implicit)
//   cleavage NAME on FUNCTOR
//     lift OBJ ARROW => ARROW    (identity lifts implicit)
//   diagram NAME : B
//     value OBJ => CATEGORY
//     map ARROW => FUNCTOR       (identity arrows implicit)
//   action NAME : GROUPCAT on CATEGORY
//     gen ELEM => FUNCTOR        (closure under composition is derived)
//
// Diagnostics carry line and column; kinds "SyntaxError", "UnknownName",
// or whatever the owning validator refuses with.
Workspace parse_workspace(const std::string& text);

}  // namespace cleave
