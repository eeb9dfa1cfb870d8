#include <string>

#include "doctest.h"

#include "cleave/corpus.hpp"
#include "cleave/error.hpp"
#include "cleave/fibration.hpp"
#include "cleave/parser.hpp"

using namespace cleave;

namespace {

const char* good = R"(# two-object base with a fibration on top
category two
  object a
  object b
  arrow u : a -> b

category tot
  object xa
  object xb
  arrow e : xa -> xb

functor p : tot -> two
  ob xa => a
  ob xb => b
  fl e => u

cleavage c on p
  lift xa u => e

functor g : tot -> two
  ob xa => a
  ob xb => b
  fl e => u

diagram d : two
  value a => tot
  value b => two
  map u => g

functor swap : two -> two
  ob a => a
  ob b => b
  fl u => u

category z2g
  object e
  arrow t : e -> e
  compose t . t = id:e

action rot : z2g on two
  gen t => swap
)";

std::string error_of(const std::string& text, const std::string& kind) {
  try {
    parse_workspace(text);
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    return e.what();
  }
  FAIL("no error, wanted kind " << kind);
  return "";
}

} // namespace

TEST_CASE("a full workspace parses") {
  Workspace w = parse_workspace(good);
  CHECK(w.category.size() == 3);
  CHECK(w.functor.size() == 3);
  CHECK(w.cleavage.size() == 1);
  CHECK(w.diagram.size() == 1);
  CHECK(w.action.size() == 1);
  CHECK(w.order.size() == 9);

  const CatPtr& two = w.category.at("two");
  CHECK(two->objects() == 2);
  CHECK(two->arrows() == 3); // identities are implicit

  const CatPtr& z2g = w.category.at("z2g");
  int t = *z2g->arrow_index("t");
  CHECK(z2g->compose(t, t) == z2g->id_arrow[0]);

  const Cleavage& c = w.cleavage.at("c");
  CHECK(c.cert->cls == FibClass::Fibration);
  CHECK(is_closed(c));

  const CatGroupAction& a = w.action.at("rot");
  CHECK(a.by.size() == static_cast<size_t>(z2g->arrows()));
}

TEST_CASE("diagnostics name the offender and the line") {
  std::string m;

  m = error_of("category c\n  arrow f : x -> y\n", "UnknownName");
  CHECK(m.find("line 1") != std::string::npos);
  CHECK(m.find("'f'") != std::string::npos);

  m = error_of("category c\n  object x\n  arrow f : x ->\n", "SyntaxError");
  CHECK(m.find("line 3") != std::string::npos);

  m = error_of("categry c\n", "SyntaxError");
  CHECK(m.find("line 1") != std::string::npos);

  m = error_of("category c\n  object x\ncategory c\n  object y\n",
               "ValidationError");
  CHECK(m.find("line 3") != std::string::npos);
  CHECK(m.find("already defined") != std::string::npos);

  m = error_of(
      "category c\n  object x\n  object y\nfunctor f : c -> c\n  ob x => y\n",
      "ValidationError");
  CHECK(m.find("y") != std::string::npos); // the unmapped object

  // a lift on a functor with no lifts to choose from
  m = error_of(
      "category b\n  object s\n  object d\n  arrow u : s -> d\n"
      "category e\n  object x\n"
      "functor q : e -> b\n  ob x => s\n"
      "cleavage k on q\n  lift x u => id:x\n",
      "ValidationError");
  CHECK(m.find("line") != std::string::npos);
}

TEST_CASE("comments, blank lines and tight arrows") {
  Workspace w = parse_workspace(
      "# leading comment\n"
      "\n"
      "category c   # trailing comment\n"
      "  object 0\n"
      "  object 1\n"
      "  arrow 0->1 : 0 -> 1\n");
  const CatPtr& c = w.category.at("c");
  CHECK(c->objects() == 2);
  CHECK(c->arrow_index("0->1").has_value()); // one whitespace-free token
}

TEST_CASE("body lines outside a block are refused") {
  std::string m = error_of("  object x\n", "SyntaxError");
  CHECK(m.find("line 1") != std::string::npos);
}
