#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cleave {

struct FiniteCategory;
using CatPtr = std::shared_ptr<const FiniteCategory>;

// A finite category with a total, exhaustively validated composition table.
// Objects and arrows are indices into name tables sorted lexicographically,
// so a category's layout is a deterministic function of its description.
struct FiniteCategory {
  std::string name;
  std::vector<std::string> object_name;
  std::vector<std::string> arrow_name;
  std::vector<int> src, dst;     // per arrow
  std::vector<int> id_arrow;     // per object
  std::vector<int> comp;         // comp[g * arrows() + f] = g∘f, -1 if not composable

  int objects() const { return static_cast<int>(object_name.size()); }
  int arrows() const { return static_cast<int>(arrow_name.size()); }
  bool composable(int g, int f) const { return dst[f] == src[g]; }
  int compose(int g, int f) const; // g∘f, asserts composability
  bool is_identity(int f) const { return id_arrow[src[f]] == f; }
  std::optional<int> object_index(const std::string& n) const;
  std::optional<int> arrow_index(const std::string& n) const;
  std::vector<int> hom(int x, int y) const; // ascending arrow ids
};

// Raw description -> validated category. Identities are created implicitly
// as "id:OBJ" unless an arrow with that name is already declared as an
// endo-arrow of OBJ; identity composites are filled in automatically.
class CategoryBuilder {
public:
  explicit CategoryBuilder(std::string name = "");
  CategoryBuilder& object(const std::string& id);
  CategoryBuilder& arrow(const std::string& id, const std::string& src,
                         const std::string& dst);
  CategoryBuilder& composite(const std::string& g, const std::string& f,
                             const std::string& gf); // g∘f = gf
  // Validates totality (MissingComposite), identity laws (BadIdentity),
  // endpoint compatibility (ValidationError) and associativity
  // (NonAssociative) before returning.
  CatPtr build() const;

private:
  std::string name_;
  std::vector<std::string> objects_;
  struct RawArrow {
    std::string id, src, dst;
  };
  std::vector<RawArrow> arrows_;
  struct RawComposite {
    std::string g, f, gf;
  };
  std::vector<RawComposite> composites_;
};

struct Functor {
  std::string name;
  CatPtr dom, cod;
  std::vector<int> ob; // object images
  std::vector<int> fl; // arrow images

  int ob_of(int x) const { return ob[x]; }
  int fl_of(int f) const { return fl[f]; }
};

// Exhaustive functor laws; refuses with kind "ValidationError".
void validate_functor(const Functor& u);
Functor identity_functor(CatPtr c);
Functor compose(const Functor& g, const Functor& f);
bool functors_equal(const Functor& a, const Functor& b);
bool same_category(const FiniteCategory& a, const FiniteCategory& b);

// Standard constructions ------------------------------------------------

CatPtr ordinal(int n); // poset 0 <= 1 <= ... <= n
CatPtr product(CatPtr a, CatPtr b);

struct ArrowCategory {
  CatPtr cat;          // objects: arrows f of B; arrows: commuting squares (u,v)
  Functor dom_functor; // f -> src f, (u,v) -> u
  Functor cod_functor; // f -> dst f, (u,v) -> v
};
ArrowCategory arrow_category(CatPtr b);

struct Subcategory {
  CatPtr cat;
  Functor inclusion;
};

// The subcategory of dom(u) of arrows over b (u(f) = id_b).
// Refuses with kind "ObjectNotInCodomain" when b is out of range.
Subcategory fiber(const Functor& u, int b);

// Comma category u/b: objects (a, φ: u(a)→b), arrows f with φ'∘u(f) = φ.
struct HomotopyFiber {
  CatPtr cat;
  Subcategory strict;       // fiber(u, b)
  Functor fiber_inclusion;  // strict.cat -> cat, a ↦ (a, id)
};
HomotopyFiber homotopy_fiber(const Functor& u, int b);

// E^u = A x_B B^I: objects (a, φ: u(a)→b); i(a) = (a, id); π picks the
// codomain object; r picks a. Satisfies π∘i = u and r∘i = id_A exactly.
struct MappingCategory {
  CatPtr cat;
  Functor i;  // A -> E^u
  Functor pi; // E^u -> B
  Functor r;  // E^u -> A
  std::vector<std::pair<int, int>> object_data; // cat object -> (a, phi)
  int object_of(int a, int phi) const;          // -1 when absent
  int arrow_of(int f, int beta, int so, int to) const; // -1 when absent
};
MappingCategory mapping_category(const Functor& u);

// Brute-force isomorphism search (objects then hom-set bijections).
struct CatIso {
  std::vector<int> ob, fl;
};
std::optional<CatIso> find_isomorphism(const FiniteCategory& c,
                                       const FiniteCategory& d);
bool is_isomorphic(const FiniteCategory& c, const FiniteCategory& d);

} // namespace cleave
