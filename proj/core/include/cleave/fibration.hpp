#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cleave/category.hpp"

namespace cleave {

// An arrow f: e -> e' of the total category is cartesian over p when every
// g out of e with p(g) = p(f) factors as g = h ∘ f for a unique h over an
// identity.  It is strongly cartesian when the filler exists uniquely over
// every base factorization p(g) = ψ ∘ p(f).
struct CartesianCheck {
  bool cartesian = true;
  bool strongly = true;
  int g = -1;    // first violating test arrow, if any
  int psi = -1;  // base factor for a strong-check violation, -1 otherwise
  int count = 0; // number of fillers found at the violation (0 or >= 2)
};

CartesianCheck check_cartesian(const Functor& p, int f);
bool is_cartesian(const Functor& p, int f);
bool is_strongly_cartesian(const Functor& p, int f);

enum class FibClass { NotPrefibration, Prefibration, Fibration };

struct FibrationCertificate {
  Functor p;
  FibClass cls = FibClass::NotPrefibration;
  std::vector<char> cartesian;          // per total arrow
  std::vector<char> strongly_cartesian; // per total arrow
  // lifts[e][phi]: sorted cartesian arrows out of e over phi.  Empty unless
  // src(phi) = p(e).
  std::vector<std::vector<std::vector<int>>> lifts;
  std::pair<int, int> missing_lift{-1, -1}; // (e, phi) with no cartesian lift
  std::pair<int, int> nonclosed{-1, -1};    // cartesian (g, f) with g∘f not cartesian

  bool is_prefibration() const { return cls != FibClass::NotPrefibration; }
  bool is_fibration() const { return cls == FibClass::Fibration; }
  const FiniteCategory& total() const { return *p.dom; }
  const FiniteCategory& base() const { return *p.cod; }
};

using CertPtr = std::shared_ptr<const FibrationCertificate>;

CertPtr certify_fibration(const Functor& p);

// A cleavage chooses one cartesian lift per (object, base arrow out of its
// image).  Normal: identities lift to identities.  Closed: chosen lifts
// compose to chosen lifts.
struct Cleavage {
  CertPtr cert;
  std::string name;
  std::vector<std::vector<int>> lift; // [e][phi] -> total arrow, -1 off-domain

  int lift_for(int e, int phi) const { return lift[e][phi]; }
  bool in_sigma(int f) const; // f is one of the chosen lifts
};

bool is_normal(const Cleavage& c);
bool is_closed(const Cleavage& c);
// f ∈ Σ and f'∘f ∈ Σ imply f' ∈ Σ.  For normal cleavages over a fibration
// this is equivalent to being closed.
bool closed_by_right_cancellation(const Cleavage& c);

void validate_cleavage(const Cleavage& c); // shape + every slot cartesian
void require_normal(const Cleavage& c);    // kind NotNormal

// Lexicographically smallest normal cleavage.
Cleavage default_cleavage(const CertPtr& cert, std::string name = "default");

// All cleavages in lexicographic order of their choice vectors.  Refuses
// with kind LimitExceeded when more than `limit` exist.
std::vector<Cleavage> enumerate_cleavages(const CertPtr& cert, long long limit,
                                          bool normal_only = true);

struct BaseChange {
  Subcategory src_fiber, dst_fiber;
  Functor functor; // src_fiber.cat -> dst_fiber.cat
};
BaseChange base_change(const Cleavage& c, int phi);

// Good maps s: E^p -> E: retraction of i, over the base, preserving
// cartesian arrows.
struct GoodMapCheck {
  bool good = true;
  std::string violated; // "retraction" | "projection" | "cartesian"
  int witness = -1;     // offending object/arrow of E^p
};
GoodMapCheck check_good_map(const Functor& s, const MappingCategory& mc,
                            const CertPtr& cert);
void require_good(const Functor& s, const MappingCategory& mc, const CertPtr& cert);

// s(a, φ) = dst Σ(a, φ); on arrows the unique filler over β.
Functor good_map_from_cleavage(const Cleavage& c, const MappingCategory& mc);
// Σ(e, φ) = s(id_e, φ), reading off the distinguished lifts of π.
Cleavage cleavage_from_good_map(const Functor& s, const MappingCategory& mc,
                                const CertPtr& cert, std::string name = "from_s");
// s carries every distinguished lift of π into Σ(c).
bool is_very_good(const Functor& s, const MappingCategory& mc, const Cleavage& c);

// Functors B -> Cat on the nose.
struct DiagramOfCategories {
  std::string name;
  CatPtr base;
  std::vector<CatPtr> value;  // per base object
  std::vector<Functor> map;   // per base arrow
};
void validate_diagram(const DiagramOfCategories& z); // kind ValidationError

struct Grothendieck {
  CatPtr total;       // objects (x,b); arrows (f,phi,x)
  Functor projection; // -> base
  CertPtr cert;       // always a fibration
  Cleavage distinguished; // lifts (id, phi, x); closed and normal
  std::vector<std::pair<int, int>> object_data; // total object -> (x, b)
  struct ArrowData {
    int f, phi, x;
  };
  std::vector<ArrowData> arrow_data; // total arrow -> components
};
Grothendieck grothendieck(const DiagramOfCategories& z);

// all h over psi with h ∘ via = g
std::vector<int> lift_fillers(const Functor& p, int via, int g, int psi);

} // namespace cleave
