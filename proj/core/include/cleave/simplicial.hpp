#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cleave/fibration.hpp"

namespace cleave {

// Canonical encoded payload of a cell; cells at each level are stored in
// ascending key order, operators are tables of cell indices.
using Key = std::vector<long long>;

struct SSet {
  std::string name;
  int cap = 0; // levels 0..cap are stored
  std::vector<std::vector<Key>> cells;
  std::vector<std::vector<std::vector<int>>> face;  // [n][i], n >= 1, i <= n
  std::vector<std::vector<std::vector<int>>> degen; // [n][j], n < cap, j <= n
  std::vector<std::vector<char>> degenerate;

  int size(int n) const { return static_cast<int>(cells[n].size()); }
  int index_of(int n, const Key& k) const;
  int d(int n, int i, int c) const { return face[n][i][c]; }
  int s(int n, int j, int c) const { return degen[n][j][c]; }

  void shape(int cap);                 // allocate empty tables
  void finish();                       // fill degeneracy flags
  std::optional<std::string> check() const; // first violated identity, if any
  void validate(const std::string& kind = "ValidationError") const;
};
using SSPtr = std::shared_ptr<const SSet>;

struct SMap {
  std::string name;
  SSPtr src, dst;
  std::vector<std::vector<int>> map; // [n][cell]
  int at(int n, int c) const { return map[n][c]; }
};
void validate_smap(const SMap& f);
bool is_level_bijection(const SMap& f);
SMap compose(const SMap& g, const SMap& f); // g after f

// First index m runs vertically, second index n horizontally.
struct BiSSet {
  std::string name;
  int mcap = 0, ncap = 0;
  std::vector<std::vector<std::vector<Key>>> cells; // [m][n]
  // operator tables, indexed [m][n][i][cell]
  std::vector<std::vector<std::vector<std::vector<int>>>> vface;  // m >= 1
  std::vector<std::vector<std::vector<std::vector<int>>>> hface;  // n >= 1
  std::vector<std::vector<std::vector<std::vector<int>>>> vdegen; // m < mcap
  std::vector<std::vector<std::vector<std::vector<int>>>> hdegen; // n < ncap

  int size(int m, int n) const { return static_cast<int>(cells[m][n].size()); }
  int index_of(int m, int n, const Key& k) const;
  int dv(int m, int n, int i, int c) const { return vface[m][n][i][c]; }
  int dh(int m, int n, int i, int c) const { return hface[m][n][i][c]; }
  int sv(int m, int n, int j, int c) const { return vdegen[m][n][j][c]; }
  int sh(int m, int n, int j, int c) const { return hdegen[m][n][j][c]; }

  void shape(int mcap, int ncap);
  std::optional<std::string> check() const;
  void validate(const std::string& kind = "ValidationError") const;
};
using BiPtr = std::shared_ptr<const BiSSet>;

struct BiMap {
  std::string name;
  BiPtr src, dst;
  std::vector<std::vector<std::vector<int>>> map; // [m][n][cell]
  int at(int m, int n, int c) const { return map[m][n][c]; }
};
void validate_bimap(const BiMap& f);
bool is_level_bijection(const BiMap& f);

// Nerve: level-n cells are composable chains.  Keys: [object] at level 0,
// [f1, ..., fn] at level n with fi: x_{i-1} -> x_i.
SSPtr nerve(CatPtr c, int cap);
SMap nerve_map(const Functor& u, SSPtr src, SSPtr dst);

// Keys are index pairs [cell_of_a, cell_of_b].
SSPtr sset_product(SSPtr a, SSPtr b);

// Keys of the diagonal are index singletons [cell at (n,n)].
SSPtr diagonal(BiPtr k);

// Codiagonal: level-n cells are tuples (x_0, ..., x_n), x_i at (i, n-i),
// with d0h(x_i) = dv_{i+1}(x_{i+1}).  Keys list the component indices.
SSPtr codiagonal(BiPtr k);

// Canonical inclusion of the diagonal into the codiagonal.
SMap theta(BiPtr k, SSPtr diag, SSPtr codiag);

struct DiagramOfSSets {
  std::string name;
  CatPtr base;
  std::vector<SSPtr> value; // per base object, equal caps
  std::vector<SMap> map;    // per base arrow
};
void validate_sset_diagram(const DiagramOfSSets& z);
DiagramOfSSets nerve_diagram(const DiagramOfCategories& z, int cap);

// Homotopy colimit: cells at (m, n) are pairs (chain, z) of an n-chain of
// the base and an m-cell of the value at the chain's first object.  Keys:
// [chain_index, z_index] into base_nerve and value nerves.
struct Hc {
  SSPtr base_nerve;
  BiPtr bis;
};
Hc hc(const DiagramOfSSets& z, int ncap);

// One-object group category acting by functors.
struct CatGroupAction {
  std::string name;
  CatPtr group;
  CatPtr cat;
  std::vector<Functor> by; // per group arrow
};
void validate_action(const CatGroupAction& a);
DiagramOfCategories action_diagram(const CatGroupAction& a);

struct SimplicialGroupAction {
  std::string name;
  CatPtr group;
  SSPtr space;
  std::vector<std::vector<std::vector<int>>> act; // [g][n][cell]
};
void validate_action(const SimplicialGroupAction& a);
SimplicialGroupAction nerve_action(const CatGroupAction& a, int cap);

// tau[n]: B_n -> group arrows, n >= 1.
struct TwistingFunction {
  CatPtr group;
  SSPtr base;
  std::vector<std::vector<int>> tau;
};
TwistingFunction canonical_twisting(CatPtr group, SSPtr group_nerve);

// Twisted cartesian product: cells are pairs (a, b); d_0 applies the group
// element tau(b) after the untwisted face.  Keys: [a_index, b_index].
// Refuses with kind InvalidTwisting when the result is not simplicial.
SSPtr twisted_cartesian_product(const SimplicialGroupAction& f,
                                const TwistingFunction& t);

} // namespace cleave
