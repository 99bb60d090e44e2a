#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pil/errors.hpp"
#include "pil/ffmatrix.hpp"
#include "pil/poset.hpp"

namespace pil {

// Functor from a finite poset to F_p-vector spaces, presented by its values
// on elements and its maps on Hasse edges. Maps on arbitrary relations are
// composites along any Hasse path; validate() certifies path independence.
struct VectModule {
  PosetPtr poset;
  std::uint32_t p = 2;
  std::vector<int> dims;                              // by element index
  std::map<std::pair<int, int>, FFMatrix> edge_maps;  // key = Hasse edge (lo, hi)

  const FFMatrix& edge(int lo, int hi) const;
  // Composite map M(a ≤ b); identity when a == b. Requires a ≤ b.
  FFMatrix map_on(int a, int b) const;
  bool is_zero() const;  // all dims zero

  static VectModule zero(PosetPtr P, std::uint32_t p);
};

using VectModulePtr = std::shared_ptr<const VectModule>;

// Functor to finite sets: element x carries {0, …, sizes[x]−1}; edge_fns maps
// each Hasse edge to a function table.
struct SetModule {
  PosetPtr poset;
  std::vector<int> sizes;
  std::map<std::pair<int, int>, std::vector<int>> edge_fns;

  const std::vector<int>& edge(int lo, int hi) const;
  std::vector<int> fn_on(int a, int b) const;  // composite along any path

  static SetModule empty(PosetPtr P);
};

using SetModulePtr = std::shared_ptr<const SetModule>;

struct ValidationReport {
  bool ok = true;
  std::string message = "ok";
};

// Shape consistency plus path independence (every diamond commutes). The
// report names the first offending edge or diamond.
ValidationReport validate(const VectModule& M);
ValidationReport validate(const SetModule& M);
// Throwing wrappers for internal use.
void require_valid(const VectModule& M);
void require_valid(const SetModule& M);

// Natural transformation between Vect modules over one poset.
struct ModuleMap {
  VectModulePtr source, target;
  std::vector<FFMatrix> comps;  // comps[x]: target dims × source dims

  bool is_natural() const;
  bool is_pointwise_invertible() const;
  bool is_zero() const;
};
ModuleMap identity_map(VectModulePtr M);
ModuleMap zero_map(VectModulePtr source, VectModulePtr target);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g ∘ f
ModuleMap add(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(const ModuleMap& a, std::uint32_t c);
bool operator==(const ModuleMap& a, const ModuleMap& b);

// Natural transformation between Set modules.
struct SetModuleMap {
  SetModulePtr source, target;
  std::vector<std::vector<int>> comps;  // comps[x][j] ∈ target set at x

  bool is_natural() const;
  bool is_pointwise_bijective() const;
};
SetModuleMap set_identity_map(SetModulePtr M);
SetModuleMap set_compose(const SetModuleMap& g, const SetModuleMap& f);
bool operator==(const SetModuleMap& a, const SetModuleMap& b);

// Hasse edges of the sub-poset induced on the elements of S (computed from
// scratch: covering pairs of the restriction, not restricted covers).
std::vector<std::pair<int, int>> induced_hasse(const FinitePoset& P, const Bitset& S);

// Colimit of the restriction of a module to a subset (with its induced
// order), presented as the cokernel of the Hasse-edge presentation map
// D : ⊕_{(a,b)} M(a) → ⊕_x M(x), x ↦ M(a≤b)x − x.
struct VectColimit {
  std::uint32_t p = 2;
  int dim = 0;
  std::vector<int> elems;       // ascending poset indices
  std::vector<int> offsets;     // block offset per included element
  std::vector<int> block_dims;  // module dims per included element
  FFMatrix Q;                   // dim × total projection

  int index_in(int poset_elem) const;  // position in elems, −1 if absent
  FFMatrix leg(int i) const;           // dim × block_dims[i]
  FFMatrix leg_of(int poset_elem) const;
};

VectColimit colimit(const VectModule& M);
VectColimit colimit_over(const VectModule& M, const Bitset& S);
// Same colimit presented with generators for *all* strict relations in S,
// not just induced Hasse edges; a cross-check of cofinality.
VectColimit colimit_over_all_relations(const VectModule& M, const Bitset& S);

// Unique X : colim → V with X·leg(i) = cocone[i] for all i; `vdim` = dim V
// (kept explicit so empty diagrams still produce correctly shaped zero maps).
// Throws Error when the given maps do not form a commuting cocone.
FFMatrix factor_cocone(const VectColimit& C, const std::vector<FFMatrix>& cocone, int vdim);

// Limit of the restriction: kernel of ⊕_x M(x) → ⊕_{(a,b)} M(b),
// (x_p) ↦ M(a≤b)x_a − x_b.
struct VectLimit {
  std::uint32_t p = 2;
  int dim = 0;
  std::vector<int> elems;
  std::vector<int> offsets;
  std::vector<int> block_dims;
  FFMatrix K;  // total × dim, columns form a basis of compatible tuples

  int index_in(int poset_elem) const;
  FFMatrix projection(int i) const;  // block_dims[i] × dim
  FFMatrix projection_of(int poset_elem) const;
};

VectLimit limit(const VectModule& M);
VectLimit limit_over(const VectModule& M, const Bitset& S);

// Unique X : V → lim with projection(i)·X = cone[i]; `vdim` = dim V.
// Throws Error on a non-cone.
FFMatrix factor_cone(const VectLimit& L, const std::vector<FFMatrix>& cone, int vdim);

// Set colimit: disjoint union / (x ~ edge(x)) via union-find. Class ids are
// numbered by first appearance in (element, member) lexicographic order.
struct SetColimit {
  int size = 0;
  std::vector<int> elems;
  std::vector<std::vector<int>> legs;  // legs[i][j] = class id

  int index_in(int poset_elem) const;
};

SetColimit set_colimit(const SetModule& M);
SetColimit set_colimit_over(const SetModule& M, const Bitset& S);
std::vector<int> set_factor_cocone(const SetColimit& C,
                                   const std::vector<std::vector<int>>& cocone);

// Set limit: all compatible tuples, enumerated by backtracking in topological
// order. Throws SearchCapExceeded past `cap` visited nodes.
struct SetLimit {
  std::vector<int> elems;
  std::vector<std::vector<int>> tuples;  // each tuple parallel to elems

  int size() const { return static_cast<int>(tuples.size()); }
};

SetLimit set_limit(const SetModule& M, const Bitset& S, std::size_t cap = 1u << 20);
SetLimit set_limit(const SetModule& M, std::size_t cap = 1u << 20);

// Basis of the space of natural transformations M → N (same poset, same
// field), solved from the naturality system on Hasse edges.
struct NatSpace {
  int dim = 0;
  std::vector<ModuleMap> basis;
};
NatSpace nat_trans_space(VectModulePtr M, VectModulePtr N);

// Combine basis elements with the given coefficients.
ModuleMap nat_combination(const NatSpace& S, VectModulePtr M, VectModulePtr N,
                          const std::vector<std::uint32_t>& coeffs);

// Exhaustive search for a pointwise-invertible natural transformation, in
// coefficient-odometer order. Throws SearchCapExceeded when the space is
// larger than `cap` and no invertible sample was found among deterministic
// probes (a found witness still decides "yes").
std::optional<ModuleMap> find_isomorphism(VectModulePtr M, VectModulePtr N,
                                          std::uint64_t cap = 1u << 20);
bool are_isomorphic(const VectModule& M, const VectModule& N, std::uint64_t cap = 1u << 20);

// Natural bijection search for Set modules (backtracking, naturality-pruned).
bool set_isomorphic(const SetModule& M, const SetModule& N, std::size_t cap = 1u << 20);

// Sub-poset induced on a subset, with the inclusion map and the index
// translation table (sub index → parent index).
struct SubPoset {
  PosetPtr poset;
  std::vector<int> elems;
  MonotoneMap incl;
};
SubPoset induced_subposet(PosetPtr P, const Bitset& S);

VectModule restrict_module(const VectModule& M, const SubPoset& sub);
SetModule restrict_set_module(const SetModule& M, const SubPoset& sub);

}  // namespace pil
