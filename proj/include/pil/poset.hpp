#pragma once

#include <boost/dynamic_bitset.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pil/errors.hpp"

namespace pil {

using Bitset = boost::dynamic_bitset<>;

// Finite poset. Elements are dense integer indices; labels exist for I/O only.
// Immutable after construction; share via shared_ptr.
class FinitePoset {
 public:
  // Build from strict relations (lo ≤ hi pairs). Takes the reflexive-transitive
  // closure; throws CycleError if antisymmetry would fail, UnknownLabel for
  // labels outside `labels`.
  static std::shared_ptr<const FinitePoset> from_relations(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::string, std::string>>& relations);

  // Build from index pairs (lo, hi), same closure/validation.
  static std::shared_ptr<const FinitePoset> from_index_pairs(
      std::vector<std::string> labels, const std::vector<std::pair<int, int>>& relations);

  // Build from a known-good full order relation (leq[p][q] means p ≤ q).
  // Validates reflexivity/antisymmetry/transitivity.
  static std::shared_ptr<const FinitePoset> from_leq(std::vector<std::string> labels,
                                                     std::vector<Bitset> leq);

  int size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int p) const { return labels_[p]; }
  int index_of(const std::string& label) const;  // throws UnknownLabel

  bool leq(int p, int q) const { return up_[p].test(q); }
  bool lt(int p, int q) const { return p != q && leq(p, q); }

  const Bitset& up_set(int p) const { return up_[p]; }      // {q : p ≤ q}
  const Bitset& down_set(int p) const { return down_[p]; }  // {q : q ≤ p}

  // Covering pairs (p, q) with p < q and nothing strictly between.
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }

  // Hasse edges entering q (their lower endpoints).
  const std::vector<int>& hasse_below(int q) const { return hasse_below_[q]; }

  // A fixed linear extension: p ≤ q implies topo_pos(p) ≤ topo_pos(q).
  const std::vector<int>& topo_order() const { return topo_; }
  int topo_pos(int p) const { return topo_pos_[p]; }

  Bitset empty_set() const { return Bitset(n_); }
  Bitset full_set() const {
    Bitset b(n_);
    b.set();
    return b;
  }

 private:
  FinitePoset() = default;
  void finish();  // derive hasse/topo from up_/down_

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Bitset> up_, down_;
  std::vector<std::pair<int, int>> hasse_;
  std::vector<std::vector<int>> hasse_below_;
  std::vector<int> topo_, topo_pos_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

// Down-closed subset of a poset.
struct DownSet {
  PosetPtr poset;
  Bitset members;

  bool is_valid() const;
};

// Order-preserving map between posets; image[p] is the target index of p.
struct MonotoneMap {
  PosetPtr source;
  PosetPtr target;
  std::vector<int> image;

  int operator()(int p) const { return image[p]; }
  bool is_monotone_valid() const;
  // f(p) ≤ f(q) ⇒ p ≤ q (with monotonicity this is order-reflecting).
  bool is_full() const;
  bool is_injective() const;

  static MonotoneMap identity(PosetPtr P);
  static MonotoneMap constant(PosetPtr P, PosetPtr Q, int q0);
  friend MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);  // g ∘ f
};

DownSet principal_down(PosetPtr P, int p);
DownSet down_closure(PosetPtr P, const Bitset& S);
Bitset up_closure(PosetPtr P, const Bitset& S);

Bitset sublevel(const MonotoneMap& f, int q);    // {p : f(p) ≤ q}
Bitset superlevel(const MonotoneMap& f, int q);  // {p : f(p) ≥ q}

// The lattice Down(P) of all down sets ordered by inclusion, with the
// embedding ι : p ↦ D_p. Elements of the lattice poset are indices into
// `down_sets`. Throws ExplosionError past `cap`.
struct DownLattice {
  PosetPtr base;
  PosetPtr lattice;
  std::vector<Bitset> down_sets;
  MonotoneMap iota;

  int index_of(const Bitset& s) const;  // throws if not down-closed / unknown
  int join(int a, int b) const { return index_of(down_sets[a] | down_sets[b]); }
  int meet(int a, int b) const { return index_of(down_sets[a] & down_sets[b]); }
  int bottom() const;  // index of ∅
  int top() const;     // index of everything
};
DownLattice down_lattice(PosetPtr P, std::size_t cap = 4096);

// Lattice structure on an arbitrary finite poset, when it exists.
// join/meet tables hold -1 where the bound does not exist.
struct LatticeOps {
  PosetPtr poset;
  std::vector<std::vector<int>> join_tab, meet_tab;
  bool is_lattice = false;
  int bottom = -1, top = -1;

  int join(int a, int b) const { return join_tab[a][b]; }
  int meet(int a, int b) const { return meet_tab[a][b]; }
  // Join/meet of a subset; empty set gives bottom/top. -1 if undefined.
  int join_of(const Bitset& S) const;
  int meet_of(const Bitset& S) const;
};
LatticeOps lattice_ops(PosetPtr P);

}  // namespace pil
