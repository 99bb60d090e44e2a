#pragma once

#include <cstdint>

#include "pil/kan.hpp"
#include "pil/rational.hpp"

namespace pil {

// Lawvere-style weighting: w(p,q) lower-bounds the "time" to travel from p
// up to q. Axioms: w(p,q) = 0 iff q ≤ p (zero exactly on the down relation,
// so 0-balls are principal down sets), and the triangle inequality.
struct WeightedPoset {
  PosetPtr poset;
  std::vector<std::vector<ExtRat>> w;  // w[p][q]

  // Sorted distinct finite values appearing in w, together with 0.
  std::vector<Rat> ladder_values() const;
};

ValidationReport validate_weighted(const WeightedPoset& wP);
void require_valid_weighted(const WeightedPoset& wP);

// {r : w(p,r) ≤ ε}; a down set by the triangle axiom.
DownSet time_ball(const WeightedPoset& wP, int p, const Rat& eps);

// M^ε(p) = colim of M over time_ball(p, ε); internal maps factor through the
// ball inclusions B(p;ε) ⊆ B(q;ε) for p ≤ q.
VectModule shift_weighted(const WeightedPoset& wP, const VectModule& M, const Rat& eps);

// Ladder-valued family of translations T_ε : evaluation snaps ε down to the
// largest ladder value ≤ ε. Invariants (see validate_translation): each map
// monotone and inflationary, monotone along the ladder, and snapped
// superlinearity T_{εj}∘T_{εi} ≤ T_{snap(εi+εj)}.
struct TranslationFamily {
  PosetPtr poset;
  std::vector<Rat> ladder;             // sorted, distinct, ladder[0] == 0
  std::vector<std::vector<int>> maps;  // maps[i][x] = T_{ladder[i]}(x)

  int snap_index(const Rat& eps) const;  // PreconditionError when eps < 0
  Rat snap(const Rat& eps) const { return ladder[snap_index(eps)]; }
  const std::vector<int>& map_at(const Rat& eps) const { return maps[snap_index(eps)]; }
  int apply(int i, int x) const { return maps[i][x]; }
  int rungs() const { return static_cast<int>(ladder.size()); }
  Rat top() const { return ladder.back(); }

  static TranslationFamily identity(PosetPtr P);  // single rung {0}
};

// `require_identity_at_zero` additionally demands T_0 = id (thickenings and
// the ε = 0 shift identities need it; general superlinear families do not).
ValidationReport validate_translation(const TranslationFamily& T,
                                      bool require_identity_at_zero = false);
void require_valid_translation(const TranslationFamily& T, bool require_identity_at_zero = false);

// The weight-induced thickening on Down(P): T_ε(S) = ∪_{p∈S} B(p;ε), with
// ladder the realized weight values. Checks the thickening axioms (identity,
// subadditivity, locality) exhaustively; ThickeningAxiomError on failure.
struct Thickening {
  DownLattice lattice;
  TranslationFamily family;  // on lattice.lattice
};
Thickening thickening_from_weighting(const WeightedPoset& wP, std::size_t cap = 4096);

// ι* T_ε* ι_* M for the weight-induced thickening: value at p is
// (ι_*M)(T_ε(D_p)). Isomorphic to shift_weighted by construction of T.
VectModule shift_three_step(const WeightedPoset& wP, const VectModule& M, const Rat& eps,
                            std::size_t cap = 4096);

// f : L → Q with L a finite lattice. Joins are respected when for every
// subset S and target element q, (∀x∈S: f(x) ≤ q) implies f(⋁S) ≤ q; the
// empty subset forces f(⊥) to be a global minimum of Q. Exhaustive for
// |L| ≤ 16, otherwise all pairs, ∅, singletons plus seeded random subsets.
bool respects_joins(const MonotoneMap& f, std::uint64_t sample_seed = 1);
bool respects_meets(const MonotoneMap& f, std::uint64_t sample_seed = 1);

// f♭(q) = ⋁ f⁻¹(D_q) (join of the sublevel, ⊥ when empty);
// f♯(q) = ⋀ f⁻¹(U_q) (meet of the superlevel, ⊤ when empty).
struct GaloisPair {
  MonotoneMap f;
  std::vector<int> flat;   // target index → source index
  std::vector<int> sharp;
};
GaloisPair galois(const MonotoneMap& f);

// T♭_ε = f♭ ∘ T_ε ∘ f: a superlinear translation family on L whenever f
// respects joins (PreconditionError otherwise); validated before returning.
TranslationFamily lower_approx_translation(const MonotoneMap& f, const TranslationFamily& T);

// T♯_ε = f♯ ∘ T_ε ∘ f: requires f full (PreconditionError otherwise). A
// translation, but superlinearity has no guarantee — the flag reports whether
// this instance happened to satisfy it.
struct UpperApprox {
  TranslationFamily family;
  bool superlinear = false;
};
UpperApprox upper_approx_translation(const MonotoneMap& f, const TranslationFamily& T);

// Relative-shift structure for fixed (f, T, M): (M)^ε := f* T_ε* f_* M with
// the unit-first structure maps. A := f_*M is computed once.
struct RelativeShiftOps {
  MonotoneMap f;
  TranslationFamily T;
  VectModulePtr M;
  VectPushforward push;  // f_*M with per-element colimits
  VectModulePtr A;       // shared handle to push.module

  // (M)^{ladder[i]} over source(f).
  VectModule at_index(int i) const;
  // η : M → (M)^{ladder[i]} — unit into the colimit, then the pulled-back
  // translation step of A.
  ModuleMap eta(int i, VectModulePtr shifted) const;
  // (M)^{ladder[i]} → (M)^{ladder[j]}, i ≤ j.
  ModuleMap eta_between(int i, int j, VectModulePtr src, VectModulePtr dst) const;
};
RelativeShiftOps make_relative_shift(const MonotoneMap& f, const TranslationFamily& T,
                                     VectModulePtr M, int threads = 1);

// Σ : ((M)^i)^j → (M)^{snap(l_i + l_j)}. `base` is the shift structure of M
// itself; `inner` is the shift structure of (M)^i (so inner.push = f_*(M)^i,
// whose counit collapses the double pushforward). `src` must be
// inner.at_index(j) and `dst` base.at_index(snap_index(l_i + l_j)).
ModuleMap relative_sigma(const RelativeShiftOps& base, int i, int j,
                         const RelativeShiftOps& inner, VectModulePtr src, VectModulePtr dst);

// Single-ε convenience used by the CLI.
struct RelativeShiftResult {
  VectModulePtr module;
  ModuleMap eta;
};
RelativeShiftResult relative_shift(const MonotoneMap& f, const TranslationFamily& T,
                                   VectModulePtr M, const Rat& eps, int threads = 1);

}  // namespace pil
