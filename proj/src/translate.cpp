#include "pil/translate.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace pil {

namespace {

bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->size() == b->size() && a->hasse() == b->hasse();
}

std::string triple(const FinitePoset& P, int p, int q, int r) {
  std::ostringstream os;
  os << "(" << P.label(p) << ", " << P.label(q) << ", " << P.label(r) << ")";
  return os.str();
}

}  // namespace

std::vector<Rat> WeightedPoset::ladder_values() const {
  std::set<Rat> vals;
  vals.insert(Rat(0));
  for (const auto& row : w)
    for (const auto& v : row)
      if (!v.infinite) vals.insert(v.value);
  return std::vector<Rat>(vals.begin(), vals.end());
}

ValidationReport validate_weighted(const WeightedPoset& wP) {
  if (!wP.poset) return {false, "weighting has no poset"};
  const FinitePoset& P = *wP.poset;
  const int n = P.size();
  if (static_cast<int>(wP.w.size()) != n)
    return {false, "weight matrix has wrong number of rows"};
  for (int p = 0; p < n; ++p)
    if (static_cast<int>(wP.w[p].size()) != n)
      return {false, "weight matrix row '" + P.label(p) + "' has wrong length"};

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const ExtRat& v = wP.w[p][q];
      if (!v.infinite && v.value < Rat(0))
        return {false, "negative weight at (" + P.label(p) + ", " + P.label(q) + ")"};
      const bool zero = !v.infinite && v.value == Rat(0);
      if (P.leq(q, p) && !zero)
        return {false,
                "weight at (" + P.label(p) + ", " + P.label(q) + ") must be 0: " + P.label(q) +
                    " ≤ " + P.label(p)};
      if (!P.leq(q, p) && zero)
        return {false, "weight at (" + P.label(p) + ", " + P.label(q) +
                           ") must be positive off the down relation"};
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (wP.w[p][q].infinite) continue;  // w(p,q) = ∞ never breaks w(p,r) ≤ w(p,q) + w(q,r)
      for (int r = 0; r < n; ++r) {
        ExtRat lhs = wP.w[p][r];
        ExtRat rhs = wP.w[p][q] + wP.w[q][r];
        if (rhs < lhs)
          return {false, "triangle inequality fails at " + triple(P, p, q, r)};
      }
    }
  return {};
}

void require_valid_weighted(const WeightedPoset& wP) {
  ValidationReport rep = validate_weighted(wP);
  if (!rep.ok) throw ValidationError("invalid weighting: " + rep.message);
}

DownSet time_ball(const WeightedPoset& wP, int p, const Rat& eps) {
  const FinitePoset& P = *wP.poset;
  if (eps < Rat(0)) throw PreconditionError("time_ball: negative radius");
  Bitset members = P.empty_set();
  for (int r = 0; r < P.size(); ++r) {
    const ExtRat& v = wP.w[p][r];
    if (!v.infinite && v.value <= eps) members.set(r);
  }
  DownSet ball{wP.poset, members};
  if (!ball.is_valid())
    throw ValidationError("time_ball: ball at '" + P.label(p) +
                          "' is not a down set; weighting violates its axioms");
  return ball;
}

VectModule shift_weighted(const WeightedPoset& wP, const VectModule& M, const Rat& eps) {
  require_valid_weighted(wP);
  if (!same_poset(wP.poset, M.poset))
    throw ShapeMismatch("shift_weighted: module and weighting posets differ");
  const FinitePoset& P = *wP.poset;
  const int n = P.size();

  std::vector<VectColimit> colims;
  colims.reserve(n);
  for (int q = 0; q < n; ++q)
    colims.push_back(colimit_over(M, time_ball(wP, q, eps).members));

  VectModule R;
  R.poset = wP.poset;
  R.p = M.p;
  R.dims.resize(n);
  for (int q = 0; q < n; ++q) R.dims[q] = colims[q].dim;
  for (const auto& [a, b] : P.hasse()) {
    // B(a;ε) ⊆ B(b;ε), so the b-colimit's legs form a cocone over the a-ball.
    std::vector<FFMatrix> cocone;
    cocone.reserve(colims[a].elems.size());
    for (int e : colims[a].elems) cocone.push_back(colims[b].leg_of(e));
    R.edge_maps.emplace(std::make_pair(a, b), factor_cocone(colims[a], cocone, colims[b].dim));
  }
  return R;
}

int TranslationFamily::snap_index(const Rat& eps) const {
  if (eps < Rat(0)) throw PreconditionError("translation evaluated at negative shift");
  auto it = std::upper_bound(ladder.begin(), ladder.end(), eps);
  if (it == ladder.begin())
    throw PreconditionError("translation ladder has no rung below the requested shift");
  return static_cast<int>(it - ladder.begin()) - 1;
}

TranslationFamily TranslationFamily::identity(PosetPtr P) {
  TranslationFamily T;
  T.poset = P;
  T.ladder = {Rat(0)};
  std::vector<int> id(P->size());
  for (int i = 0; i < P->size(); ++i) id[i] = i;
  T.maps = {std::move(id)};
  return T;
}

namespace {

std::optional<std::string> translation_shape_violation(const TranslationFamily& T) {
  if (!T.poset) return "translation family has no poset";
  if (T.ladder.empty()) return std::string("translation ladder is empty");
  if (T.maps.size() != T.ladder.size()) return std::string("one map required per ladder value");
  const int n = T.poset->size();
  for (const auto& m : T.maps) {
    if (static_cast<int>(m.size()) != n) return std::string("translation map has wrong length");
    for (int v : m)
      if (v < 0 || v >= n) return std::string("translation map value out of range");
  }
  if (T.ladder.front() != Rat(0)) return std::string("translation ladder must start at 0");
  for (std::size_t i = 1; i < T.ladder.size(); ++i)
    if (!(T.ladder[i - 1] < T.ladder[i]))
      return std::string("translation ladder must be strictly increasing");
  return std::nullopt;
}

enum class TAxiom { Shape, Monotone, Inflationary, LadderMonotone, Superlinear, IdentityAtZero };

struct TViolation {
  TAxiom axiom;
  std::string message;
};

std::optional<TViolation> translation_violation(const TranslationFamily& T,
                                                bool require_identity_at_zero) {
  if (auto shape = translation_shape_violation(T)) return TViolation{TAxiom::Shape, *shape};
  const FinitePoset& P = *T.poset;
  const int n = P.size();
  const int L = T.rungs();

  for (int i = 0; i < L; ++i) {
    const auto& m = T.maps[i];
    for (const auto& [a, b] : P.hasse())
      if (!P.leq(m[a], m[b]))
        return TViolation{TAxiom::Monotone, "T_" + format_rat(T.ladder[i]) +
                                                " is not monotone at " + P.label(a) + " ≤ " +
                                                P.label(b)};
    for (int x = 0; x < n; ++x)
      if (!P.leq(x, m[x]))
        return TViolation{TAxiom::Inflationary, "T_" + format_rat(T.ladder[i]) +
                                                    " is not inflationary at " + P.label(x)};
  }
  for (int i = 0; i + 1 < L; ++i)
    for (int x = 0; x < n; ++x)
      if (!P.leq(T.maps[i][x], T.maps[i + 1][x]))
        return TViolation{TAxiom::LadderMonotone,
                          "family is not monotone in ε between " + format_rat(T.ladder[i]) +
                              " and " + format_rat(T.ladder[i + 1]) + " at " + P.label(x)};
  if (require_identity_at_zero)
    for (int x = 0; x < n; ++x)
      if (T.maps[0][x] != x)
        return TViolation{TAxiom::IdentityAtZero,
                          "T_0 is not the identity at " + P.label(x)};
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const int k = T.snap_index(T.ladder[i] + T.ladder[j]);
      for (int x = 0; x < n; ++x)
        if (!P.leq(T.maps[j][T.maps[i][x]], T.maps[k][x]))
          return TViolation{TAxiom::Superlinear,
                            "superlinearity fails: T_" + format_rat(T.ladder[j]) + "∘T_" +
                                format_rat(T.ladder[i]) + " ≰ T_" + format_rat(T.ladder[k]) +
                                " at " + P.label(x)};
    }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_translation(const TranslationFamily& T, bool require_identity_at_zero) {
  if (auto v = translation_violation(T, require_identity_at_zero)) return {false, v->message};
  return {};
}

void require_valid_translation(const TranslationFamily& T, bool require_identity_at_zero) {
  ValidationReport rep = validate_translation(T, require_identity_at_zero);
  if (!rep.ok) throw ValidationError("invalid translation family: " + rep.message);
}

Thickening thickening_from_weighting(const WeightedPoset& wP, std::size_t cap) {
  require_valid_weighted(wP);
  DownLattice L = down_lattice(wP.poset, cap);
  const FinitePoset& P = *wP.poset;
  const int n = P.size();
  const std::size_t m = L.down_sets.size();

  TranslationFamily T;
  T.poset = L.lattice;
  T.ladder = wP.ladder_values();
  const int R = static_cast<int>(T.ladder.size());

  // ball[i][p] = B(p; ladder[i]) as a bitset.
  std::vector<std::vector<Bitset>> ball(R, std::vector<Bitset>(n));
  for (int i = 0; i < R; ++i)
    for (int p = 0; p < n; ++p) ball[i][p] = time_ball(wP, p, T.ladder[i]).members;

  T.maps.assign(R, std::vector<int>(m));
  for (int i = 0; i < R; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      Bitset u = P.empty_set();
      const Bitset& S = L.down_sets[k];
      for (auto p = S.find_first(); p != Bitset::npos; p = S.find_next(p))
        u |= ball[i][static_cast<int>(p)];
      T.maps[i][k] = L.index_of(u);
    }

  // Locality: thickening a down set member-by-member through principal downs
  // agrees with thickening it at once.
  for (int i = 0; i < R; ++i) {
    std::vector<Bitset> prin(n);
    for (int p = 0; p < n; ++p) {
      Bitset d = P.down_set(p);
      Bitset u = P.empty_set();
      for (auto r = d.find_first(); r != Bitset::npos; r = d.find_next(r))
        u |= ball[i][static_cast<int>(r)];
      prin[p] = u;
    }
    for (std::size_t k = 0; k < m; ++k) {
      const Bitset& S = L.down_sets[k];
      Bitset via_prin = P.empty_set();
      for (auto p = S.find_first(); p != Bitset::npos; p = S.find_next(p))
        via_prin |= prin[static_cast<int>(p)];
      if (via_prin != L.down_sets[T.maps[i][k]])
        throw ThickeningAxiomError("thickening at " + format_rat(T.ladder[i]) +
                                   " is not determined by principal down sets");
    }
  }

  ValidationReport rep = validate_translation(T, /*require_identity_at_zero=*/true);
  if (!rep.ok) throw ThickeningAxiomError("weight-induced thickening: " + rep.message);
  return {std::move(L), std::move(T)};
}

VectModule shift_three_step(const WeightedPoset& wP, const VectModule& M, const Rat& eps,
                            std::size_t cap) {
  if (!same_poset(wP.poset, M.poset))
    throw ShapeMismatch("shift_three_step: module and weighting posets differ");
  Thickening th = thickening_from_weighting(wP, cap);
  const int i = th.family.snap_index(eps);
  MonotoneMap tmap{th.lattice.lattice, th.lattice.lattice, th.family.maps[i]};
  MonotoneMap g = compose(tmap, th.lattice.iota);  // p ↦ T_ε(D_p)
  VectPushforward pushed = pushforward(th.lattice.iota, M);
  return pullback(g, pushed.module);
}

namespace {

// Joins version: every q above all of f(S) must lie above f(⋁S);
// as bitsets, ∩_{x∈S} U_{f(x)} ⊆ U_{f(⋁S)}.
bool join_condition(const MonotoneMap& f, const LatticeOps& ops, const Bitset& S) {
  const FinitePoset& Q = *f.target;
  Bitset acc = Q.full_set();
  for (auto x = S.find_first(); x != Bitset::npos; x = S.find_next(x))
    acc &= Q.up_set(f(static_cast<int>(x)));
  return acc.is_subset_of(Q.up_set(f(ops.join_of(S))));
}

bool meet_condition(const MonotoneMap& f, const LatticeOps& ops, const Bitset& S) {
  const FinitePoset& Q = *f.target;
  Bitset acc = Q.full_set();
  for (auto x = S.find_first(); x != Bitset::npos; x = S.find_next(x))
    acc &= Q.down_set(f(static_cast<int>(x)));
  return acc.is_subset_of(Q.down_set(f(ops.meet_of(S))));
}

template <typename Cond>
bool check_all_subsets(PosetPtr L, std::uint64_t seed, const Cond& cond) {
  const int n = L->size();
  if (n <= 16) {
    const std::uint32_t total = 1u << n;
    Bitset S(static_cast<std::size_t>(n));
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      S.reset();
      for (int x = 0; x < n; ++x)
        if (mask & (1u << x)) S.set(x);
      if (!cond(S)) return false;
    }
    return true;
  }
  Bitset S(static_cast<std::size_t>(n));
  if (!cond(S)) return false;  // ∅
  for (int x = 0; x < n; ++x) {
    S.reset();
    S.set(x);
    if (!cond(S)) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      S.reset();
      S.set(x);
      S.set(y);
      if (!cond(S)) return false;
    }
  std::mt19937_64 gen(seed);
  for (int trial = 0; trial < 4096; ++trial) {
    S.reset();
    for (int x = 0; x < n; ++x)
      if (gen() & 1u) S.set(x);
    if (!cond(S)) return false;
  }
  return true;
}

LatticeOps require_lattice(const MonotoneMap& f, const char* who) {
  LatticeOps ops = lattice_ops(f.source);
  if (!ops.is_lattice)
    throw NotALattice(std::string(who) + ": source of the map is not a lattice");
  return ops;
}

}  // namespace

bool respects_joins(const MonotoneMap& f, std::uint64_t sample_seed) {
  LatticeOps ops = require_lattice(f, "respects_joins");
  return check_all_subsets(f.source, sample_seed,
                           [&](const Bitset& S) { return join_condition(f, ops, S); });
}

bool respects_meets(const MonotoneMap& f, std::uint64_t sample_seed) {
  LatticeOps ops = require_lattice(f, "respects_meets");
  return check_all_subsets(f.source, sample_seed,
                           [&](const Bitset& S) { return meet_condition(f, ops, S); });
}

GaloisPair galois(const MonotoneMap& f) {
  LatticeOps ops = require_lattice(f, "galois");
  const FinitePoset& L = *f.source;
  const FinitePoset& Q = *f.target;
  GaloisPair g{f, std::vector<int>(Q.size()), std::vector<int>(Q.size())};
  for (int q = 0; q < Q.size(); ++q) {
    Bitset sub = L.empty_set(), sup = L.empty_set();
    for (int x = 0; x < L.size(); ++x) {
      if (Q.leq(f(x), q)) sub.set(x);
      if (Q.leq(q, f(x))) sup.set(x);
    }
    g.flat[q] = ops.join_of(sub);
    g.sharp[q] = ops.meet_of(sup);
  }
  return g;
}

namespace {

TranslationFamily conjugate_family(const MonotoneMap& f, const TranslationFamily& T,
                                   const std::vector<int>& adjoint) {
  TranslationFamily R;
  R.poset = f.source;
  R.ladder = T.ladder;
  R.maps.assign(T.maps.size(), std::vector<int>(f.source->size()));
  for (std::size_t i = 0; i < T.maps.size(); ++i)
    for (int x = 0; x < f.source->size(); ++x) R.maps[i][x] = adjoint[T.maps[i][f(x)]];
  return R;
}

}  // namespace

TranslationFamily lower_approx_translation(const MonotoneMap& f, const TranslationFamily& T) {
  if (!same_poset(f.target, T.poset))
    throw ShapeMismatch("lower_approx_translation: translation lives on a different poset");
  if (!respects_joins(f))
    throw PreconditionError("lower_approx_translation: map does not respect joins");
  TranslationFamily R = conjugate_family(f, T, galois(f).flat);
  require_valid_translation(R);
  return R;
}

UpperApprox upper_approx_translation(const MonotoneMap& f, const TranslationFamily& T) {
  if (!same_poset(f.target, T.poset))
    throw ShapeMismatch("upper_approx_translation: translation lives on a different poset");
  if (!f.is_full())
    throw PreconditionError("upper_approx_translation: map must be full");
  UpperApprox out{conjugate_family(f, T, galois(f).sharp), false};
  auto v = translation_violation(out.family, false);
  if (!v) {
    out.superlinear = true;
  } else if (v->axiom != TAxiom::Superlinear) {
    throw ValidationError("upper approximation is not a translation family: " + v->message);
  }
  return out;
}

RelativeShiftOps make_relative_shift(const MonotoneMap& f, const TranslationFamily& T,
                                     VectModulePtr M, int threads) {
  if (!same_poset(f.target, T.poset))
    throw ShapeMismatch("relative shift: translation lives on a different poset");
  if (!same_poset(f.source, M->poset))
    throw ShapeMismatch("relative shift: module lives on a different poset");
  RelativeShiftOps ops{f, T, M, pushforward(f, *M, threads), nullptr};
  ops.A = std::make_shared<VectModule>(ops.push.module);
  return ops;
}

VectModule RelativeShiftOps::at_index(int i) const {
  const FinitePoset& P = *f.source;
  VectModule R;
  R.poset = f.source;
  R.p = M->p;
  R.dims.resize(P.size());
  for (int x = 0; x < P.size(); ++x) R.dims[x] = A->dims[T.apply(i, f(x))];
  for (const auto& [a, b] : P.hasse())
    R.edge_maps.emplace(std::make_pair(a, b),
                        A->map_on(T.apply(i, f(a)), T.apply(i, f(b))));
  return R;
}

ModuleMap RelativeShiftOps::eta(int i, VectModulePtr shifted) const {
  const FinitePoset& P = *f.source;
  std::vector<FFMatrix> comps;
  comps.reserve(P.size());
  for (int x = 0; x < P.size(); ++x) {
    const int q = f(x);
    comps.push_back(matmul(A->map_on(q, T.apply(i, q)), push.colims[q].leg_of(x)));
  }
  return {M, std::move(shifted), std::move(comps)};
}

ModuleMap RelativeShiftOps::eta_between(int i, int j, VectModulePtr src,
                                        VectModulePtr dst) const {
  const FinitePoset& P = *f.source;
  std::vector<FFMatrix> comps;
  comps.reserve(P.size());
  for (int x = 0; x < P.size(); ++x) {
    const int q = f(x);
    comps.push_back(A->map_on(T.apply(i, q), T.apply(j, q)));
  }
  return {std::move(src), std::move(dst), std::move(comps)};
}

ModuleMap relative_sigma(const RelativeShiftOps& base, int i, int j,
                         const RelativeShiftOps& inner, VectModulePtr src, VectModulePtr dst) {
  const MonotoneMap& f = base.f;
  const TranslationFamily& T = base.T;
  const FinitePoset& P = *f.source;
  const int k = T.snap_index(T.ladder[i] + T.ladder[j]);

  std::vector<FFMatrix> comps;
  comps.reserve(P.size());
  for (int x = 0; x < P.size(); ++x) {
    const int q2 = T.apply(j, f(x));       // outer-shift evaluation point
    const int qi = T.apply(i, q2);         // where A is finally read
    // Counit of f_*f* at the inner shift: factor the cocone of A's own maps
    // through the colimit presenting f_*((M)^i)(q2).
    const VectColimit& C = inner.push.colims[q2];
    std::vector<FFMatrix> cocone;
    cocone.reserve(C.elems.size());
    for (int u : C.elems) cocone.push_back(base.A->map_on(T.apply(i, f(u)), qi));
    FFMatrix chi = factor_cocone(C, cocone, base.A->dims[qi]);
    comps.push_back(matmul(base.A->map_on(qi, T.apply(k, f(x))), chi));
  }
  return {std::move(src), std::move(dst), std::move(comps)};
}

RelativeShiftResult relative_shift(const MonotoneMap& f, const TranslationFamily& T,
                                   VectModulePtr M, const Rat& eps, int threads) {
  RelativeShiftOps ops = make_relative_shift(f, T, M, threads);
  const int i = T.snap_index(eps);
  auto mod = std::make_shared<VectModule>(ops.at_index(i));
  ModuleMap e = ops.eta(i, mod);
  return {std::move(mod), std::move(e)};
}

}  // namespace pil
