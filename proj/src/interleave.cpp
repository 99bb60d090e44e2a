#include "pil/interleave.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <functional>

namespace pil {

namespace {

bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->size() == b->size() && a->hasse() == b->hasse();
}

std::vector<int> compose_tables(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> r(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) r[x] = outer[inner[x]];
  return r;
}

// Pullback of a module along an endo-map given as a table.
VectModule pull_along(const std::vector<int>& t, const VectModule& M) {
  VectModule R;
  R.poset = M.poset;
  R.p = M.p;
  R.dims.resize(M.poset->size());
  for (int x = 0; x < M.poset->size(); ++x) R.dims[x] = M.dims[t[x]];
  for (const auto& [a, b] : M.poset->hasse())
    R.edge_maps.emplace(std::make_pair(a, b), M.map_on(t[a], t[b]));
  return R;
}

std::uint64_t checked_pow(std::uint32_t p, int g, std::uint64_t cap) {
  unsigned __int128 total = 1;
  for (int i = 0; i < g; ++i) {
    total *= p;
    if (total > cap)
      throw SearchCapExceeded("interleaving search: hom space of dimension " + std::to_string(g) +
                              " over F_" + std::to_string(p) + " exceeds the enumeration cap");
  }
  return static_cast<std::uint64_t>(total);
}

void append_flat(std::vector<std::uint32_t>& out, const ModuleMap& m) {
  for (const auto& c : m.comps) out.insert(out.end(), c.a.begin(), c.a.end());
}

std::vector<std::uint32_t> flatten(const ModuleMap& m) {
  std::vector<std::uint32_t> v;
  append_flat(v, m);
  return v;
}

}  // namespace

ShiftTheory ShiftTheory::intrinsic(TranslationFamily T) {
  require_valid_translation(T);
  ShiftTheory S;
  S.T_ = std::move(T);
  return S;
}

ShiftTheory ShiftTheory::relative(MonotoneMap f, TranslationFamily T, int threads) {
  require_valid_translation(T);
  if (!same_poset(f.target, T.poset))
    throw ShapeMismatch("relative shift theory: translation lives on a different poset");
  ShiftTheory S;
  S.T_ = std::move(T);
  S.f_ = std::move(f);
  S.threads_ = threads;
  return S;
}

const MonotoneMap& ShiftTheory::map() const {
  if (!f_) throw PreconditionError("intrinsic shift theory has no poset map");
  return *f_;
}

PosetPtr ShiftTheory::poset() const { return f_ ? f_->source : T_.poset; }

ShiftTheory::Bundle ShiftTheory::bundle(VectModulePtr M, int rung) const {
  if (!same_poset(M->poset, poset()))
    throw ShapeMismatch("shift theory and module posets differ");
  Bundle b;
  b.rung = rung;
  b.rung2 = T_.snap_index(T_.ladder[rung] + T_.ladder[rung]);
  b.base = M;

  if (!f_) {
    const auto& t = T_.maps[rung];
    const auto& tk = T_.maps[b.rung2];
    const std::vector<int> tt = compose_tables(t, t);
    b.shifted = std::make_shared<VectModule>(pull_along(t, *M));
    b.doubled = std::make_shared<VectModule>(pull_along(tt, *M));
    b.twice = std::make_shared<VectModule>(pull_along(tk, *M));
    const int n = M->poset->size();
    std::vector<FFMatrix> sig, weak, std_;
    sig.reserve(n);
    weak.reserve(n);
    std_.reserve(n);
    for (int x = 0; x < n; ++x) {
      sig.push_back(M->map_on(tt[x], tk[x]));
      weak.push_back(M->map_on(x, tk[x]));
      std_.push_back(M->map_on(x, tt[x]));
    }
    b.Sigma = {b.doubled, b.twice, std::move(sig)};
    b.rhs_weak = {b.base, b.twice, std::move(weak)};
    b.rhs_std = {b.base, b.doubled, std::move(std_)};
    return b;
  }

  auto ops = std::make_shared<RelativeShiftOps>(make_relative_shift(*f_, T_, M, threads_));
  b.shifted = std::make_shared<VectModule>(ops->at_index(rung));
  auto inner =
      std::make_shared<RelativeShiftOps>(make_relative_shift(*f_, T_, b.shifted, threads_));
  b.doubled = std::make_shared<VectModule>(inner->at_index(rung));
  b.twice = std::make_shared<VectModule>(ops->at_index(b.rung2));
  b.Sigma = relative_sigma(*ops, rung, rung, *inner, b.doubled, b.twice);
  // η^{0,2ε} ∘ η⁰ collapses along A = f_*M to η at the doubled rung.
  b.rhs_weak = ops->eta(b.rung2, b.twice);
  b.rhs_std = compose(inner->eta(rung, b.doubled), ops->eta(rung, b.shifted));
  b.ops_base = std::move(ops);
  b.ops_inner = std::move(inner);
  return b;
}

ModuleMap ShiftTheory::shift_map(const Bundle& src, const Bundle& dst,
                                 const ModuleMap& psi) const {
  if (src.rung != dst.rung) throw PreconditionError("shift_map: bundles are at different rungs");
  const int n = poset()->size();
  std::vector<FFMatrix> comps;
  comps.reserve(n);
  if (!f_) {
    const auto& t = T_.maps[src.rung];
    for (int x = 0; x < n; ++x) comps.push_back(psi.comps[t[x]]);
  } else {
    ModuleMap pushed = pushforward_map(*f_, psi, src.ops_base->push, dst.ops_inner->push);
    for (int x = 0; x < n; ++x)
      comps.push_back(pushed.comps[T_.apply(src.rung, (*f_)(x))]);
  }
  return {src.shifted, dst.doubled, std::move(comps)};
}

namespace {

struct SearchHit {
  std::uint64_t index = 0;
  std::vector<std::uint32_t> a, c;
};

std::optional<InterleavingCertificate> enumerate_certificate(const ShiftTheory& S,
                                                             VectModulePtr M, VectModulePtr N,
                                                             int rung, bool standard,
                                                             std::uint64_t cap, int threads) {
  if (M->p != N->p) throw ModulusMismatch("interleaving: modules over different fields");
  ShiftTheory::Bundle bm = S.bundle(M, rung);
  ShiftTheory::Bundle bn = S.bundle(N, rung);

  NatSpace homPhi = nat_trans_space(M, bn.shifted);
  NatSpace homPsi = nat_trans_space(N, bm.shifted);
  // Enumerate over the smaller hom space; the searched pair is symmetric.
  bool swapped = homPsi.dim < homPhi.dim;
  if (swapped) {
    std::swap(M, N);
    std::swap(bm, bn);
    std::swap(homPhi, homPsi);
  }
  const int g = homPhi.dim, h = homPsi.dim;
  const std::uint32_t p = M->p;
  const std::uint64_t total = checked_pow(p, g, cap);

  // φ^ε and ψ^ε per basis element; both defining equations are linear in the
  // coefficients, assembled from the composites below.
  //   weak:     Σ_M ∘ ψ^ε ∘ φ = rhsM   and   Σ_N ∘ φ^ε ∘ ψ = rhsN
  //   standard:       ψ^ε ∘ φ = rhsM   and         φ^ε ∘ ψ = rhsN
  std::vector<std::vector<std::vector<std::uint32_t>>> flatG(g), flatH(g);
  for (int i = 0; i < g; ++i) {
    flatG[i].resize(h);
    flatH[i].resize(h);
  }
  {
    std::vector<ModuleMap> shiftedPhi, shiftedPsi;
    shiftedPhi.reserve(g);
    shiftedPsi.reserve(h);
    for (int i = 0; i < g; ++i) shiftedPhi.push_back(S.shift_map(bm, bn, homPhi.basis[i]));
    for (int j = 0; j < h; ++j) shiftedPsi.push_back(S.shift_map(bn, bm, homPsi.basis[j]));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < h; ++j) {
        ModuleMap gij = standard ? compose(shiftedPsi[j], homPhi.basis[i])
                                 : compose(bm.Sigma, compose(shiftedPsi[j], homPhi.basis[i]));
        ModuleMap hij = standard ? compose(shiftedPhi[i], homPsi.basis[j])
                                 : compose(bn.Sigma, compose(shiftedPhi[i], homPsi.basis[j]));
        flatG[i][j] = flatten(gij);
        flatH[i][j] = flatten(hij);
      }
  }
  std::vector<std::uint32_t> rhs = flatten(standard ? bm.rhs_std : bm.rhs_weak);
  const std::size_t lenM = rhs.size();
  append_flat(rhs, standard ? bn.rhs_std : bn.rhs_weak);
  const std::size_t rows = rhs.size();

  std::atomic<std::uint64_t> best{total};
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<SearchHit> {
    std::vector<std::uint32_t> a(g);
    FFMatrix sys(p, static_cast<int>(rows), h);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx >= best.load(std::memory_order_relaxed)) break;
      std::uint64_t v = idx;
      for (int i = 0; i < g; ++i) {
        a[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      std::fill(sys.a.begin(), sys.a.end(), 0u);
      for (int j = 0; j < h; ++j)
        for (int i = 0; i < g; ++i) {
          if (a[i] == 0) continue;
          const auto& gc = flatG[i][j];
          const auto& hc = flatH[i][j];
          for (std::size_t r = 0; r < lenM; ++r)
            sys.a[r * h + j] = (sys.a[r * h + j] + static_cast<std::uint64_t>(a[i]) * gc[r]) % p;
          for (std::size_t r = 0; r < hc.size(); ++r)
            sys.a[(lenM + r) * h + j] =
                (sys.a[(lenM + r) * h + j] + static_cast<std::uint64_t>(a[i]) * hc[r]) % p;
        }
      if (auto c = solve(sys, rhs)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
        return SearchHit{idx, a, *c};
      }
    }
    return std::nullopt;
  };

  std::vector<std::optional<SearchHit>> hits;
  const int workers = std::max(1, std::min<int>(threads, 8));
  if (workers == 1 || total < 2048) {
    hits.push_back(scan(0, total));
  } else {
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::future<std::optional<SearchHit>>> futs;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = chunk * w, hi = std::min<std::uint64_t>(total, chunk * (w + 1));
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    for (auto& f : futs) hits.push_back(f.get());
  }
  std::optional<SearchHit> win;
  for (auto& hit : hits)
    if (hit && (!win || hit->index < win->index)) win = hit;
  if (!win) return std::nullopt;

  ModuleMap phi = nat_combination(homPhi, M, bn.shifted, win->a);
  ModuleMap psi = nat_combination(homPsi, N, bm.shifted, win->c);
  // Independent recheck by direct composition on the combined maps.
  if (!phi.is_natural() || !psi.is_natural())
    throw Error("interleaving search: certificate failed naturality recheck");
  ModuleMap psiShift = S.shift_map(bn, bm, psi);
  ModuleMap phiShift = S.shift_map(bm, bn, phi);
  bool ok;
  if (standard) {
    ok = compose(psiShift, phi) == bm.rhs_std && compose(phiShift, psi) == bn.rhs_std;
  } else {
    ok = compose(bm.Sigma, compose(psiShift, phi)) == bm.rhs_weak &&
         compose(bn.Sigma, compose(phiShift, psi)) == bn.rhs_weak;
  }
  if (!ok) throw Error("interleaving search: certificate failed equation recheck");

  InterleavingCertificate cert;
  cert.epsilon = S.family().ladder[rung];
  cert.standard = standard;
  cert.relative = S.is_relative();
  if (swapped) {
    cert.phi = std::move(psi);
    cert.psi = std::move(phi);
  } else {
    cert.phi = std::move(phi);
    cert.psi = std::move(psi);
  }
  return cert;
}

}  // namespace

std::optional<InterleavingCertificate> weak_exists(const ShiftTheory& S, VectModulePtr M,
                                                   VectModulePtr N, const Rat& eps,
                                                   std::uint64_t cap, int threads) {
  return enumerate_certificate(S, M, N, S.family().snap_index(eps), false, cap, threads);
}

std::optional<InterleavingCertificate> standard_exists(const ShiftTheory& S, VectModulePtr M,
                                                       VectModulePtr N, const Rat& eps,
                                                       std::uint64_t cap, int threads) {
  return enumerate_certificate(S, M, N, S.family().snap_index(eps), true, cap, threads);
}

DistanceResult interleaving_distance(const ShiftTheory& S, VectModulePtr M, VectModulePtr N,
                                     bool standard, std::uint64_t cap, int threads) {
  const auto& ladder = S.family().ladder;
  const int L = static_cast<int>(ladder.size());
  enum Status { No = 0, Yes = 1, Cap = 2 };
  std::vector<Status> status(L, No);
  std::optional<InterleavingCertificate> first;
  int firstYes = -1;
  // Full scan: monotonicity of existence along the ladder is verified, not
  // assumed, and the reported value is the true ladder minimum.
  for (int r = 0; r < L; ++r) {
    try {
      auto cert = enumerate_certificate(S, M, N, r, standard, cap, threads);
      if (cert) {
        status[r] = Yes;
        if (firstYes < 0) {
          firstYes = r;
          first = std::move(cert);
        }
      }
    } catch (const SearchCapExceeded&) {
      status[r] = Cap;
    }
  }
  DistanceResult out;
  for (int r = 0; r < L; ++r)
    if (status[r] == No && firstYes >= 0 && r > firstYes) ++out.monotonicity_violations;
  if (out.monotonicity_violations > 0)
    out.note = "existence is not monotone along the ladder on this instance";
  if (firstYes >= 0) {
    bool capBelow = false;
    for (int r = 0; r < firstYes; ++r) capBelow |= status[r] == Cap;
    if (capBelow) {
      out.kind = DistanceResult::Kind::Indeterminate;
      out.note = "search cap hit below the smallest certificate";
    } else {
      out.kind = DistanceResult::Kind::Finite;
      out.value = ladder[firstYes];
      out.cert = std::move(first);
    }
    return out;
  }
  const bool anyCap = std::count(status.begin(), status.end(), Cap) > 0;
  out.kind = anyCap ? DistanceResult::Kind::Indeterminate : DistanceResult::Kind::Infinite;
  if (anyCap) out.note = "search cap hit and no certificate found";
  return out;
}

DistortionReport distortion_report(const MonotoneMap& f, const TranslationFamily& T,
                                   VectModulePtr M, VectModulePtr N, std::uint64_t cap,
                                   int threads) {
  ShiftTheory up = ShiftTheory::intrinsic(T);
  ShiftTheory down = ShiftTheory::relative(f, T, threads);
  auto fM = std::make_shared<VectModule>(pullback(f, *M));
  auto fN = std::make_shared<VectModule>(pullback(f, *N));
  auto pfM = std::make_shared<VectModule>(pushforward(f, *fM, threads).module);
  auto pfN = std::make_shared<VectModule>(pushforward(f, *fN, threads).module);

  DistortionReport rep;
  rep.upstairs = interleaving_distance(up, M, N, false, cap, threads);
  rep.downstairs = interleaving_distance(down, fM, fN, false, cap, threads);
  rep.defect_m = interleaving_distance(up, M, pfM, false, cap, threads);
  rep.defect_n = interleaving_distance(up, N, pfN, false, cap, threads);

  using K = DistanceResult::Kind;
  const bool indet = rep.upstairs.kind == K::Indeterminate ||
                     rep.downstairs.kind == K::Indeterminate ||
                     rep.defect_m.kind == K::Indeterminate || rep.defect_n.kind == K::Indeterminate;
  if (indet) return rep;
  rep.bound_checked = true;

  auto ext = [](const DistanceResult& d) {
    return d.kind == K::Infinite ? ExtRat::inf() : ExtRat(d.value);
  };
  ExtRat a = ext(rep.upstairs), b = ext(rep.downstairs);
  ExtRat lhs;
  if (a.infinite && b.infinite)
    lhs = ExtRat(Rat(0));  // both infinite: no distortion to bound
  else if (a.infinite || b.infinite)
    lhs = ExtRat::inf();
  else
    lhs = ExtRat(a.value < b.value ? b.value - a.value : a.value - b.value);
  ExtRat rhs = ext(rep.defect_m) + ext(rep.defect_n);
  rep.bound_ok = lhs <= rhs;
  return rep;
}

// --- Set-valued search -------------------------------------------------------

namespace {

SetModule set_pull_along(const std::vector<int>& t, const SetModule& M) {
  SetModule R;
  R.poset = M.poset;
  R.sizes.resize(M.poset->size());
  for (int x = 0; x < M.poset->size(); ++x) R.sizes[x] = M.sizes[t[x]];
  for (const auto& [a, b] : M.poset->hasse())
    R.edge_fns.emplace(std::make_pair(a, b), M.fn_on(t[a], t[b]));
  return R;
}

struct SetBundle {
  SetModulePtr base, shifted, doubled, twice;
  std::vector<std::vector<int>> Sigma;  // doubled(x) → twice(x)
  std::vector<std::vector<int>> rhs;    // base(x) → twice(x)
};

SetBundle set_bundle(const TranslationFamily& T, SetModulePtr M, int rung) {
  const auto& t = T.maps[rung];
  const int rung2 = T.snap_index(T.ladder[rung] + T.ladder[rung]);
  const auto& tk = T.maps[rung2];
  const std::vector<int> tt = compose_tables(t, t);
  SetBundle b;
  b.base = M;
  b.shifted = std::make_shared<SetModule>(set_pull_along(t, *M));
  b.doubled = std::make_shared<SetModule>(set_pull_along(tt, *M));
  b.twice = std::make_shared<SetModule>(set_pull_along(tk, *M));
  const int n = M->poset->size();
  b.Sigma.resize(n);
  b.rhs.resize(n);
  for (int x = 0; x < n; ++x) {
    b.Sigma[x] = M->fn_on(tt[x], tk[x]);
    b.rhs[x] = M->fn_on(x, tk[x]);
  }
  return b;
}

// Backtracking enumeration of natural transformations src → dstShift (where
// dstShift(x) = dst(t[x])) in topological order. Forced values come from
// naturality against already-assigned Hasse predecessors; `extra` may reject a
// completed component immediately (pentagon pruning). Returns true when
// `done` accepted a full assignment.
struct NatEnumerator {
  const SetModule& src;
  const SetModule& shifted;  // pullback of the codomain along t
  const FinitePoset& P;
  std::vector<std::vector<int>>& comps;
  std::size_t& visited;
  std::size_t cap;
  std::function<bool(int)> component_ok;  // called with element index
  std::function<bool()> done;

  std::vector<std::vector<std::pair<int, const std::vector<int>*>>> ins;  // per element

  explicit NatEnumerator(const SetModule& s, const SetModule& sh,
                         std::vector<std::vector<int>>& c, std::size_t& vis, std::size_t cp)
      : src(s), shifted(sh), P(*s.poset), comps(c), visited(vis), cap(cp) {
    ins.resize(P.size());
    for (const auto& [a, b] : P.hasse()) ins[b].push_back({a, &src.edge(a, b)});
  }

  bool run() { return place(0); }

  bool place(int tpos) {
    if (tpos == P.size()) return done();
    const int x = P.topo_order()[tpos];
    const int srcSize = src.sizes[x];
    const int dstSize = shifted.sizes[x];
    std::vector<int>& val = comps[x];
    val.assign(srcSize, -1);
    // Naturality forces the image of every in-edge.
    for (const auto& [a, fn] : ins[x]) {
      const std::vector<int> g = shifted.fn_on(a, x);
      for (int s = 0; s < src.sizes[a]; ++s) {
        const int slot = (*fn)[s];
        const int want = g[comps[a][s]];
        if (val[slot] >= 0 && val[slot] != want) return false;
        val[slot] = want;
      }
    }
    std::vector<int> free;
    for (int s = 0; s < srcSize; ++s)
      if (val[s] < 0) free.push_back(s);
    if (!free.empty() && dstSize == 0) return false;
    if (free.empty()) {
      if (++visited > cap) throw SearchCapExceeded("set interleaving search cap exceeded");
      return component_ok(x) && place(tpos + 1);
    }
    std::vector<int> digits(free.size(), 0);
    while (true) {
      if (++visited > cap) throw SearchCapExceeded("set interleaving search cap exceeded");
      for (std::size_t i = 0; i < free.size(); ++i) val[free[i]] = digits[i];
      if (component_ok(x) && place(tpos + 1)) return true;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == dstSize) digits[i++] = 0;
      if (i == digits.size()) return false;
    }
  }
};

bool tables_equal_on(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  return lhs == rhs;
}

}  // namespace

std::optional<SetInterleavingCertificate> set_weak_exists(const TranslationFamily& T,
                                                          SetModulePtr M, SetModulePtr N,
                                                          const Rat& eps, std::size_t cap) {
  require_valid_translation(T);
  if (!same_poset(M->poset, T.poset) || !same_poset(N->poset, T.poset))
    throw ShapeMismatch("set interleaving: modules and translations on different posets");
  const int rung = T.snap_index(eps);
  const auto& t = T.maps[rung];
  SetBundle bm = set_bundle(T, M, rung);
  SetBundle bn = set_bundle(T, N, rung);
  const FinitePoset& P = *T.poset;
  const int n = P.size();

  // Elements whose pentagon constraint reads ψ at t[q].
  std::vector<std::vector<int>> tinv(n);
  for (int q = 0; q < n; ++q) tinv[t[q]].push_back(q);

  std::vector<std::vector<int>> phi(n), psi(n);
  std::size_t visited = 0;

  // Pentagon on M at q: Σ_M[q] ∘ ψ_{t q} ∘ φ_q = rhs_M[q]; on N at q:
  // Σ_N[q] ∘ φ_{t q} ∘ ψ_q = rhs_N[q]. With φ fixed, both are checkable the
  // moment a component of ψ is assigned.
  std::optional<SetInterleavingCertificate> found;

  NatEnumerator phiEnum(*M, *bn.shifted, phi, visited, cap);
  phiEnum.component_ok = [](int) { return true; };
  phiEnum.done = [&]() {
    NatEnumerator psiEnum(*N, *bm.shifted, psi, visited, cap);
    psiEnum.component_ok = [&](int y) {
      for (int q : tinv[y]) {  // pentagon on M, lands in ψ_y
        for (int s = 0; s < M->sizes[q]; ++s)
          if (bm.Sigma[q][psi[y][phi[q][s]]] != bm.rhs[q][s]) return false;
      }
      for (int s = 0; s < N->sizes[y]; ++s)  // pentagon on N at y
        if (bn.Sigma[y][phi[t[y]][psi[y][s]]] != bn.rhs[y][s]) return false;
      return true;
    };
    psiEnum.done = [&]() {
      SetModuleMap pm{M, bn.shifted, phi};
      SetModuleMap ps{N, bm.shifted, psi};
      if (!pm.is_natural() || !ps.is_natural())
        throw Error("set interleaving: certificate failed naturality recheck");
      for (int q = 0; q < n; ++q) {
        std::vector<int> lhsM(M->sizes[q]), lhsN(N->sizes[q]);
        for (int s = 0; s < M->sizes[q]; ++s) lhsM[s] = bm.Sigma[q][psi[t[q]][phi[q][s]]];
        for (int s = 0; s < N->sizes[q]; ++s) lhsN[s] = bn.Sigma[q][phi[t[q]][psi[q][s]]];
        if (!tables_equal_on(lhsM, bm.rhs[q]) || !tables_equal_on(lhsN, bn.rhs[q]))
          throw Error("set interleaving: certificate failed equation recheck");
      }
      found = SetInterleavingCertificate{T.ladder[rung], std::move(pm), std::move(ps)};
      return true;
    };
    return psiEnum.run();
  };
  phiEnum.run();
  return found;
}

SetDistanceResult set_interleaving_distance(const TranslationFamily& T, SetModulePtr M,
                                            SetModulePtr N, std::size_t cap) {
  const int L = static_cast<int>(T.ladder.size());
  enum Status { No = 0, Yes = 1, Cap = 2 };
  std::vector<Status> status(L, No);
  std::optional<SetInterleavingCertificate> first;
  int firstYes = -1;
  for (int r = 0; r < L; ++r) {
    try {
      auto cert = set_weak_exists(T, M, N, T.ladder[r], cap);
      if (cert) {
        status[r] = Yes;
        if (firstYes < 0) {
          firstYes = r;
          first = std::move(cert);
        }
      }
    } catch (const SearchCapExceeded&) {
      status[r] = Cap;
    }
  }
  SetDistanceResult out;
  for (int r = 0; r < L; ++r)
    if (status[r] == No && firstYes >= 0 && r > firstYes) ++out.monotonicity_violations;
  if (firstYes >= 0) {
    bool capBelow = false;
    for (int r = 0; r < firstYes; ++r) capBelow |= status[r] == Cap;
    if (capBelow) {
      out.kind = DistanceResult::Kind::Indeterminate;
    } else {
      out.kind = DistanceResult::Kind::Finite;
      out.value = T.ladder[firstYes];
      out.cert = std::move(first);
    }
    return out;
  }
  out.kind = std::count(status.begin(), status.end(), Cap) > 0
                 ? DistanceResult::Kind::Indeterminate
                 : DistanceResult::Kind::Infinite;
  return out;
}

RestrictionProbe standard_restriction_probe(const MonotoneMap& f, const TranslationFamily& T,
                                            VectModulePtr M, VectModulePtr N, std::uint64_t cap,
                                            int threads) {
  ShiftTheory up = ShiftTheory::intrinsic(T);
  ShiftTheory down = ShiftTheory::relative(f, T, threads);
  auto A = std::make_shared<VectModule>(pushforward(f, *M, threads).module);
  auto B = std::make_shared<VectModule>(pushforward(f, *N, threads).module);

  RestrictionProbe probe;
  probe.rungs = T.ladder;
  const int L = static_cast<int>(T.ladder.size());
  probe.upstairs.assign(L, 0);
  probe.downstairs.assign(L, 0);
  for (int r = 0; r < L; ++r) {
    try {
      probe.upstairs[r] = standard_exists(up, A, B, T.ladder[r], cap, threads) ? 1 : 0;
    } catch (const SearchCapExceeded&) {
      probe.upstairs[r] = -1;
    }
    try {
      probe.downstairs[r] = standard_exists(down, M, N, T.ladder[r], cap, threads) ? 1 : 0;
    } catch (const SearchCapExceeded&) {
      probe.downstairs[r] = -1;
    }
    if (probe.upstairs[r] == 1 && probe.downstairs[r] == 0) probe.counterexample = true;
  }
  return probe;
}

}  // namespace pil
