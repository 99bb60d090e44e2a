#include "pil/kan.hpp"

#include <algorithm>
#include <future>
#include <random>

namespace pil {

VectModule pullback(const MonotoneMap& f, const VectModule& M) {
  VectModule R;
  R.poset = f.source;
  R.p = M.p;
  R.dims.reserve(f.source->size());
  for (int x = 0; x < f.source->size(); ++x) R.dims.push_back(M.dims[f(x)]);
  for (auto& [a, b] : f.source->hasse()) R.edge_maps[{a, b}] = M.map_on(f(a), f(b));
  return R;
}

SetModule set_pullback(const MonotoneMap& f, const SetModule& M) {
  SetModule R;
  R.poset = f.source;
  for (int x = 0; x < f.source->size(); ++x) R.sizes.push_back(M.sizes[f(x)]);
  for (auto& [a, b] : f.source->hasse()) R.edge_fns[{a, b}] = M.fn_on(f(a), f(b));
  return R;
}

VectPushforward pushforward(const MonotoneMap& f, const VectModule& M, int threads) {
  const FinitePoset& Q = *f.target;
  VectPushforward out;
  out.module.poset = f.target;
  out.module.p = M.p;
  out.colims.resize(Q.size());

  auto compute_range = [&](int lo, int hi) {
    for (int q = lo; q < hi; ++q) out.colims[q] = colimit_over(M, sublevel(f, q));
  };
  if (threads <= 1 || Q.size() < 2) {
    compute_range(0, Q.size());
  } else {
    int nt = std::min(threads, Q.size());
    std::vector<std::future<void>> futs;
    int chunk = (Q.size() + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      int lo = t * chunk, hi = std::min(Q.size(), (t + 1) * chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, compute_range, lo, hi));
    }
    for (auto& fu : futs) fu.get();
  }

  out.module.dims.reserve(Q.size());
  for (int q = 0; q < Q.size(); ++q) out.module.dims.push_back(out.colims[q].dim);
  for (auto& [q, q2] : Q.hasse()) {
    const VectColimit& C = out.colims[q];
    std::vector<FFMatrix> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(out.colims[q2].leg_of(e));
    out.module.edge_maps[{q, q2}] = factor_cocone(C, cocone, out.colims[q2].dim);
  }
  return out;
}

VectOpenPushforward pushforward_open(const MonotoneMap& f, const VectModule& M) {
  const FinitePoset& Q = *f.target;
  VectOpenPushforward out;
  out.module.poset = f.target;
  out.module.p = M.p;
  out.lims.reserve(Q.size());
  for (int q = 0; q < Q.size(); ++q) out.lims.push_back(limit_over(M, superlevel(f, q)));
  for (int q = 0; q < Q.size(); ++q) out.module.dims.push_back(out.lims[q].dim);
  for (auto& [q, q2] : Q.hasse()) {
    // superlevel(q) ⊇ superlevel(q2): restrict q's projections to q2's cone.
    const VectLimit& L2 = out.lims[q2];
    std::vector<FFMatrix> cone;
    cone.reserve(L2.elems.size());
    for (int e : L2.elems) cone.push_back(out.lims[q].projection_of(e));
    out.module.edge_maps[{q, q2}] = factor_cone(L2, cone, out.lims[q].dim);
  }
  return out;
}

SetPushforward set_pushforward(const MonotoneMap& f, const SetModule& M) {
  const FinitePoset& Q = *f.target;
  SetPushforward out;
  out.module.poset = f.target;
  out.colims.reserve(Q.size());
  for (int q = 0; q < Q.size(); ++q) out.colims.push_back(set_colimit_over(M, sublevel(f, q)));
  for (int q = 0; q < Q.size(); ++q) out.module.sizes.push_back(out.colims[q].size);
  for (auto& [q, q2] : Q.hasse()) {
    const SetColimit& C = out.colims[q];
    std::vector<std::vector<int>> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(out.colims[q2].legs[out.colims[q2].index_in(e)]);
    out.module.edge_fns[{q, q2}] = set_factor_cocone(C, cocone);
  }
  return out;
}

ModuleMap pushforward_map(const MonotoneMap& f, const ModuleMap& psi,
                          const VectPushforward& pushSrc, const VectPushforward& pushDst) {
  (void)f;
  ModuleMap out;
  out.source = std::make_shared<const VectModule>(pushSrc.module);
  out.target = std::make_shared<const VectModule>(pushDst.module);
  int nq = pushSrc.module.poset->size();
  out.comps.reserve(nq);
  for (int q = 0; q < nq; ++q) {
    const VectColimit& C = pushSrc.colims[q];
    std::vector<FFMatrix> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(matmul(pushDst.colims[q].leg_of(e), psi.comps[e]));
    out.comps.push_back(factor_cocone(C, cocone, pushDst.colims[q].dim));
  }
  return out;
}

SetModuleMap set_pushforward_map(const MonotoneMap& f, const SetModuleMap& psi,
                                 const SetPushforward& pushSrc, const SetPushforward& pushDst) {
  (void)f;
  SetModuleMap out;
  out.source = std::make_shared<const SetModule>(pushSrc.module);
  out.target = std::make_shared<const SetModule>(pushDst.module);
  int nq = pushSrc.module.poset->size();
  out.comps.reserve(nq);
  for (int q = 0; q < nq; ++q) {
    const SetColimit& C = pushSrc.colims[q];
    std::vector<std::vector<int>> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) {
      const std::vector<int>& leg2 = pushDst.colims[q].legs[pushDst.colims[q].index_in(e)];
      std::vector<int> block(psi.comps[e].size());
      for (std::size_t j = 0; j < block.size(); ++j) block[j] = leg2[psi.comps[e][j]];
      cocone.push_back(std::move(block));
    }
    out.comps.push_back(set_factor_cocone(C, cocone));
  }
  return out;
}

ModuleMap unit(const MonotoneMap& f, VectModulePtr M) {
  VectPushforward push = pushforward(f, *M);
  ModuleMap u;
  u.source = M;
  u.target = std::make_shared<const VectModule>(pullback(f, push.module));
  u.comps.reserve(f.source->size());
  for (int x = 0; x < f.source->size(); ++x) u.comps.push_back(push.colims[f(x)].leg_of(x));
  return u;
}

ModuleMap counit(const MonotoneMap& f, VectModulePtr N) {
  return pixelize_lower(f, N).comparison;
}

ModuleMap unit_dagger(const MonotoneMap& f, VectModulePtr N) {
  return pixelize_upper(f, N).comparison;
}

ModuleMap counit_dagger(const MonotoneMap& f, VectModulePtr M) {
  VectOpenPushforward open = pushforward_open(f, *M);
  ModuleMap c;
  c.source = std::make_shared<const VectModule>(pullback(f, open.module));
  c.target = M;
  c.comps.reserve(f.source->size());
  for (int x = 0; x < f.source->size(); ++x) c.comps.push_back(open.lims[f(x)].projection_of(x));
  return c;
}

Pixelization pixelize_lower(const MonotoneMap& f, VectModulePtr M) {
  VectModule pb = pullback(f, *M);
  VectPushforward push = pushforward(f, pb);
  Pixelization out;
  out.module = std::make_shared<const VectModule>(push.module);
  ModuleMap chi;
  chi.source = out.module;
  chi.target = M;
  chi.comps.reserve(f.target->size());
  for (int q = 0; q < f.target->size(); ++q) {
    const VectColimit& C = push.colims[q];
    std::vector<FFMatrix> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(M->map_on(f(e), q));
    chi.comps.push_back(factor_cocone(C, cocone, M->dims[q]));
  }
  out.comparison = std::move(chi);
  return out;
}

Pixelization pixelize_upper(const MonotoneMap& f, VectModulePtr M) {
  VectModule pb = pullback(f, *M);
  VectOpenPushforward open = pushforward_open(f, pb);
  Pixelization out;
  out.module = std::make_shared<const VectModule>(open.module);
  ModuleMap ups;
  ups.source = M;
  ups.target = out.module;
  ups.comps.reserve(f.target->size());
  for (int q = 0; q < f.target->size(); ++q) {
    const VectLimit& L = open.lims[q];
    std::vector<FFMatrix> cone;
    cone.reserve(L.elems.size());
    for (int e : L.elems) cone.push_back(M->map_on(q, f(e)));
    ups.comps.push_back(factor_cone(L, cone, M->dims[q]));
  }
  out.comparison = std::move(ups);
  return out;
}

SetPixelization set_pixelize_lower(const MonotoneMap& f, SetModulePtr M) {
  SetModule pb = set_pullback(f, *M);
  SetPushforward push = set_pushforward(f, pb);
  SetPixelization out;
  out.module = std::make_shared<const SetModule>(push.module);
  SetModuleMap chi;
  chi.source = out.module;
  chi.target = M;
  chi.comps.reserve(f.target->size());
  for (int q = 0; q < f.target->size(); ++q) {
    const SetColimit& C = push.colims[q];
    std::vector<std::vector<int>> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(M->fn_on(f(e), q));
    chi.comps.push_back(set_factor_cocone(C, cocone));
  }
  out.comparison = std::move(chi);
  return out;
}

namespace {

// X is a union of members iff X equals the union of all members contained in X.
bool union_of_members(const Bitset& X, const std::vector<Bitset>& members) {
  Bitset acc(X.size());
  for (const Bitset& m : members)
    if ((m & ~X).none()) acc |= m;
  return acc == X;
}

bool is_basic_cover(const std::vector<Bitset>& members, const Bitset& S) {
  Bitset uni(S.size());
  for (const Bitset& m : members) uni |= m;
  if (uni != S) return false;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!union_of_members(members[i] & members[j], members)) return false;
  return true;
}

void add_unique(std::vector<Bitset>& fam, const Bitset& x) {
  if (x.none()) return;
  for (const Bitset& m : fam)
    if (m == x) return;
  fam.push_back(x);
}

}  // namespace

CosheafReport check_basic_cosheaf(const VectModule& M, int sample_count, std::uint64_t seed,
                                  std::size_t lattice_cap) {
  DownLattice L = down_lattice(M.poset, lattice_cap);
  VectPushforward push = pushforward(L.iota, M);
  const VectModule& iM = push.module;
  std::mt19937_64 rng(seed);
  int n = M.poset->size();

  CosheafReport rep;
  auto check_cover = [&](const std::vector<Bitset>& members, const Bitset& S) -> bool {
    int s_idx = L.index_of(S);
    Bitset cover_set = L.lattice->empty_set();
    for (const Bitset& m : members) cover_set.set(L.index_of(m));
    VectColimit C = colimit_over(iM, cover_set);
    std::vector<FFMatrix> cocone;
    cocone.reserve(C.elems.size());
    for (int e : C.elems) cocone.push_back(iM.map_on(e, s_idx));
    FFMatrix arrow = factor_cocone(C, cocone, iM.dims[s_idx]);
    return C.dim == iM.dims[s_idx] && is_invertible(arrow);
  };

  for (int t = 0; t < sample_count; ++t) {
    // Random down set S.
    Bitset seedset(n);
    for (int i = 0; i < n; ++i)
      if (rng() & 1) seedset.set(i);
    Bitset S = down_closure(M.poset, seedset).members;
    ++rep.samples;

    // (a) Cover by all principal down sets of S — always basic.
    std::vector<Bitset> principal;
    for (int p = 0; p < n; ++p)
      if (S.test(p)) principal.push_back(principal_down(M.poset, p).members);
    if (!principal.empty() || S.none()) {
      if (!S.none() && !check_cover(principal, S)) {
        rep.ok = false;
        rep.message = "principal cover violation at sample " + std::to_string(t);
        return rep;
      }
    }
    if (S.none()) continue;

    // (b) Random family of down subsets, Čech-completed (then basic for free).
    std::vector<Bitset> fam;
    int k = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      Bitset sub(n);
      for (int b = 0; b < n; ++b)
        if (S.test(b) && (rng() & 1)) sub.set(b);
      add_unique(fam, down_closure(M.poset, sub).members);
    }
    // Force covering: add principal downs of uncovered elements.
    Bitset uni(n);
    for (const Bitset& m : fam) uni |= m;
    for (int p = 0; p < n; ++p)
      if (S.test(p) && !uni.test(p)) add_unique(fam, principal_down(M.poset, p).members);
    // Čech completion: close under pairwise intersections.
    for (bool grew = true; grew;) {
      grew = false;
      std::size_t sz = fam.size();
      for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t j = i + 1; j < sz; ++j) {
          Bitset x = fam[i] & fam[j];
          std::size_t before = fam.size();
          add_unique(fam, x);
          if (fam.size() != before) grew = true;
        }
      }
    }
    if (!fam.empty()) {
      if (!is_basic_cover(fam, S)) {
        rep.ok = false;
        rep.message = "internal sampler produced a non-basic cover at sample " + std::to_string(t);
        return rep;
      }
      if (!check_cover(fam, S)) {
        rep.ok = false;
        rep.message = "Čech-completed cover violation at sample " + std::to_string(t);
        return rep;
      }
    }

    // (c) Random antichain of down sets, rejection-tested for basicness as-is.
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Bitset> anti;
      int m = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < m; ++i) {
        Bitset sub(n);
        for (int b = 0; b < n; ++b)
          if (S.test(b) && (rng() % 3 != 0)) sub.set(b);
        add_unique(anti, down_closure(M.poset, sub).members);
      }
      // Keep only maximal members (an antichain) and require exact cover.
      std::vector<Bitset> maxi;
      for (const Bitset& a : anti) {
        bool dominated = false;
        for (const Bitset& b : anti)
          if (a != b && (a & ~b).none()) dominated = true;
        if (!dominated) add_unique(maxi, a);
      }
      if (maxi.empty() || !is_basic_cover(maxi, S)) continue;
      if (!check_cover(maxi, S)) {
        rep.ok = false;
        rep.message = "antichain basic cover violation at sample " + std::to_string(t);
        return rep;
      }
      break;
    }
  }
  return rep;
}

}  // namespace pil
