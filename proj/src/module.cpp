#include "pil/module.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace pil {

namespace {

constexpr std::size_t npos = Bitset::npos;

std::vector<int> bits_to_vec(const Bitset& S) {
  std::vector<int> out;
  for (std::size_t i = S.find_first(); i != npos; i = S.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

// Posets are equal for module purposes when they have the same elements and
// the same order; labels are cosmetic.
bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->size() != b->size()) return false;
  return a->hasse() == b->hasse();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

// ---------------------------------------------------------------------------
// VectModule / SetModule basics

const FFMatrix& VectModule::edge(int lo, int hi) const {
  auto it = edge_maps.find({lo, hi});
  if (it == edge_maps.end())
    throw Error("missing edge map " + poset->label(lo) + " -> " + poset->label(hi));
  return it->second;
}

FFMatrix VectModule::map_on(int a, int b) const {
  if (a == b) return FFMatrix::identity(p, dims[a]);
  if (!poset->leq(a, b))
    throw PreconditionError("map_on requires " + poset->label(a) + " <= " + poset->label(b));
  // Walk down from b to a along covers, then compose upward.
  std::vector<std::pair<int, int>> chain;
  int cur = b;
  while (cur != a) {
    int z = -1;
    for (int cand : poset->hasse_below(cur)) {
      if (cand == a || poset->leq(a, cand)) {
        z = cand;
        break;
      }
    }
    chain.emplace_back(z, cur);
    cur = z;
  }
  FFMatrix A = FFMatrix::identity(p, dims[a]);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) A = matmul(edge(it->first, it->second), A);
  return A;
}

bool VectModule::is_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 0; });
}

VectModule VectModule::zero(PosetPtr P, std::uint32_t p) {
  VectModule M;
  M.poset = P;
  M.p = p;
  M.dims.assign(P->size(), 0);
  for (auto& e : P->hasse()) M.edge_maps[e] = FFMatrix(p, 0, 0);
  return M;
}

const std::vector<int>& SetModule::edge(int lo, int hi) const {
  auto it = edge_fns.find({lo, hi});
  if (it == edge_fns.end())
    throw Error("missing edge function " + poset->label(lo) + " -> " + poset->label(hi));
  return it->second;
}

std::vector<int> SetModule::fn_on(int a, int b) const {
  std::vector<int> f(sizes[a]);
  std::iota(f.begin(), f.end(), 0);
  if (a == b) return f;
  if (!poset->leq(a, b))
    throw PreconditionError("fn_on requires " + poset->label(a) + " <= " + poset->label(b));
  std::vector<std::pair<int, int>> chain;
  int cur = b;
  while (cur != a) {
    int z = -1;
    for (int cand : poset->hasse_below(cur)) {
      if (cand == a || poset->leq(a, cand)) {
        z = cand;
        break;
      }
    }
    chain.emplace_back(z, cur);
    cur = z;
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const std::vector<int>& step = edge(it->first, it->second);
    for (int& v : f) v = step[v];
  }
  return f;
}

SetModule SetModule::empty(PosetPtr P) {
  SetModule M;
  M.poset = P;
  M.sizes.assign(P->size(), 0);
  for (auto& e : P->hasse()) M.edge_fns[e] = {};
  return M;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const VectModule& M) {
  const FinitePoset& P = *M.poset;
  if (static_cast<int>(M.dims.size()) != P.size())
    return {false, "dims size does not match poset size"};
  for (int d : M.dims)
    if (d < 0) return {false, "negative dimension"};
  for (auto& e : P.hasse()) {
    auto it = M.edge_maps.find(e);
    if (it == M.edge_maps.end())
      return {false, "missing edge map " + P.label(e.first) + " -> " + P.label(e.second)};
    const FFMatrix& A = it->second;
    if (A.p != M.p)
      return {false, "edge map modulus mismatch at " + P.label(e.first) + " -> " + P.label(e.second)};
    if (A.rows != M.dims[e.second] || A.cols != M.dims[e.first])
      return {false, "edge map shape mismatch at " + P.label(e.first) + " -> " + P.label(e.second)};
  }
  for (auto& [e, A] : M.edge_maps) {
    (void)A;
    if (!std::binary_search(P.hasse().begin(), P.hasse().end(), e))
      return {false, "edge map on non-Hasse pair " + P.label(e.first) + " -> " + P.label(e.second)};
  }
  // Path independence: from every source, fold up the up-set in topological
  // order; every Hasse edge arriving at a common element must agree.
  for (int s = 0; s < P.size(); ++s) {
    std::vector<std::optional<FFMatrix>> acc(P.size());
    acc[s] = FFMatrix::identity(M.p, M.dims[s]);
    for (int x : P.topo_order()) {
      if (x == s || !P.leq(s, x)) continue;
      std::optional<FFMatrix> val;
      for (int z : P.hasse_below(x)) {
        if (!acc[z]) continue;
        FFMatrix cand = matmul(M.edge(z, x), *acc[z]);
        if (!val) {
          val = std::move(cand);
        } else if (*val != cand) {
          return {false, "path independence fails for paths from " + P.label(s) + " joining at " +
                             P.label(x)};
        }
      }
      acc[x] = std::move(val);
    }
  }
  return {};
}

ValidationReport validate(const SetModule& M) {
  const FinitePoset& P = *M.poset;
  if (static_cast<int>(M.sizes.size()) != P.size())
    return {false, "sizes does not match poset size"};
  for (int s : M.sizes)
    if (s < 0) return {false, "negative set size"};
  for (auto& e : P.hasse()) {
    auto it = M.edge_fns.find(e);
    if (it == M.edge_fns.end())
      return {false, "missing edge function " + P.label(e.first) + " -> " + P.label(e.second)};
    const std::vector<int>& f = it->second;
    if (static_cast<int>(f.size()) != M.sizes[e.first])
      return {false, "edge function domain mismatch at " + P.label(e.first) + " -> " + P.label(e.second)};
    for (int v : f)
      if (v < 0 || v >= M.sizes[e.second])
        return {false,
                "edge function value out of range at " + P.label(e.first) + " -> " + P.label(e.second)};
  }
  for (int s = 0; s < P.size(); ++s) {
    std::vector<std::optional<std::vector<int>>> acc(P.size());
    std::vector<int> id(M.sizes[s]);
    std::iota(id.begin(), id.end(), 0);
    acc[s] = id;
    for (int x : P.topo_order()) {
      if (x == s || !P.leq(s, x)) continue;
      std::optional<std::vector<int>> val;
      for (int z : P.hasse_below(x)) {
        if (!acc[z]) continue;
        const std::vector<int>& step = M.edge(z, x);
        std::vector<int> cand(acc[z]->size());
        for (std::size_t j = 0; j < cand.size(); ++j) cand[j] = step[(*acc[z])[j]];
        if (!val) {
          val = std::move(cand);
        } else if (*val != cand) {
          return {false, "path independence fails for paths from " + P.label(s) + " joining at " +
                             P.label(x)};
        }
      }
      acc[x] = std::move(val);
    }
  }
  return {};
}

void require_valid(const VectModule& M) {
  ValidationReport r = validate(M);
  if (!r.ok) throw ValidationError(r.message);
}

void require_valid(const SetModule& M) {
  ValidationReport r = validate(M);
  if (!r.ok) throw ValidationError(r.message);
}

// ---------------------------------------------------------------------------
// ModuleMap

bool ModuleMap::is_natural() const {
  const FinitePoset& P = *source->poset;
  for (auto& [a, b] : P.hasse()) {
    if (matmul(comps[b], source->edge(a, b)) != matmul(target->edge(a, b), comps[a])) return false;
  }
  return true;
}

bool ModuleMap::is_pointwise_invertible() const {
  for (const FFMatrix& c : comps)
    if (!is_invertible(c)) return false;
  return true;
}

bool ModuleMap::is_zero() const {
  for (const FFMatrix& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

ModuleMap identity_map(VectModulePtr M) {
  ModuleMap f;
  f.source = M;
  f.target = M;
  for (int d : M->dims) f.comps.push_back(FFMatrix::identity(M->p, d));
  return f;
}

ModuleMap zero_map(VectModulePtr source, VectModulePtr target) {
  ModuleMap f;
  f.source = source;
  f.target = target;
  for (int x = 0; x < source->poset->size(); ++x)
    f.comps.emplace_back(source->p, target->dims[x], source->dims[x]);
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  h.source = f.source;
  h.target = g.target;
  h.comps.reserve(f.comps.size());
  for (std::size_t x = 0; x < f.comps.size(); ++x) h.comps.push_back(matmul(g.comps[x], f.comps[x]));
  return h;
}

ModuleMap add(const ModuleMap& a, const ModuleMap& b) {
  ModuleMap h = a;
  for (std::size_t x = 0; x < h.comps.size(); ++x) h.comps[x] = pil::add(h.comps[x], b.comps[x]);
  return h;
}

ModuleMap scale(const ModuleMap& a, std::uint32_t c) {
  ModuleMap h = a;
  for (auto& m : h.comps) m = pil::scale(m, c);
  return h;
}

bool operator==(const ModuleMap& a, const ModuleMap& b) { return a.comps == b.comps; }

bool SetModuleMap::is_natural() const {
  const FinitePoset& P = *source->poset;
  for (auto& [a, b] : P.hasse()) {
    const std::vector<int>& fs = source->edge(a, b);
    const std::vector<int>& ft = target->edge(a, b);
    for (int j = 0; j < source->sizes[a]; ++j)
      if (comps[b][fs[j]] != ft[comps[a][j]]) return false;
  }
  return true;
}

bool SetModuleMap::is_pointwise_bijective() const {
  for (std::size_t x = 0; x < comps.size(); ++x) {
    if (static_cast<int>(comps[x].size()) != target->sizes[x]) return false;
    std::vector<char> hit(target->sizes[x], 0);
    for (int v : comps[x]) {
      if (v < 0 || v >= target->sizes[x] || hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

SetModuleMap set_identity_map(SetModulePtr M) {
  SetModuleMap f;
  f.source = M;
  f.target = M;
  for (int s : M->sizes) {
    std::vector<int> id(s);
    std::iota(id.begin(), id.end(), 0);
    f.comps.push_back(std::move(id));
  }
  return f;
}

SetModuleMap set_compose(const SetModuleMap& g, const SetModuleMap& f) {
  SetModuleMap h;
  h.source = f.source;
  h.target = g.target;
  for (std::size_t x = 0; x < f.comps.size(); ++x) {
    std::vector<int> c(f.comps[x].size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = g.comps[x][f.comps[x][j]];
    h.comps.push_back(std::move(c));
  }
  return h;
}

bool operator==(const SetModuleMap& a, const SetModuleMap& b) { return a.comps == b.comps; }

// ---------------------------------------------------------------------------
// Induced structure

std::vector<std::pair<int, int>> induced_hasse(const FinitePoset& P, const Bitset& S) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = S.find_first(); a != npos; a = S.find_next(a)) {
    for (std::size_t b = S.find_first(); b != npos; b = S.find_next(b)) {
      if (a == b || !P.lt(static_cast<int>(a), static_cast<int>(b))) continue;
      Bitset between = P.up_set(static_cast<int>(a));
      between &= P.down_set(static_cast<int>(b));
      between &= S;
      if (between.count() == 2) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubPoset induced_subposet(PosetPtr P, const Bitset& S) {
  SubPoset sub;
  sub.elems = bits_to_vec(S);
  int k = static_cast<int>(sub.elems.size());
  std::vector<std::string> labels;
  labels.reserve(k);
  for (int e : sub.elems) labels.push_back(P->label(e));
  std::vector<Bitset> leq(k, Bitset(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (P->leq(sub.elems[i], sub.elems[j])) leq[i].set(j);
  sub.poset = FinitePoset::from_leq(std::move(labels), std::move(leq));
  sub.incl = MonotoneMap{sub.poset, P, sub.elems};
  return sub;
}

VectModule restrict_module(const VectModule& M, const SubPoset& sub) {
  VectModule R;
  R.poset = sub.poset;
  R.p = M.p;
  for (int e : sub.elems) R.dims.push_back(M.dims[e]);
  for (auto& [a, b] : sub.poset->hasse()) R.edge_maps[{a, b}] = M.map_on(sub.elems[a], sub.elems[b]);
  return R;
}

SetModule restrict_set_module(const SetModule& M, const SubPoset& sub) {
  SetModule R;
  R.poset = sub.poset;
  for (int e : sub.elems) R.sizes.push_back(M.sizes[e]);
  for (auto& [a, b] : sub.poset->hasse()) R.edge_fns[{a, b}] = M.fn_on(sub.elems[a], sub.elems[b]);
  return R;
}

// ---------------------------------------------------------------------------
// Vect colimits / limits

int VectColimit::index_in(int poset_elem) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), poset_elem);
  if (it == elems.end() || *it != poset_elem) return -1;
  return static_cast<int>(it - elems.begin());
}

FFMatrix VectColimit::leg(int i) const {
  FFMatrix L(p, dim, block_dims[i]);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < block_dims[i]; ++c) L.at(r, c) = Q.at(r, offsets[i] + c);
  return L;
}

FFMatrix VectColimit::leg_of(int poset_elem) const {
  int i = index_in(poset_elem);
  if (i < 0) throw Error("element not part of this colimit");
  return leg(i);
}

namespace {

VectColimit colimit_impl(const VectModule& M, const Bitset& S,
                         const std::vector<std::pair<int, int>>& gens) {
  VectColimit C;
  C.p = M.p;
  C.elems = bits_to_vec(S);
  int total = 0;
  for (int e : C.elems) {
    C.offsets.push_back(total);
    C.block_dims.push_back(M.dims[e]);
    total += M.dims[e];
  }
  auto off_of = [&](int e) { return C.offsets[C.index_in(e)]; };
  int gen_cols = 0;
  for (auto& g : gens) gen_cols += M.dims[g.first];
  FFMatrix D(M.p, total, gen_cols);
  int col = 0;
  for (auto& [a, b] : gens) {
    FFMatrix f = M.map_on(a, b);
    for (int j = 0; j < M.dims[a]; ++j, ++col) {
      for (int r = 0; r < M.dims[b]; ++r) D.at(off_of(b) + r, col) = f.at(r, j);
      D.at(off_of(a) + j, col) = (D.at(off_of(a) + j, col) + M.p - 1) % M.p;
    }
  }
  Cokernel ck = cokernel(D);
  C.dim = ck.dim;
  C.Q = std::move(ck.Q);
  return C;
}

}  // namespace

VectColimit colimit(const VectModule& M) { return colimit_over(M, M.poset->full_set()); }

VectColimit colimit_over(const VectModule& M, const Bitset& S) {
  return colimit_impl(M, S, induced_hasse(*M.poset, S));
}

VectColimit colimit_over_all_relations(const VectModule& M, const Bitset& S) {
  std::vector<std::pair<int, int>> gens;
  for (std::size_t a = S.find_first(); a != npos; a = S.find_next(a))
    for (std::size_t b = S.find_first(); b != npos; b = S.find_next(b))
      if (a != b && M.poset->lt(static_cast<int>(a), static_cast<int>(b)))
        gens.emplace_back(static_cast<int>(a), static_cast<int>(b));
  std::sort(gens.begin(), gens.end());
  return colimit_impl(M, S, gens);
}

FFMatrix factor_cocone(const VectColimit& C, const std::vector<FFMatrix>& cocone, int vdim) {
  int total = 0;
  for (int d : C.block_dims) total += d;
  FFMatrix full(C.p, vdim, total);
  for (std::size_t i = 0; i < cocone.size(); ++i) {
    if (cocone[i].cols != C.block_dims[i] || cocone[i].rows != vdim)
      throw ShapeMismatch("cocone block shape mismatch");
    for (int r = 0; r < vdim; ++r)
      for (int c = 0; c < cocone[i].cols; ++c) full.at(r, C.offsets[i] + c) = cocone[i].at(r, c);
  }
  std::optional<FFMatrix> X = solve_left(C.Q, full);
  if (!X) throw Error("maps do not form a commuting cocone; no factoring through the colimit");
  return *X;  // vdim × C.dim, shaped correctly even for empty diagrams
}

int VectLimit::index_in(int poset_elem) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), poset_elem);
  if (it == elems.end() || *it != poset_elem) return -1;
  return static_cast<int>(it - elems.begin());
}

FFMatrix VectLimit::projection(int i) const {
  FFMatrix P(p, block_dims[i], dim);
  for (int r = 0; r < block_dims[i]; ++r)
    for (int c = 0; c < dim; ++c) P.at(r, c) = K.at(offsets[i] + r, c);
  return P;
}

FFMatrix VectLimit::projection_of(int poset_elem) const {
  int i = index_in(poset_elem);
  if (i < 0) throw Error("element not part of this limit");
  return projection(i);
}

VectLimit limit(const VectModule& M) { return limit_over(M, M.poset->full_set()); }

VectLimit limit_over(const VectModule& M, const Bitset& S) {
  VectLimit L;
  L.p = M.p;
  L.elems = bits_to_vec(S);
  int total = 0;
  for (int e : L.elems) {
    L.offsets.push_back(total);
    L.block_dims.push_back(M.dims[e]);
    total += M.dims[e];
  }
  auto off_of = [&](int e) { return L.offsets[L.index_in(e)]; };
  auto gens = induced_hasse(*M.poset, S);
  int eq_rows = 0;
  for (auto& g : gens) eq_rows += M.dims[g.second];
  FFMatrix A(M.p, eq_rows, total);
  int row = 0;
  for (auto& [a, b] : gens) {
    FFMatrix f = M.map_on(a, b);
    for (int r = 0; r < M.dims[b]; ++r, ++row) {
      for (int c = 0; c < M.dims[a]; ++c) A.at(row, off_of(a) + c) = f.at(r, c);
      A.at(row, off_of(b) + r) = (A.at(row, off_of(b) + r) + M.p - 1) % M.p;
    }
  }
  L.K = kernel_basis(A);
  L.dim = L.K.cols;
  return L;
}

FFMatrix factor_cone(const VectLimit& L, const std::vector<FFMatrix>& cone, int vdim) {
  int total = 0;
  for (int d : L.block_dims) total += d;
  FFMatrix full(L.p, total, vdim);
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (cone[i].rows != L.block_dims[i] || cone[i].cols != vdim)
      throw ShapeMismatch("cone block shape mismatch");
    for (int r = 0; r < cone[i].rows; ++r)
      for (int c = 0; c < vdim; ++c) full.at(L.offsets[i] + r, c) = cone[i].at(r, c);
  }
  std::optional<FFMatrix> X = solve_matrix(L.K, full);
  if (!X) throw Error("maps do not form a cone; no factoring through the limit");
  return *X;
}

// ---------------------------------------------------------------------------
// Set colimits / limits

int SetColimit::index_in(int poset_elem) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), poset_elem);
  if (it == elems.end() || *it != poset_elem) return -1;
  return static_cast<int>(it - elems.begin());
}

SetColimit set_colimit(const SetModule& M) { return set_colimit_over(M, M.poset->full_set()); }

SetColimit set_colimit_over(const SetModule& M, const Bitset& S) {
  SetColimit C;
  C.elems = bits_to_vec(S);
  std::vector<int> offsets;
  int total = 0;
  for (int e : C.elems) {
    offsets.push_back(total);
    total += M.sizes[e];
  }
  auto idx = [&](int e) {
    auto it = std::lower_bound(C.elems.begin(), C.elems.end(), e);
    return static_cast<int>(it - C.elems.begin());
  };
  UnionFind uf(total);
  for (auto& [a, b] : induced_hasse(*M.poset, S)) {
    std::vector<int> f = M.fn_on(a, b);
    for (int j = 0; j < M.sizes[a]; ++j) uf.unite(offsets[idx(a)] + j, offsets[idx(b)] + f[j]);
  }
  std::vector<int> class_of(total, -1);
  int next = 0;
  for (int t = 0; t < total; ++t) {
    int r = uf.find(t);
    if (class_of[r] < 0) class_of[r] = next++;
  }
  C.size = next;
  for (std::size_t i = 0; i < C.elems.size(); ++i) {
    std::vector<int> leg(M.sizes[C.elems[i]]);
    for (int j = 0; j < M.sizes[C.elems[i]]; ++j) leg[j] = class_of[uf.find(offsets[i] + j)];
    C.legs.push_back(std::move(leg));
  }
  return C;
}

std::vector<int> set_factor_cocone(const SetColimit& C, const std::vector<std::vector<int>>& cocone) {
  std::vector<int> X(C.size, -1);
  for (std::size_t i = 0; i < C.legs.size(); ++i) {
    for (std::size_t j = 0; j < C.legs[i].size(); ++j) {
      int cls = C.legs[i][j];
      int val = cocone[i][j];
      if (X[cls] < 0) {
        X[cls] = val;
      } else if (X[cls] != val) {
        throw Error("maps do not form a commuting cocone on set colimit classes");
      }
    }
  }
  return X;
}

SetLimit set_limit(const SetModule& M, const Bitset& S, std::size_t cap) {
  SetLimit L;
  L.elems = bits_to_vec(S);
  // Process in topological order so constraints only look backwards.
  std::vector<int> order;
  for (int x : M.poset->topo_order())
    if (S.test(x)) order.push_back(x);
  auto gens = induced_hasse(*M.poset, S);
  std::vector<std::vector<std::pair<int, std::vector<int>>>> in_edges(M.poset->size());
  for (auto& [a, b] : gens) in_edges[b].emplace_back(a, M.fn_on(a, b));

  std::vector<int> pos_of(M.poset->size(), -1);
  for (std::size_t i = 0; i < L.elems.size(); ++i) pos_of[L.elems[i]] = static_cast<int>(i);

  std::vector<int> tuple(L.elems.size(), -1);
  std::size_t visited = 0;
  // Iterative DFS over the order.
  struct Frame {
    int oi;       // index in `order`
    int next_val; // next candidate value to try
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    if (++visited > cap) throw SearchCapExceeded("set limit enumeration exceeded cap");
    Frame& fr = stack.back();
    if (fr.oi == static_cast<int>(order.size())) {
      L.tuples.push_back(tuple);
      stack.pop_back();
      continue;
    }
    int x = order[fr.oi];
    // Determine candidates: constrained by in-edges, else free.
    int forced = -2;  // -2 = unconstrained, -1 = contradiction
    for (auto& [a, f] : in_edges[x]) {
      int va = tuple[pos_of[a]];
      int want = f[va];
      if (forced == -2)
        forced = want;
      else if (forced != want)
        forced = -1;
    }
    bool advanced = false;
    if (forced == -2) {
      while (fr.next_val < M.sizes[x]) {
        tuple[pos_of[x]] = fr.next_val++;
        stack.push_back({fr.oi + 1, 0});
        advanced = true;
        break;
      }
    } else if (forced >= 0 && fr.next_val == 0) {
      fr.next_val = 1;  // only one candidate; try it once
      tuple[pos_of[x]] = forced;
      stack.push_back({fr.oi + 1, 0});
      advanced = true;
    }
    if (!advanced) {
      tuple[pos_of[x]] = -1;
      stack.pop_back();
    }
  }
  return L;
}

SetLimit set_limit(const SetModule& M, std::size_t cap) {
  return set_limit(M, M.poset->full_set(), cap);
}

// ---------------------------------------------------------------------------
// Natural transformation space

NatSpace nat_trans_space(VectModulePtr M, VectModulePtr N) {
  if (M->p != N->p) throw ModulusMismatch("nat_trans_space over different fields");
  if (!same_poset(M->poset, N->poset))
    throw PreconditionError("nat_trans_space requires modules over the same poset");
  const FinitePoset& P = *M->poset;
  int n = P.size();
  std::vector<int> uoff(n + 1, 0);
  for (int x = 0; x < n; ++x) uoff[x + 1] = uoff[x] + N->dims[x] * M->dims[x];
  int unknowns = uoff[n];
  int eq_rows = 0;
  for (auto& [a, b] : P.hasse()) eq_rows += N->dims[b] * M->dims[a];
  FFMatrix A(M->p, eq_rows, unknowns);
  int row = 0;
  for (auto& [a, b] : P.hasse()) {
    const FFMatrix& Me = M->edge(a, b);
    const FFMatrix& Ne = N->edge(a, b);
    for (int r = 0; r < N->dims[b]; ++r) {
      for (int c = 0; c < M->dims[a]; ++c, ++row) {
        // (N_e · φ_a)[r,c] − (φ_b · M_e)[r,c] = 0
        for (int k = 0; k < N->dims[a]; ++k) {
          int u = uoff[a] + k * M->dims[a] + c;  // φ_a[k,c]
          A.at(row, u) = (A.at(row, u) + Ne.at(r, k)) % M->p;
        }
        for (int k = 0; k < M->dims[b]; ++k) {
          int u = uoff[b] + r * M->dims[b] + k;  // φ_b[r,k]
          A.at(row, u) = (A.at(row, u) + (M->p - Me.at(k, c)) % M->p) % M->p;
        }
      }
    }
  }
  FFMatrix K = kernel_basis(A);
  NatSpace S;
  S.dim = K.cols;
  for (int b = 0; b < K.cols; ++b) {
    ModuleMap f;
    f.source = M;
    f.target = N;
    for (int x = 0; x < n; ++x) {
      FFMatrix comp(M->p, N->dims[x], M->dims[x]);
      for (int r = 0; r < N->dims[x]; ++r)
        for (int c = 0; c < M->dims[x]; ++c) comp.at(r, c) = K.at(uoff[x] + r * M->dims[x] + c, b);
      f.comps.push_back(std::move(comp));
    }
    S.basis.push_back(std::move(f));
  }
  return S;
}

ModuleMap nat_combination(const NatSpace& S, VectModulePtr M, VectModulePtr N,
                          const std::vector<std::uint32_t>& coeffs) {
  ModuleMap f = zero_map(M, N);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    f = add(f, scale(S.basis[i], coeffs[i]));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Isomorphism search

std::optional<ModuleMap> find_isomorphism(VectModulePtr M, VectModulePtr N, std::uint64_t cap) {
  if (M->p != N->p) throw ModulusMismatch("isomorphism over different fields");
  if (!same_poset(M->poset, N->poset))
    throw PreconditionError("isomorphism requires modules over the same poset");
  if (M->dims != N->dims) return std::nullopt;  // certified no
  NatSpace S = nat_trans_space(M, N);
  int k = S.dim;
  // count = p^k, saturating
  std::uint64_t count = 1;
  bool overflow = false;
  for (int i = 0; i < k; ++i) {
    if (count > cap / M->p + 1) {
      overflow = true;
      break;
    }
    count *= M->p;
  }
  std::vector<std::uint32_t> coeffs(k, 0);
  if (!overflow && count <= cap) {
    for (std::uint64_t c = 0;; ++c) {
      std::uint64_t t = c;
      for (int i = 0; i < k; ++i) {
        coeffs[i] = static_cast<std::uint32_t>(t % M->p);
        t /= M->p;
      }
      ModuleMap f = nat_combination(S, M, N, coeffs);
      if (f.is_pointwise_invertible()) return f;
      if (c + 1 == count) break;
    }
    return std::nullopt;
  }
  // Above the cap: deterministic sampling can still certify "yes".
  std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
  for (int trial = 0; trial < 4096; ++trial) {
    for (int i = 0; i < k; ++i) coeffs[i] = static_cast<std::uint32_t>(rng() % M->p);
    ModuleMap f = nat_combination(S, M, N, coeffs);
    if (f.is_pointwise_invertible()) return f;
  }
  throw SearchCapExceeded("isomorphism search space exceeds cap and sampling found no witness");
}

bool are_isomorphic(const VectModule& M, const VectModule& N, std::uint64_t cap) {
  auto Mp = std::make_shared<const VectModule>(M);
  auto Np = std::make_shared<const VectModule>(N);
  return find_isomorphism(Mp, Np, cap).has_value();
}

bool set_isomorphic(const SetModule& M, const SetModule& N, std::size_t cap) {
  if (!same_poset(M.poset, N.poset))
    throw PreconditionError("isomorphism requires modules over the same poset");
  if (M.sizes != N.sizes) return false;
  const FinitePoset& P = *M.poset;
  const std::vector<int>& order = P.topo_order();
  int n = P.size();
  // comps[x] is a bijection [sizes[x]] → [sizes[x]] built in topo order;
  // naturality against in-edges prunes.
  std::vector<std::vector<int>> comps(n);
  std::size_t visited = 0;

  // Candidate bijections at x enumerated lexicographically via std::next_permutation.
  std::function<bool(int)> rec = [&](int oi) -> bool {
    if (oi == n) return true;
    int x = order[oi];
    int s = M.sizes[x];
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (++visited > cap) throw SearchCapExceeded("set isomorphism search exceeded cap");
      bool ok = true;
      for (int z : P.hasse_below(x)) {
        const std::vector<int>& fM = M.edge(z, x);
        const std::vector<int>& fN = N.edge(z, x);
        for (int j = 0; j < M.sizes[z] && ok; ++j)
          if (perm[fM[j]] != fN[comps[z][j]]) ok = false;
        if (!ok) break;
      }
      if (!ok) continue;
      comps[x] = perm;
      if (rec(oi + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return rec(0);
}

}  // namespace pil
