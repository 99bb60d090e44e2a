#pragma once

// Shared random-instance generators for the unit and acceptance suites.
// Every draw funnels through one engine so a fixed seed reproduces a run.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pil/ffmatrix.hpp"
#include "pil/interleave.hpp"

namespace pil::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& g, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline int pick_bit(Rng& g, const Bitset& s) {
  int target = pick(g, 0, static_cast<int>(s.count()) - 1);
  for (auto q = s.find_first(); q != Bitset::npos; q = s.find_next(q))
    if (target-- == 0) return static_cast<int>(q);
  return -1;  // unreachable for nonempty s
}

inline PosetPtr random_poset(Rng& g, int n, int percent = 35) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick(g, 0, 99) < percent) rel.push_back({i, j});
  return FinitePoset::from_index_pairs(std::move(labels), rel);
}

// Uniform sample from the solution space of C·x = 0 (C may have zero rows).
inline std::vector<std::uint32_t> sample_kernel(Rng& g, const FFMatrix& C, std::uint32_t p,
                                                int unknowns) {
  FFMatrix K = C.rows == 0 ? FFMatrix::identity(p, unknowns) : kernel_basis(C);
  std::vector<std::uint32_t> x(unknowns, 0);
  for (int c = 0; c < K.cols; ++c) {
    auto coef = static_cast<std::uint32_t>(pick(g, 0, static_cast<int>(p) - 1));
    if (coef == 0) continue;
    for (int r = 0; r < unknowns; ++r) x[r] = (x[r] + coef * K.at(r, c)) % p;
  }
  return x;
}

// Random functor: dims are drawn independently; the matrices entering each
// element are drawn uniformly from the space of choices under which every
// composite from strictly below is path-independent (so the result is always
// a valid module, not a rejection-sampled one).
inline VectModule random_module(Rng& g, PosetPtr P, int maxdim, std::uint32_t p) {
  const int n = P->size();
  VectModule M;
  M.poset = P;
  M.p = p;
  M.dims.resize(n);
  for (int i = 0; i < n; ++i) M.dims[i] = pick(g, 0, maxdim);

  std::vector<std::vector<FFMatrix>> comp(n, std::vector<FFMatrix>(n));  // a < x composites
  for (int x : P->topo_order()) {
    const auto& covers = P->hasse_below(x);
    const int k = static_cast<int>(covers.size());
    if (k == 0) continue;
    std::vector<int> off(k + 1, 0);
    for (int i = 0; i < k; ++i) off[i + 1] = off[i] + M.dims[x] * M.dims[covers[i]];
    const int U = off[k];

    std::vector<std::vector<std::uint32_t>> eqs;
    for (int a = 0; a < n; ++a) {
      if (a == x || !P->leq(a, x)) continue;
      std::vector<int> through;
      for (int i = 0; i < k; ++i)
        if (a != covers[i] && P->leq(a, covers[i])) through.push_back(i);
      for (std::size_t s = 1; s < through.size(); ++s) {
        const int i = through[0], j = through[s];
        const FFMatrix& Ri = comp[a][covers[i]];
        const FFMatrix& Rj = comp[a][covers[j]];
        for (int r = 0; r < M.dims[x]; ++r)
          for (int c = 0; c < M.dims[a]; ++c) {
            std::vector<std::uint32_t> row(U, 0);
            for (int t = 0; t < M.dims[covers[i]]; ++t)
              row[off[i] + r * M.dims[covers[i]] + t] = Ri.at(t, c);
            for (int t = 0; t < M.dims[covers[j]]; ++t) {
              auto& cell = row[off[j] + r * M.dims[covers[j]] + t];
              cell = (cell + p - Rj.at(t, c)) % p;
            }
            eqs.push_back(std::move(row));
          }
      }
    }
    FFMatrix C(p, static_cast<int>(eqs.size()), U);
    for (int r = 0; r < C.rows; ++r)
      for (int c = 0; c < U; ++c) C.at(r, c) = eqs[r][c];
    std::vector<std::uint32_t> sol = sample_kernel(g, C, p, U);

    for (int i = 0; i < k; ++i) {
      FFMatrix B(p, M.dims[x], M.dims[covers[i]]);
      for (int r = 0; r < B.rows; ++r)
        for (int c = 0; c < B.cols; ++c) B.at(r, c) = sol[off[i] + r * B.cols + c];
      M.edge_maps[{covers[i], x}] = std::move(B);
    }
    for (int a = 0; a < n; ++a) {
      if (a == x || !P->leq(a, x)) continue;
      for (int i = 0; i < k; ++i) {
        if (a == covers[i]) {
          comp[a][x] = M.edge_maps.at({a, x});
          break;
        }
        if (P->leq(a, covers[i])) {
          comp[a][x] = matmul(M.edge_maps.at({covers[i], x}), comp[a][covers[i]]);
          break;
        }
      }
    }
  }
  require_valid(M);
  return M;
}

// Rows of the naturality system for maps src → dst: unknowns are the entries
// of all components, one block of equations per Hasse edge.
inline FFMatrix naturality_system(const VectModule& src, const VectModule& dst,
                                  std::vector<int>& offsets) {
  const FinitePoset& P = *src.poset;
  const int n = P.size();
  const std::uint32_t p = src.p;
  offsets.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) offsets[x + 1] = offsets[x] + dst.dims[x] * src.dims[x];
  const int U = offsets[n];
  std::vector<std::vector<std::uint32_t>> eqs;
  for (const auto& [a, b] : P.hasse()) {
    const FFMatrix S = src.edge(a, b);
    const FFMatrix D = dst.edge(a, b);
    for (int r = 0; r < dst.dims[b]; ++r)
      for (int c = 0; c < src.dims[a]; ++c) {
        std::vector<std::uint32_t> row(U, 0);
        for (int t = 0; t < src.dims[b]; ++t)
          row[offsets[b] + r * src.dims[b] + t] = S.at(t, c);
        for (int t = 0; t < dst.dims[a]; ++t) {
          auto& cell = row[offsets[a] + t * src.dims[a] + c];
          cell = (cell + p - D.at(r, t)) % p;
        }
        eqs.push_back(std::move(row));
      }
  }
  FFMatrix C(p, static_cast<int>(eqs.size()), U);
  for (int r = 0; r < C.rows; ++r)
    for (int c = 0; c < U; ++c) C.at(r, c) = eqs[r][c];
  return C;
}

inline ModuleMap unpack_map(VectModulePtr src, VectModulePtr dst, const std::vector<int>& offsets,
                            const std::vector<std::uint32_t>& sol) {
  ModuleMap f;
  f.source = src;
  f.target = dst;
  const int n = src->poset->size();
  f.comps.resize(n);
  for (int x = 0; x < n; ++x) {
    FFMatrix A(src->p, dst->dims[x], src->dims[x]);
    for (int r = 0; r < A.rows; ++r)
      for (int c = 0; c < A.cols; ++c) A.at(r, c) = sol[offsets[x] + r * A.cols + c];
    f.comps[x] = std::move(A);
  }
  return f;
}

inline ModuleMap random_map(Rng& g, VectModulePtr src, VectModulePtr dst) {
  std::vector<int> offsets;
  FFMatrix C = naturality_system(*src, *dst, offsets);
  return unpack_map(src, dst, offsets, sample_kernel(g, C, src->p, offsets.back()));
}

inline MonotoneMap random_monotone(Rng& g, PosetPtr P, PosetPtr Q) {
  MonotoneMap f;
  f.source = P;
  f.target = Q;
  f.image.assign(P->size(), 0);
  for (int x : P->topo_order()) {
    Bitset cand(Q->size());
    cand.set();
    for (int y : P->hasse_below(x)) cand &= Q->up_set(f.image[y]);
    if (cand.none()) return MonotoneMap::constant(P, Q, pick(g, 0, Q->size() - 1));
    f.image[x] = pick_bit(g, cand);
  }
  return f;
}

// Inclusion of the induced subposet on k random elements: full and faithful
// by construction.
struct Inclusion {
  PosetPtr sub;
  MonotoneMap map;
};
inline Inclusion random_inclusion(Rng& g, PosetPtr Q, int k) {
  std::vector<int> all(Q->size());
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), g);
  Bitset S(Q->size());
  for (int i = 0; i < k; ++i) S.set(all[i]);
  SubPoset sub = induced_subposet(Q, S);
  return Inclusion{sub.poset, sub.incl};
}

// Iterates a random monotone inflationary endomap to its fixpoint; the rungs
// are 0, step, 2·step, …, so snapped sums always land on W^{i+j} (saturated
// at the fixpoint), making the family exactly superlinear.
inline TranslationFamily random_translation(Rng& g, PosetPtr P, const Rat& step = Rat(1)) {
  const int n = P->size();
  std::vector<std::vector<int>> above(n);
  for (const auto& [a, b] : P->hasse()) above[a].push_back(b);
  std::vector<int> W(n);
  const auto& topo = P->topo_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int x = *it;
    Bitset cand = P->up_set(x);
    for (int y : above[x]) cand &= P->down_set(W[y]);
    W[x] = pick_bit(g, cand);  // x itself is always a candidate
  }
  TranslationFamily T;
  T.poset = P;
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  T.ladder.push_back(Rat(0));
  T.maps.push_back(cur);
  for (int k = 1; k <= n + 1; ++k) {
    std::vector<int> nxt(n);
    for (int i = 0; i < n; ++i) nxt[i] = W[cur[i]];
    if (nxt == cur) break;
    T.ladder.push_back(Rat(k) * step);
    T.maps.push_back(nxt);
    cur = std::move(nxt);
  }
  require_valid_translation(T, true);
  return T;
}

// Shortest-path closure of random positive costs on upward Hasse steps, with
// the whole down relation free: w(p,q) = 0 exactly when q ≤ p and the
// triangle inequality is inherited from path minimality.
inline WeightedPoset random_weighted(Rng& g, PosetPtr P, int maxw = 4) {
  const int n = P->size();
  std::vector<std::vector<ExtRat>> d(n, std::vector<ExtRat>(n, ExtRat::inf()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P->leq(j, i)) d[i][j] = ExtRat(Rat(0));
  for (const auto& [a, b] : P->hasse()) {
    ExtRat c{Rat(pick(g, 1, maxw))};
    if (c < d[a][b]) d[a][b] = c;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (d[i][k].infinite) continue;
      for (int j = 0; j < n; ++j) {
        if (d[k][j].infinite) continue;
        ExtRat via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  WeightedPoset w{P, std::move(d)};
  require_valid_weighted(w);
  return w;
}

// --- fixed fixtures ---------------------------------------------------------

inline PosetPtr zigzag3() {  // b ≤ a, b ≤ c
  return FinitePoset::from_relations({"a", "b", "c"}, {{"b", "a"}, {"b", "c"}});
}

inline VectModule make_module(
    PosetPtr P, std::uint32_t p, std::vector<int> dims,
    const std::vector<std::tuple<int, int, std::vector<std::uint32_t>>>& edges) {
  VectModule M;
  M.poset = P;
  M.p = p;
  M.dims = std::move(dims);
  for (const auto& [a, b, entries] : edges) {
    FFMatrix A(p, M.dims[b], M.dims[a]);
    for (int r = 0; r < A.rows; ++r)
      for (int c = 0; c < A.cols; ++c) A.at(r, c) = entries[r * A.cols + c] % p;
    M.edge_maps[{a, b}] = std::move(A);
  }
  require_valid(M);
  return M;
}

// k ←1 k →1 k
inline VectModule example_A(PosetPtr Z) {
  return make_module(Z, 2, {1, 1, 1}, {{1, 0, {1}}, {1, 2, {1}}});
}
// 0 ←0 k →1 k
inline VectModule example_B(PosetPtr Z) {
  return make_module(Z, 2, {0, 1, 1}, {{1, 0, {}}, {1, 2, {1}}});
}
// k ←0 k →0 k
inline VectModule example_C(PosetPtr Z) {
  return make_module(Z, 2, {1, 1, 1}, {{1, 0, {0}}, {1, 2, {0}}});
}

// a ←1 b →1 c with the down relation free: realized travel times.
inline WeightedPoset weighted_zigzag3(PosetPtr Z) {
  auto E0 = ExtRat(Rat(0));
  auto E1 = ExtRat(Rat(1));
  // order of labels: a, b, c → indices 0, 1, 2; b ≤ a and b ≤ c
  std::vector<std::vector<ExtRat>> w = {
      {E0, E0, E1},  // from a: a free, b below a, c via b at cost 1
      {E1, E0, E1},  // from b: up to a or c costs 1
      {E1, E0, E0},  // from c
  };
  return WeightedPoset{Z, std::move(w)};
}

// Staircase of light-cone type: rows 0..rows−1; even rows carry columns
// 2,4,…,12, odd rows 1,3,…,13; (c,r) is covered by (c±1, r+1).
inline std::string stair_label(int c, int r) {
  return "w" + std::to_string(c) + "_" + std::to_string(r);
}
inline PosetPtr staircase(int rows) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> rel;
  auto col_lo = [](int r) { return r % 2 ? 1 : 2; };
  auto col_hi = [](int r) { return r % 2 ? 13 : 12; };
  for (int r = 0; r < rows; ++r)
    for (int c = col_lo(r); c <= col_hi(r); c += 2) labels.push_back(stair_label(c, r));
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = col_lo(r); c <= col_hi(r); c += 2)
      for (int dc : {-1, +1}) {
        const int c2 = c + dc;
        if (c2 >= col_lo(r + 1) && c2 <= col_hi(r + 1))
          rel.push_back({stair_label(c, r), stair_label(c2, r + 1)});
      }
  return FinitePoset::from_relations(std::move(labels), rel);
}

}  // namespace pil::testing
