// End-to-end checks of the library's headline guarantees: frozen worked
// examples plus randomized property suites. Prints one PASS/FAIL line per
// criterion; the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pil/grid.hpp"
#include "pil/kan.hpp"
#include "pil/reeb.hpp"

using namespace pil;
using namespace pil::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

VectModulePtr share(VectModule M) { return std::make_shared<VectModule>(std::move(M)); }

FFMatrix unit_matrix(std::uint32_t p) {
  FFMatrix A(p, 1, 1);
  A.at(0, 0) = 1;
  return A;
}

// --- 1: colimits of the three zig-zag examples -------------------------------

Outcome pushout_trio() {
  PosetPtr Z = zigzag3();
  Outcome o;
  o.ok = colimit(example_A(Z)).dim == 1 && colimit(example_B(Z)).dim == 0 &&
         colimit(example_C(Z)).dim == 2;
  if (!o.ok)
    o.note = "colimit dims: A=" + std::to_string(colimit(example_A(Z)).dim) +
             " B=" + std::to_string(colimit(example_B(Z)).dim) +
             " C=" + std::to_string(colimit(example_C(Z)).dim) + ", wanted 1/0/2";
  return o;
}

// --- 2: the staircase extension and its light-cone shifts ---------------------

int stair_col_lo(int r) { return r % 2 ? 1 : 2; }
int stair_col_hi(int r) { return r % 2 ? 13 : 12; }

int stair_idx(int c, int r) {
  int cum = 0;
  for (int s = 0; s < r; ++s) cum += s % 2 ? 7 : 6;
  return cum + (c - stair_col_lo(r)) / 2;
}

// Extension pattern by row: columns carrying a one-dimensional space.
const std::vector<std::vector<int>> kStairRows = {{6, 8}, {5, 7}, {4, 6}, {3, 5}, {2, 4},
                                                  {1, 3}, {2},    {1},    {},     {}};

int stair_expected(int c, int r) {
  if (r < 0 || r >= static_cast<int>(kStairRows.size())) return 0;
  const auto& row = kStairRows[r];
  return std::find(row.begin(), row.end(), c) != row.end() ? 1 : 0;
}

Outcome staircase_extension() {
  const int rows = 10;
  PosetPtr S = staircase(rows);
  const int n = S->size();

  // coordinates per cell, inverse to stair_idx
  std::vector<int> col(n), row(n);
  for (int r = 0; r < rows; ++r)
    for (int c = stair_col_lo(r); c <= stair_col_hi(r); c += 2) {
      col[stair_idx(c, r)] = c;
      row[stair_idx(c, r)] = r;
    }

  // the zig-zag seed: k ← k → k ← k → 0 across rows 0 and 1
  Bitset bits(n);
  const int a5 = stair_idx(5, 1), b6 = stair_idx(6, 0), a7 = stair_idx(7, 1),
            b8 = stair_idx(8, 0), a9 = stair_idx(9, 1);
  for (int x : {a5, b6, a7, b8, a9}) bits.set(x);
  SubPoset sub = induced_subposet(S, bits);
  auto local = [&](int global) {
    for (int i = 0; i < sub.poset->size(); ++i)
      if (sub.incl(i) == global) return i;
    return -1;
  };
  VectModule M;
  M.poset = sub.poset;
  M.p = 2;
  M.dims.assign(5, 1);
  M.dims[local(a9)] = 0;
  M.edge_maps[{local(b6), local(a5)}] = unit_matrix(2);
  M.edge_maps[{local(b6), local(a7)}] = unit_matrix(2);
  M.edge_maps[{local(b8), local(a7)}] = unit_matrix(2);
  require_valid(M);

  VectModule E = pushforward(sub.incl, M).module;

  Outcome o;
  for (int x = 0; x < n && o.ok; ++x)
    if (E.dims[x] != stair_expected(col[x], row[x])) {
      o.ok = false;
      o.note = "extension dim mismatch at column " + std::to_string(col[x]) + ", row " +
               std::to_string(row[x]);
    }
  for (const auto& [u, v] : S->hasse())
    if (o.ok && E.dims[u] == 1 && E.dims[v] == 1 && !is_invertible(E.edge(u, v))) {
      o.ok = false;
      o.note = "edge between nonzero entries is not invertible";
    }
  if (!o.ok) return o;

  // light-cone weighting: climbing two rows costs one time unit
  WeightedPoset wS;
  wS.poset = S;
  wS.w.assign(n, std::vector<ExtRat>(n, ExtRat(Rat(0))));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int num = std::abs(col[q] - col[p]) + (row[q] - row[p]);
      wS.w[p][q] = ExtRat(Rat(std::max(0, num / 2)));
    }
  require_valid_weighted(wS);

  for (int k = 1; k <= 2 && o.ok; ++k) {
    VectModule Ek = shift_weighted(wS, E, Rat(k));
    for (int x = 0; x < n && o.ok; ++x)
      if (Ek.dims[x] != stair_expected(col[x], row[x] + 2 * k)) {
        o.ok = false;
        o.note = std::to_string(k) + "-shift dim mismatch at column " + std::to_string(col[x]) +
                 ", row " + std::to_string(row[x]);
      }
  }
  if (!o.ok) return o;

  VectModule E3 = shift_weighted(wS, E, Rat(3));
  int nonzero = 0;
  for (int x = 0; x < n; ++x) nonzero += E3.dims[x] > 0 ? 1 : 0;
  if (nonzero != 2 || E3.dims[stair_idx(2, 0)] != 1 || E3.dims[stair_idx(1, 1)] != 1) {
    o.ok = false;
    o.note = "3-shift should have exactly the two entries at columns 2 and 1";
    return o;
  }
  if (!shift_weighted(wS, E, Rat(4)).is_zero()) {
    o.ok = false;
    o.note = "4-shift should vanish";
  }
  return o;
}

// --- 3: floor/ceiling extensions along integers inside a rational chain ------

Outcome floor_ceiling_chain() {
  std::vector<Rat> vals;
  for (int k = 0; k <= 6; ++k) vals.push_back(Rat(k));
  for (int num : {1, 3, 5, 7, 9, 11}) vals.push_back(Rat(num, 2));
  for (int num : {1, 2, 7}) vals.push_back(Rat(num, 3));
  for (int num : {9, 17, 19, 23}) vals.push_back(Rat(num, 4));
  std::sort(vals.begin(), vals.end());

  const int chain = static_cast<int>(vals.size());
  std::vector<std::string> labels(chain);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < chain; ++i) {
    labels[i] = "r" + std::to_string(i);
    if (i + 1 < chain) rel.push_back({i, i + 1});
  }
  PosetPtr R = FinitePoset::from_index_pairs(std::move(labels), rel);

  std::vector<std::string> zl(7);
  std::vector<std::pair<int, int>> zr;
  for (int i = 0; i < 7; ++i) {
    zl[i] = "z" + std::to_string(i);
    if (i + 1 < 7) zr.push_back({i, i + 1});
  }
  PosetPtr Z = FinitePoset::from_index_pairs(std::move(zl), zr);

  MonotoneMap j;
  j.source = Z;
  j.target = R;
  j.image.resize(7);
  for (int k = 0; k <= 6; ++k)
    j.image[k] = static_cast<int>(std::find(vals.begin(), vals.end(), Rat(k)) - vals.begin());
  if (!j.is_monotone_valid()) return {false, "chain embedding is not monotone"};

  Rng g(40301);
  Outcome o;
  for (int trial = 0; trial < 10 && o.ok; ++trial) {
    VectModule M = random_module(g, Z, 3, trial % 2 ? 3u : 2u);
    VectPushforward down = pushforward(j, M);
    VectOpenPushforward up = pushforward_open(j, M);
    for (int r = 0; r < chain && o.ok; ++r) {
      int zf = 0, zc = 6;
      for (int k = 0; k <= 6; ++k) {
        if (Rat(k) <= vals[r]) zf = k;
        if (Rat(6 - k) >= vals[r]) zc = 6 - k;
      }
      if (down.module.dims[r] != M.dims[zf] || !is_invertible(down.colims[r].leg_of(zf))) {
        o.ok = false;
        o.note = "floor value mismatch at chain position " + std::to_string(r);
      }
      if (o.ok && (up.module.dims[r] != M.dims[zc] || !is_invertible(up.lims[r].projection_of(zc)))) {
        o.ok = false;
        o.note = "ceiling value mismatch at chain position " + std::to_string(r);
      }
    }
  }
  return o;
}

// --- 4: adjunction triangle identities and the full-and-faithful unit --------

Outcome adjunction_suite() {
  Rng g(40401);
  Outcome o;
  for (int trial = 0; trial < 200 && o.ok; ++trial) {
    const std::uint32_t p = trial % 2 ? 3u : 2u;
    PosetPtr P = random_poset(g, pick(g, 1, 5));
    PosetPtr Q = random_poset(g, pick(g, 1, 5));
    MonotoneMap f = random_monotone(g, P, Q);
    VectModulePtr M = share(random_module(g, P, 2, p));
    VectModulePtr N = share(random_module(g, Q, 2, p));

    VectPushforward pushM = pushforward(f, *M);
    VectModulePtr fM = share(pushM.module);
    ModuleMap eta = unit(f, M);
    ModuleMap pushEta = pushforward_map(f, eta, pushM, pushforward(f, *eta.target));
    ModuleMap tri1 = compose(counit(f, fM), pushEta);
    if (!(tri1 == identity_map(fM))) {
      o.ok = false;
      o.note = "pushforward triangle identity failed on trial " + std::to_string(trial);
      break;
    }

    VectModulePtr fN = share(pullback(f, *N));
    ModuleMap etaN = unit(f, fN);
    ModuleMap epsN = counit(f, N);
    ModuleMap pulledEps;
    pulledEps.source = etaN.target;
    pulledEps.target = fN;
    pulledEps.comps.resize(P->size());
    for (int x = 0; x < P->size(); ++x) pulledEps.comps[x] = epsN.comps[f(x)];
    ModuleMap tri2 = compose(pulledEps, etaN);
    if (!(tri2 == identity_map(fN))) {
      o.ok = false;
      o.note = "pullback triangle identity failed on trial " + std::to_string(trial);
    }
  }
  for (int trial = 0; trial < 100 && o.ok; ++trial) {
    PosetPtr Q = random_poset(g, pick(g, 1, 6));
    Inclusion inc = random_inclusion(g, Q, pick(g, 1, Q->size()));
    VectModulePtr M = share(random_module(g, inc.sub, 2, trial % 2 ? 3u : 2u));
    if (!unit(inc.map, M).is_pointwise_invertible()) {
      o.ok = false;
      o.note = "unit is not invertible along a full inclusion, trial " + std::to_string(trial);
    }
  }
  return o;
}

// --- 5: weighted shifts against the lattice three-step factorization ---------

Outcome weighted_shifts() {
  PosetPtr Z = zigzag3();
  WeightedPoset wZ = weighted_zigzag3(Z);
  Outcome o;
  VectModule A1 = shift_weighted(wZ, example_A(Z), Rat(1));
  if (!find_isomorphism(share(std::move(A1)), share(example_A(Z)))) {
    return {false, "1-shift of the glued zig-zag is not isomorphic to itself"};
  }
  if (!shift_weighted(wZ, example_B(Z), Rat(1)).is_zero()) {
    return {false, "1-shift of the half-supported zig-zag should vanish"};
  }
  Rng g(40501);
  const std::vector<Rat> eps = {Rat(0), Rat(1), Rat(2), Rat(1, 2), Rat(3, 2)};
  for (int trial = 0; trial < 100; ++trial) {
    PosetPtr P = random_poset(g, pick(g, 1, 4));
    WeightedPoset w = random_weighted(g, P, 2);
    VectModule M = random_module(g, P, 2, 2);
    const Rat& e = eps[pick(g, 0, static_cast<int>(eps.size()) - 1)];
    if (!are_isomorphic(shift_weighted(w, M, e), shift_three_step(w, M, e))) {
      return {false, "direct and three-step shifts disagree on trial " + std::to_string(trial)};
    }
  }
  return o;
}

// --- 6 and 7: isometry onto the image, and the weak/standard sandwich --------

std::pair<Outcome, Outcome> isometry_and_sandwich() {
  Rng g(40601);
  Outcome iso, sand;
  int exact = 0, indet = 0, sandwiched = 0, skipped = 0;
  const std::uint64_t cap = 1u << 18;
  for (int trial = 0; trial < 100; ++trial) {
    PosetPtr P = random_poset(g, pick(g, 1, 4));
    PosetPtr Q = random_poset(g, pick(g, 1, 6));
    MonotoneMap f = random_monotone(g, P, Q);
    TranslationFamily T = random_translation(g, Q);
    VectModulePtr M = share(random_module(g, P, 2, 2));
    VectModulePtr N = share(random_module(g, P, 2, 2));

    ShiftTheory rel = ShiftTheory::relative(f, T, 2);
    DistanceResult d1 = interleaving_distance(rel, M, N, false, cap, 2);

    VectModulePtr fM = share(pushforward(f, *M).module);
    VectModulePtr fN = share(pushforward(f, *N).module);
    ShiftTheory intr = ShiftTheory::intrinsic(T);
    DistanceResult d2 = interleaving_distance(intr, fM, fN, false, cap, 2);

    using K = DistanceResult::Kind;
    bool match = d1.kind == d2.kind && (d1.kind != K::Finite || d1.value == d2.value);
    if (!match && iso.ok) {
      iso.ok = false;
      iso.note = "relative and pushforward distances disagree on trial " + std::to_string(trial);
    }
    (d1.kind == K::Indeterminate ? indet : exact) += 1;

    DistanceResult ds = interleaving_distance(intr, fM, fN, true, cap, 2);
    if (d2.kind == K::Indeterminate || ds.kind == K::Indeterminate) {
      ++skipped;
      continue;
    }
    ++sandwiched;
    bool lower = ds.kind == K::Finite ? (d2.kind == K::Finite && d2.value <= ds.value)
                                      : true;  // weak below standard
    if (d2.kind == K::Infinite && ds.kind == K::Finite) lower = false;
    bool upper = d2.kind == K::Finite ? (ds.kind == K::Finite && ds.value <= Rat(2) * d2.value)
                                      : true;  // standard at most doubled weak
    if (sand.ok && !(lower && upper)) {
      sand.ok = false;
      sand.note = "sandwich violated on trial " + std::to_string(trial);
    }
  }
  std::ostringstream in;
  in << exact << " exact, " << indet << " matching-indeterminate";
  if (iso.ok) iso.note = in.str();
  std::ostringstream sn;
  sn << sandwiched << " compared, " << skipped << " indeterminate-skipped";
  if (sand.ok) sand.note = sn.str();
  if (sandwiched == 0) {
    sand.ok = false;
    sand.note = "every instance was indeterminate; nothing compared";
  }
  return {iso, sand};
}

// --- 8: interleaving over a point detects colimit dimension ------------------

Outcome point_interleaving() {
  PosetPtr pt = FinitePoset::from_relations({"pt"}, {});
  TranslationFamily T = TranslationFamily::identity(pt);
  Rng g(40801);
  for (int trial = 0; trial < 100; ++trial) {
    PosetPtr P = random_poset(g, pick(g, 1, 4));
    MonotoneMap f = MonotoneMap::constant(P, pt, 0);
    VectModulePtr M = share(random_module(g, P, 1, 2));
    VectModulePtr N = share(random_module(g, P, 1, 2));
    ShiftTheory S = ShiftTheory::relative(f, T);
    bool has = weak_exists(S, M, N, Rat(0)).has_value();
    bool same = colimit(*M).dim == colimit(*N).dim;
    if (has != same) {
      return {false, "certificate existence disagrees with colimit dims on trial " +
                         std::to_string(trial)};
    }
  }
  return {};
}

// --- 9: the pixelization-defect bound on distance distortion -----------------

Outcome distortion_bound() {
  Rng g(40901);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    PosetPtr P = random_poset(g, pick(g, 1, 3));
    PosetPtr Q = random_poset(g, pick(g, 1, 4));
    MonotoneMap f = random_monotone(g, P, Q);
    TranslationFamily T = random_translation(g, Q);
    VectModulePtr M = share(random_module(g, Q, 2, 2));
    VectModulePtr N = share(random_module(g, Q, 2, 2));
    DistortionReport r = distortion_report(f, T, M, N);
    if (r.bound_checked) {
      ++checked;
      if (!r.bound_ok)
        return {false, "distortion bound violated on trial " + std::to_string(trial)};
    }
  }
  Outcome o;
  o.note = std::to_string(checked) + "/50 evaluable";
  if (checked == 0) o = {false, "no instance was evaluable"};
  return o;
}

// --- 10: grid witnesses sandwich rectilinear opens within one delta ----------

Outcome grid_witness() {
  GridComplex G = build_grid(2, Rat(1), {{0, 8}, {0, 8}});
  Rng g(41001);
  auto coord = [&](int lo_q, int hi_q) {  // quarters
    return std::pair<Rat, Rat>{Rat(lo_q, 4), Rat(hi_q, 4)};
  };
  for (int trial = 0; trial < 50; ++trial) {
    RectOpen V;
    V.n = 2;
    const int boxes = pick(g, 1, 3);
    for (int b = 0; b < boxes; ++b) {
      Box box;
      for (int axis = 0; axis < 2; ++axis) {
        int lo = pick(g, 4, 10);
        int hi = std::min(lo + pick(g, 1, 6), 12);
        if (hi <= lo) hi = lo + 1;
        box.sides.push_back(coord(lo, hi));
      }
      V.boxes.push_back(std::move(box));
    }
    GridOpen U = delta_approx_witness(G, V);
    RectOpen R = realize(G, U);
    if (!rect_contains(R, V))
      return {false, "witness does not cover the input on trial " + std::to_string(trial)};
    if (!rect_contains(metric_thicken(V, G.delta), R))
      return {false, "witness escapes the delta thickening on trial " + std::to_string(trial)};
  }
  return {};
}

// --- 11: lower pixelization of a sampled cosheaf stays within delta ----------

ReebGraph random_reeb(Rng& g) {
  std::vector<int> heights = {0, 1, 2, 3, 4};
  std::shuffle(heights.begin(), heights.end(), g);
  const int nv = pick(g, 2, 4);
  ReebGraph R;
  for (int i = 0; i < nv; ++i) {
    R.ids.push_back("v" + std::to_string(i));
    R.values.push_back(Rat(heights[i]));
  }
  const int ne = pick(g, 1, 5);
  for (int e = 0; e < ne; ++e) {
    int i = pick(g, 0, nv - 1);
    int j = pick(g, 0, nv - 1);
    if (i == j) j = (i + 1) % nv;
    if (R.values[i] > R.values[j]) std::swap(i, j);
    R.edges.push_back({i, j});
  }
  require_valid_reeb(R);
  return R;
}

Outcome pixelization_bound() {
  Rng g(41101);
  for (int trial = 0; trial < 20; ++trial) {
    ReebGraph R = random_reeb(g);
    ReebPixelization pix = pixelize_reeb(R, Rat(1), 2);
    TranslationFamily T = interval_translation(pix.fine);
    SetDistanceResult d = set_interleaving_distance(T, pix.module, pix.pixelized, 1u << 22);
    if (d.kind != DistanceResult::Kind::Finite || d.value > Rat(1))
      return {false, "pixelization distance exceeds delta on trial " + std::to_string(trial)};
  }
  return {};
}

// --- 12: grid thickening only moves in whole rounds; ladder family validates -

Outcome grid_thickening() {
  GridComplex G = build_grid(2, Rat(1, 2), {{0, 6}, {0, 6}});
  const int n = G.cells->size();
  std::vector<GridOpen> opens;
  for (int s = 0; s < n; ++s) opens.push_back(star_of(G, s));
  const int stars = static_cast<int>(opens.size());
  for (int i = 0; i < stars; ++i)
    for (int j = i + 1; j < stars; ++j) opens.push_back(opens[i] | opens[j]);

  const std::vector<Rat> eps = {Rat(3, 20), Rat(1, 2), Rat(17, 20), Rat(1)};
  for (const GridOpen& U : opens)
    for (const Rat& e : eps) {
      Rat snapped = rat_floor_div(e, G.delta) * G.delta;
      if (tflat_grid(G, U, e) != tflat_grid(G, U, snapped))
        return {false, "thickening moved between whole rounds"};
    }

  GridLatticeFamily fam2 = grid_lattice_family(build_grid(2, Rat(1, 2), {{0, 2}, {0, 2}}));
  GridLatticeFamily fam1 = grid_lattice_family(build_grid(1, Rat(1), {{0, 4}}));
  if (!validate_translation(fam2.family, true).ok || !validate_translation(fam1.family, true).ok)
    return {false, "grid ladder family failed translation validation"};
  return {};
}

// --- 13: cell weights equal brute-force zig-zag shortest paths ---------------

Outcome cell_weights() {
  GridComplex G = build_grid(2, Rat(1), {{0, 4}, {0, 4}});
  const int n = G.cells->size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (G.cells->leq(v, u) && cell_weight(G, u, v) != Rat(0))
        return {false, "descending move is not free"};
      if (G.cells->leq(u, v) && cell_weight(G, u, v) != G.delta)
        return {false, "single ascending move does not cost delta"};
    }

  // independent oracle: Floyd-Warshall over free descents and delta ascents
  std::vector<std::vector<ExtRat>> d(n, std::vector<ExtRat>(n, ExtRat::inf()));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (G.cells->leq(v, u)) d[u][v] = ExtRat(Rat(0));
      else if (G.cells->leq(u, v)) d[u][v] = ExtRat(G.delta);
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
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (d[u][v].infinite || d[u][v].value != cell_weight(G, u, v))
        return {false, "BFS weight disagrees with path enumeration at a cell pair"};
    }
  return {};
}

// --- 14: lattice pushforwards pass sampled basic-cover checks ----------------

Outcome basic_cosheaf() {
  Rng g(41401);
  for (int trial = 0; trial < 50; ++trial) {
    PosetPtr P = random_poset(g, pick(g, 1, 6));
    VectModule M = random_module(g, P, 2, 2);
    CosheafReport rep = check_basic_cosheaf(M, 30, 5000 + trial);
    if (!rep.ok) return {false, "cover check failed on trial " + std::to_string(trial) + ": " +
                                    rep.message};
  }
  return {};
}

// --- 15: pixelated Reeb graphs keep big loops and drop small ones ------------

Outcome reeb_pipeline() {
  ReebGraph circleBig{{"bot", "top"}, {Rat(0), Rat(4)}, {{0, 1}, {0, 1}}};
  ReebGraph circleSmall{{"bot", "top"}, {Rat(0), Rat(1, 2)}, {{0, 1}, {0, 1}}};
  // one graph carrying both: a tall loop, then a short loop hung above it
  ReebGraph twoLoops{{"b", "t", "u", "v"},
                     {Rat(0), Rat(4), Rat(9, 2), Rat(5)},
                     {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {2, 3}}};

  PixelReebGraph big = slice_2delta(pixelize_reeb(circleBig, Rat(1)));
  PixelReebGraph small = slice_2delta(pixelize_reeb(circleSmall, Rat(1)));
  ReebPixelization pixBoth = pixelize_reeb(twoLoops, Rat(1));
  PixelReebGraph both = slice_2delta(pixBoth);
  if (big.cycle_rank != 1 || big.components != 1)
    return {false, "tall loop should survive pixelization"};
  if (small.cycle_rank != 0)
    return {false, "short loop should collapse"};
  if (both.cycle_rank != 1 || both.components != 1)
    return {false, "two-loop graph should keep exactly the tall loop"};

  // on the coarse-grid intervals the pixelization reproduces the cosheaf
  for (int c = 0; c < pixBoth.coarse.poset->size(); ++c) {
    const int i = pixBoth.incl(c);
    if (pixBoth.pixelized->sizes[i] != pixBoth.module->sizes[i])
      return {false, "pixelized sizes differ on a grid interval"};
    std::vector<char> hit(pixBoth.module->sizes[i], 0);
    for (int img : pixBoth.comparison.comps[i]) {
      if (img < 0 || img >= static_cast<int>(hit.size()) || hit[img])
        return {false, "comparison is not bijective on a grid interval"};
      hit[img] = 1;
    }
  }
  return {};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int index = 0, failures = 0;
  auto report = [&](const std::string& name, const Outcome& o, double secs) {
    ++index;
    std::cout << '[' << std::setw(2) << index << "] " << (o.ok ? "PASS" : "FAIL") << ' ' << name
              << "  (" << std::fixed << std::setprecision(1) << secs << "s)";
    if (!o.note.empty()) std::cout << "  -- " << o.note;
    std::cout << '\n' << std::flush;
    if (!o.ok) ++failures;
  };
  auto run = [&](const std::string& name, Outcome (*fn)()) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(name, o, std::chrono::duration<double>(Clock::now() - t0).count());
  };

  run("pushout trio of zig-zag modules", pushout_trio);
  run("staircase extension and its shifts", staircase_extension);
  run("floor and ceiling extensions on a chain window", floor_ceiling_chain);
  run("pushforward-pullback adjunction identities", adjunction_suite);
  run("weighted shifts match the three-step factorization", weighted_shifts);
  {
    auto t0 = Clock::now();
    Outcome iso, sand;
    try {
      std::tie(iso, sand) = isometry_and_sandwich();
    } catch (const std::exception& e) {
      iso = sand = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("relative distance matches the pushforward distance", iso, secs);
    report("weak-standard distance sandwich", sand, 0.0);
  }
  run("interleaving over a point compares colimits", point_interleaving);
  run("distortion bound from pixelization defects", distortion_bound);
  run("grid witnesses delta-approximate rectilinear opens", grid_witness);
  run("cosheaf pixelization stays within one delta", pixelization_bound);
  run("grid thickening snaps to whole rounds", grid_thickening);
  run("cell weights match brute-force zig-zag paths", cell_weights);
  run("lattice pushforwards are basic cosheaves", basic_cosheaf);
  run("reeb pixelization keeps large loops only", reeb_pipeline);

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures;
}
