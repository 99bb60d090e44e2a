#include "pil/reeb.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pil {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string interval_label(const Rat& a, const Rat& b) {
  return "(" + format_rat(a) + "," + format_rat(b) + ")";
}

// Component id per node (-1 absent), ids dense in first-node order.
struct Components {
  std::vector<int> of_node;
  std::vector<int> rep;  // first node of each class
};

Components interval_components(const ReebGraph& R, const Rat& a, const Rat& b) {
  const int V = static_cast<int>(R.ids.size());
  const int E = static_cast<int>(R.edges.size());
  std::vector<bool> present(V + E, false);
  UnionFind uf(V + E);
  for (int v = 0; v < V; ++v) present[v] = a < R.values[v] && R.values[v] < b;
  for (int j = 0; j < E; ++j) {
    auto [u, w] = R.edges[j];
    Rat lo = std::min(R.values[u], R.values[w]);
    Rat hi = std::max(R.values[u], R.values[w]);
    if (!(lo < b && a < hi)) continue;
    present[V + j] = true;
    if (present[u]) uf.unite(V + j, u);
    if (present[w]) uf.unite(V + j, w);
  }
  Components out;
  out.of_node.assign(V + E, -1);
  std::vector<int> id_of_root(V + E, -1);
  for (int x = 0; x < V + E; ++x) {
    if (!present[x]) continue;
    int r = uf.find(x);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(out.rep.size());
      out.rep.push_back(x);
    }
    out.of_node[x] = id_of_root[r];
  }
  return out;
}

}  // namespace

int ReebGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  return -1;
}

ValidationReport validate_reeb(const ReebGraph& R) {
  if (R.ids.size() != R.values.size())
    return {false, "vertex ids and heights differ in length"};
  std::set<std::string> seen;
  for (const auto& id : R.ids) {
    if (id.empty()) return {false, "empty vertex id"};
    if (!seen.insert(id).second) return {false, "duplicate vertex id " + id};
  }
  const int V = static_cast<int>(R.ids.size());
  for (const auto& [u, w] : R.edges) {
    if (u < 0 || u >= V || w < 0 || w >= V) return {false, "edge endpoint out of range"};
    if (R.values[u] == R.values[w])
      return {false, "edge between equal heights at " + R.ids[u] + " -- " + R.ids[w]};
  }
  return {};
}

void require_valid_reeb(const ReebGraph& R) {
  ValidationReport rep = validate_reeb(R);
  if (!rep.ok) throw ValidationError(rep.message);
}

int IntervalFamily::index_of(const Rat& a, const Rat& b) const {
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].first == a && intervals[i].second == b) return static_cast<int>(i);
  return -1;
}

IntervalFamily interval_family(const Rat& lo, const Rat& hi, const Rat& spacing,
                               std::size_t cap) {
  if (!(spacing > Rat(0))) throw ValidationError("interval spacing must be positive");
  if (!(lo < hi)) throw ValidationError("empty interval window");
  Rat q = (hi - lo) / spacing;
  if (q.denominator() != 1)
    throw ValidationError("window width must be a whole number of spacings");
  const long long K = q.numerator();
  std::size_t count = static_cast<std::size_t>(K) * (K + 1) / 2;
  if (count > cap) {
    std::ostringstream os;
    os << "interval family has " << count << " members, more than " << cap;
    throw ExplosionError(os.str());
  }

  IntervalFamily F;
  F.lo = lo;
  F.hi = hi;
  F.spacing = spacing;
  std::vector<std::string> labels;
  for (long long k1 = 0; k1 < K; ++k1)
    for (long long k2 = k1 + 1; k2 <= K; ++k2) {
      Rat a = lo + Rat(k1) * spacing, b = lo + Rat(k2) * spacing;
      F.intervals.push_back({a, b});
      labels.push_back(interval_label(a, b));
    }

  const int m = static_cast<int>(F.intervals.size());
  std::vector<Bitset> leq(m, Bitset(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (F.intervals[j].first <= F.intervals[i].first &&
          F.intervals[i].second <= F.intervals[j].second)
        leq[i].set(j);
  F.poset = FinitePoset::from_leq(std::move(labels), std::move(leq));
  return F;
}

MonotoneMap interval_inclusion(const IntervalFamily& coarse, const IntervalFamily& fine) {
  MonotoneMap f;
  f.source = coarse.poset;
  f.target = fine.poset;
  f.image.resize(coarse.intervals.size());
  for (std::size_t i = 0; i < coarse.intervals.size(); ++i) {
    int j = fine.index_of(coarse.intervals[i].first, coarse.intervals[i].second);
    if (j < 0) throw ValidationError("coarse interval missing from the refinement");
    f.image[i] = j;
  }
  return f;
}

SetModule reeb_cosheaf(const ReebGraph& R, const IntervalFamily& F) {
  require_valid_reeb(R);
  SetModule M;
  M.poset = F.poset;
  const int m = static_cast<int>(F.intervals.size());
  std::vector<Components> comps(m);
  M.sizes.resize(m);
  for (int i = 0; i < m; ++i) {
    comps[i] = interval_components(R, F.intervals[i].first, F.intervals[i].second);
    M.sizes[i] = static_cast<int>(comps[i].rep.size());
  }
  for (const auto& [lo, hi] : F.poset->hasse()) {
    std::vector<int> fn(M.sizes[lo]);
    for (int x = 0; x < M.sizes[lo]; ++x) fn[x] = comps[hi].of_node[comps[lo].rep[x]];
    M.edge_fns[{lo, hi}] = std::move(fn);
  }
  return M;
}

TranslationFamily interval_translation(const IntervalFamily& F) {
  Rat q = (F.hi - F.lo) / F.spacing;
  const long long K = q.numerator();
  TranslationFamily T;
  T.poset = F.poset;
  const int m = static_cast<int>(F.intervals.size());
  for (long long k = 0; k <= K; ++k) {
    Rat eps = Rat(k) * F.spacing;
    std::vector<int> row(m);
    for (int i = 0; i < m; ++i) {
      Rat a = std::max(F.intervals[i].first - eps, F.lo);
      Rat b = std::min(F.intervals[i].second + eps, F.hi);
      row[i] = F.index_of(a, b);
    }
    T.ladder.push_back(eps);
    T.maps.push_back(std::move(row));
  }
  require_valid_translation(T, /*require_identity_at_zero=*/true);
  return T;
}

ReebPixelization pixelize_reeb(const ReebGraph& R, const Rat& delta, int refine_m) {
  require_valid_reeb(R);
  if (R.ids.empty()) throw ValidationError("cannot pixelize an empty graph");
  if (!(delta > Rat(0))) throw ValidationError("grid spacing must be positive");
  if (refine_m < 2) throw ValidationError("refinement must split each step at least in two");

  Rat vmin = R.values[0], vmax = R.values[0];
  for (const Rat& v : R.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  Rat lo = (rat_floor_div(vmin, delta) - 1) * delta;
  Rat hi = (-rat_floor_div(-vmax, delta) + 1) * delta;

  ReebPixelization out;
  out.delta = delta;
  out.refine = refine_m;
  out.fine = interval_family(lo, hi, delta / refine_m);
  out.coarse = interval_family(lo, hi, delta);
  out.incl = interval_inclusion(out.coarse, out.fine);
  out.module = std::make_shared<SetModule>(reeb_cosheaf(R, out.fine));
  out.restricted = std::make_shared<SetModule>(set_pullback(out.incl, *out.module));
  SetPixelization pix = set_pixelize_lower(out.incl, out.module);
  out.pixelized = pix.module;
  out.comparison = pix.comparison;
  return out;
}

PixelReebGraph slice_2delta(const ReebPixelization& pix) {
  const Rat& d = pix.delta;
  const Rat& lo = pix.coarse.lo;
  const long long K = ((pix.coarse.hi - lo) / d).numerator();
  const SetModule& M = *pix.pixelized;

  PixelReebGraph out;
  std::vector<int> slice_idx, base;
  for (long long k = 0; k + 2 <= K; ++k) {
    int fi = pix.fine.index_of(lo + Rat(k) * d, lo + Rat(k + 2) * d);
    if (fi < 0) throw Error("2-delta slice missing from the refinement family");
    slice_idx.push_back(fi);
    base.push_back(static_cast<int>(out.graph.ids.size()));
    Rat center = lo + Rat(k + 1) * d;
    for (int x = 0; x < M.sizes[fi]; ++x) {
      std::ostringstream os;
      os << "s" << k << "_" << x;
      out.graph.ids.push_back(os.str());
      out.graph.values.push_back(center);
    }
  }
  const int slices = static_cast<int>(slice_idx.size());
  for (int k = 0; k + 1 < slices; ++k) {
    int ji = pix.fine.index_of(lo + Rat(k + 1) * d, lo + Rat(k + 2) * d);
    if (ji < 0) throw Error("overlap slice missing from the refinement family");
    std::vector<int> toA = M.fn_on(ji, slice_idx[k]);
    std::vector<int> toB = M.fn_on(ji, slice_idx[k + 1]);
    std::set<std::pair<int, int>> pairs;
    for (int z = 0; z < M.sizes[ji]; ++z) pairs.insert({toA[z], toB[z]});
    for (const auto& [x, y] : pairs)
      out.graph.edges.push_back({base[k] + x, base[k + 1] + y});
  }

  const int V = static_cast<int>(out.graph.ids.size());
  UnionFind uf(V);
  for (const auto& [u, w] : out.graph.edges) uf.unite(u, w);
  std::set<int> roots;
  for (int v = 0; v < V; ++v) roots.insert(uf.find(v));
  out.components = static_cast<int>(roots.size());
  out.cycle_rank =
      static_cast<int>(out.graph.edges.size()) - V + out.components;
  return out;
}

SetDistanceResult reeb_distance(const ReebGraph& R1, const ReebGraph& R2, const Rat& delta,
                                std::size_t cap) {
  require_valid_reeb(R1);
  require_valid_reeb(R2);
  if (R1.ids.empty() || R2.ids.empty())
    throw ValidationError("cannot compare an empty graph");
  if (!(delta > Rat(0))) throw ValidationError("grid spacing must be positive");

  Rat vmin = R1.values[0], vmax = R1.values[0];
  for (const Rat& v : R1.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  for (const Rat& v : R2.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  Rat lo = (rat_floor_div(vmin, delta) - 1) * delta;
  Rat hi = (-rat_floor_div(-vmax, delta) + 1) * delta;

  IntervalFamily F = interval_family(lo, hi, delta);
  TranslationFamily T = interval_translation(F);
  auto M1 = std::make_shared<SetModule>(reeb_cosheaf(R1, F));
  auto M2 = std::make_shared<SetModule>(reeb_cosheaf(R2, F));
  return set_interleaving_distance(T, M1, M2, cap);
}

std::string reeb_dot(const ReebGraph& R) {
  std::ostringstream os;
  os << "graph reeb {\n";
  for (std::size_t v = 0; v < R.ids.size(); ++v)
    os << "  \"" << R.ids[v] << "\" [label=\"" << R.ids[v] << " @ " << format_rat(R.values[v])
       << "\"];\n";
  for (const auto& [u, w] : R.edges) os << "  \"" << R.ids[u] << "\" -- \"" << R.ids[w] << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pil
