#include "pil/grid.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace pil {

namespace {

std::string coord_label(const std::vector<int>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os.str();
}

bool odd(int c) { return c % 2 != 0; }

// star1(a) ∩ star1(b) is star1(*out), or empty (returns false).
bool axis_meet(int a, int b, int* out) {
  if (a == b) {
    *out = a;
    return true;
  }
  int lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo == 1) {
    *out = odd(lo) ? lo : hi;
    return true;
  }
  if (hi - lo == 2 && !odd(lo) && !odd(hi)) {
    *out = lo + 1;
    return true;
  }
  return false;
}

}  // namespace

int GridComplex::cell_index(const std::vector<int>& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

int GridComplex::cell_dim(int sigma) const {
  int d = 0;
  for (int c : coords[sigma]) d += odd(c) ? 1 : 0;
  return d;
}

GridComplex build_grid(int n, const Rat& delta, const std::vector<std::pair<int, int>>& window,
                       std::size_t cap) {
  if (n < 1 || n > 3) throw ValidationError("grid dimension must be 1, 2, or 3");
  if (delta <= Rat(0)) throw ValidationError("grid spacing must be positive");
  if (static_cast<int>(window.size()) != n)
    throw ValidationError("grid window needs one doubled-coordinate range per axis");

  std::size_t count = 1;
  for (const auto& [lo, hi] : window) {
    if (lo > hi) throw ValidationError("empty grid window range");
    count *= static_cast<std::size_t>(hi) - static_cast<std::size_t>(lo) + 1;
    if (count > cap) {
      std::ostringstream os;
      os << "grid window has more than " << cap << " cells";
      throw ExplosionError(os.str());
    }
  }

  GridComplex G;
  G.n = n;
  G.delta = delta;
  G.window = window;
  G.coords.reserve(count);

  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = window[i].first;
  while (true) {
    G.index_[c] = static_cast<int>(G.coords.size());
    G.coords.push_back(c);
    int i = 0;
    while (i < n && ++c[i] > window[i].second) {
      c[i] = window[i].first;
      ++i;
    }
    if (i == n) break;
  }

  std::vector<std::string> labels;
  labels.reserve(G.coords.size());
  for (const auto& cc : G.coords) labels.push_back(coord_label(cc));

  // Covers: flip one odd coordinate to an adjacent even one (face ≤ coface,
  // i.e. higher-dimensional cell below the lower-dimensional one it spans).
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t s = 0; s < G.coords.size(); ++s) {
    std::vector<int> cc = G.coords[s];
    for (int i = 0; i < n; ++i) {
      if (!odd(cc[i])) continue;
      for (int d : {-1, 1}) {
        cc[i] += d;
        int t = G.cell_index(cc);
        if (t >= 0) pairs.push_back({static_cast<int>(s), t});
        cc[i] -= d;
      }
    }
  }
  G.cells = FinitePoset::from_index_pairs(std::move(labels), pairs);
  return G;
}

bool is_grid_open(const GridComplex& G, const GridOpen& U) {
  if (U.size() != static_cast<std::size_t>(G.cells->size())) return false;
  for (auto s = U.find_first(); s != Bitset::npos; s = U.find_next(s))
    if (!G.cells->down_set(static_cast<int>(s)).is_subset_of(U)) return false;
  return true;
}

void require_grid_open(const GridComplex& G, const GridOpen& U) {
  if (U.size() != static_cast<std::size_t>(G.cells->size()))
    throw ValidationError("grid open has the wrong number of bits for this window");
  if (!is_grid_open(G, U))
    throw ValidationError("cell set is not open: missing a coface of one of its members");
}

GridOpen star_of(const GridComplex& G, int sigma) { return G.cells->down_set(sigma); }

std::vector<int> weight_steps_from(const GridComplex& G, int sigma) {
  const FinitePoset& P = *G.cells;
  const int V = P.size();
  std::vector<int> done(V, -1);
  std::vector<int> tent(V, std::numeric_limits<int>::max());
  std::deque<int> dq;
  tent[sigma] = 0;
  dq.push_back(sigma);
  while (!dq.empty()) {
    int u = dq.front();
    dq.pop_front();
    if (done[u] >= 0) continue;
    done[u] = tent[u];
    const Bitset& dn = P.down_set(u);
    for (auto v = dn.find_first(); v != Bitset::npos; v = dn.find_next(v)) {
      if (done[v] < 0 && tent[u] < tent[v]) {
        tent[v] = tent[u];
        dq.push_front(static_cast<int>(v));
      }
    }
    const Bitset& up = P.up_set(u);
    for (auto v = up.find_first(); v != Bitset::npos; v = up.find_next(v)) {
      if (done[v] < 0 && tent[u] + 1 < tent[v]) {
        tent[v] = tent[u] + 1;
        dq.push_back(static_cast<int>(v));
      }
    }
  }
  return done;
}

Rat cell_weight(const GridComplex& G, int sigma, int tau) {
  int steps = weight_steps_from(G, sigma)[tau];
  if (steps < 0) throw ValidationError("cells are not connected by comparability zig-zags");
  return Rat(steps) * G.delta;
}

WeightedPoset grid_weighting(const GridComplex& G) {
  const int V = G.cells->size();
  WeightedPoset wP;
  wP.poset = G.cells;
  wP.w.assign(V, std::vector<ExtRat>(V));
  for (int p = 0; p < V; ++p) {
    std::vector<int> steps = weight_steps_from(G, p);
    for (int q = 0; q < V; ++q)
      wP.w[p][q] = steps[q] < 0 ? ExtRat::inf() : ExtRat(Rat(steps[q]) * G.delta);
  }
  return wP;
}

GridOpen star_ball(const GridComplex& G, int sigma, const Rat& eps) {
  if (eps < Rat(0)) throw PreconditionError("negative thickening amount");
  std::vector<int> steps = weight_steps_from(G, sigma);
  GridOpen U(G.cells->size());
  for (std::size_t q = 0; q < U.size(); ++q)
    if (steps[q] >= 0 && Rat(steps[q]) * G.delta <= eps) U.set(q);
  return U;
}

GridOpen updown_rounds(const GridComplex& G, GridOpen U, int k) {
  require_grid_open(G, U);
  for (int i = 0; i < k; ++i) {
    GridOpen next = down_closure(G.cells, up_closure(G.cells, U)).members;
    if (next == U) break;
    U = std::move(next);
  }
  return U;
}

GridOpen tflat_grid(const GridComplex& G, const GridOpen& U, const Rat& eps) {
  if (eps < Rat(0)) throw PreconditionError("negative thickening amount");
  long long k = rat_floor_div(eps, G.delta).numerator();
  k = std::min<long long>(k, G.cells->size() + 1);
  return updown_rounds(G, U, static_cast<int>(k));
}

GridLatticeFamily grid_lattice_family(const GridComplex& G, std::size_t cap) {
  DownLattice L = down_lattice(G.cells, cap);
  const int V = G.cells->size();
  int diam = 0;
  for (int p = 0; p < V; ++p) {
    std::vector<int> steps = weight_steps_from(G, p);
    for (int q = 0; q < V; ++q) {
      if (steps[q] < 0) throw ValidationError("grid window is not zig-zag connected");
      diam = std::max(diam, steps[q]);
    }
  }
  TranslationFamily T;
  T.poset = L.lattice;
  const int m = static_cast<int>(L.down_sets.size());
  for (int k = 0; k <= diam; ++k) {
    T.ladder.push_back(Rat(k) * G.delta);
    std::vector<int> row(m);
    for (int s = 0; s < m; ++s) row[s] = L.index_of(updown_rounds(G, L.down_sets[s], k));
    T.maps.push_back(std::move(row));
  }
  require_valid_translation(T, /*require_identity_at_zero=*/true);
  return {std::move(L), std::move(T)};
}

bool Box::is_empty() const {
  for (const auto& [lo, hi] : sides)
    if (!(lo < hi)) return true;
  return false;
}

RectOpen metric_thicken(const RectOpen& V, const Rat& eps) {
  if (eps < Rat(0)) throw PreconditionError("negative thickening amount");
  RectOpen R;
  R.n = V.n;
  for (const Box& b : V.boxes) {
    if (b.is_empty()) continue;
    Box g;
    for (const auto& [lo, hi] : b.sides) g.sides.push_back({lo - eps, hi + eps});
    R.boxes.push_back(std::move(g));
  }
  return R;
}

Box cell_box(const GridComplex& G, int sigma) {
  Box b;
  for (int c : G.coords[sigma]) {
    if (!odd(c)) {
      long long k = c / 2;
      b.sides.push_back({Rat(k - 1) * G.delta, Rat(k + 1) * G.delta});
    } else {
      long long k = (c - 1) / 2;
      b.sides.push_back({Rat(k) * G.delta, Rat(k + 1) * G.delta});
    }
  }
  return b;
}

RectOpen realize(const GridComplex& G, const GridOpen& U) {
  require_grid_open(G, U);
  RectOpen R;
  R.n = G.n;
  for (auto s = U.find_first(); s != Bitset::npos; s = U.find_next(s))
    R.boxes.push_back(cell_box(G, static_cast<int>(s)));
  return R;
}

bool rect_contains_point(const RectOpen& A, const std::vector<Rat>& x) {
  for (const Box& b : A.boxes) {
    if (b.sides.size() != x.size())
      throw ShapeMismatch("box dimension does not match the point");
    bool in = true;
    for (std::size_t i = 0; i < x.size() && in; ++i)
      in = b.sides[i].first < x[i] && x[i] < b.sides[i].second;
    if (in) return true;
  }
  return false;
}

bool rect_contains(const RectOpen& A, const RectOpen& B) {
  if (A.n != B.n) throw ShapeMismatch("dimension mismatch between rectangular opens");
  const int n = A.n;

  bool b_nonempty = false;
  for (const Box& b : B.boxes) b_nonempty = b_nonempty || !b.is_empty();
  if (!b_nonempty) return true;

  // Membership in either union is constant on each face of the coordinate
  // arrangement, so testing one point per face (corners and gap midpoints,
  // per axis) decides containment exactly.
  std::vector<std::vector<Rat>> cs(n);
  for (const RectOpen* R : {&A, &B}) {
    for (const Box& b : R->boxes) {
      if (b.is_empty()) continue;
      if (static_cast<int>(b.sides.size()) != n)
        throw ShapeMismatch("box dimension does not match the rectangular open");
      for (int i = 0; i < n; ++i) {
        cs[i].push_back(b.sides[i].first);
        cs[i].push_back(b.sides[i].second);
      }
    }
  }
  std::vector<std::vector<Rat>> pts(n);
  for (int i = 0; i < n; ++i) {
    std::sort(cs[i].begin(), cs[i].end());
    cs[i].erase(std::unique(cs[i].begin(), cs[i].end()), cs[i].end());
    for (std::size_t j = 0; j < cs[i].size(); ++j) {
      pts[i].push_back(cs[i][j]);
      if (j + 1 < cs[i].size()) pts[i].push_back((cs[i][j] + cs[i][j + 1]) / 2);
    }
  }

  std::vector<std::size_t> it(n, 0);
  std::vector<Rat> x(n);
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = pts[i][it[i]];
    if (rect_contains_point(B, x) && !rect_contains_point(A, x)) return false;
    int i = 0;
    while (i < n && ++it[i] == pts[i].size()) {
      it[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return true;
}

std::vector<int> cells_meeting(const GridComplex& G, const RectOpen& V) {
  if (V.n != G.n) throw ShapeMismatch("dimension mismatch between grid and rectangular open");
  std::vector<int> out;
  const int total = G.cells->size();
  for (int s = 0; s < total; ++s) {
    bool meets = false;
    for (const Box& b : V.boxes) {
      if (b.is_empty()) continue;
      if (static_cast<int>(b.sides.size()) != G.n)
        throw ShapeMismatch("box dimension does not match the grid");
      bool ok = true;
      for (int i = 0; i < G.n && ok; ++i) {
        int c = G.coords[s][i];
        const Rat& lo = b.sides[i].first;
        const Rat& hi = b.sides[i].second;
        if (!odd(c)) {
          Rat p = Rat(c / 2) * G.delta;
          ok = lo < p && p < hi;
        } else {
          long long k = (c - 1) / 2;
          ok = std::max(Rat(k) * G.delta, lo) < std::min(Rat(k + 1) * G.delta, hi);
        }
      }
      if (ok) {
        meets = true;
        break;
      }
    }
    if (meets) out.push_back(s);
  }
  return out;
}

GridOpen delta_approx_witness(const GridComplex& G, const RectOpen& V) {
  GridOpen U(G.cells->size());
  for (int s : cells_meeting(G, V)) U |= G.cells->down_set(s);
  if (!rect_contains(realize(G, U), V))
    throw BoundaryError("open set is not covered by in-window stars; enlarge the window");
  return U;
}

CoverCompletions cover_completions(const GridComplex& G) {
  const FinitePoset& P = *G.cells;
  const int V = P.size();
  CoverCompletions rep;
  rep.star_monotone = rep.star_full = rep.star_injective = rep.meets_are_cells = true;
  for (int s = 0; s < V; ++s) {
    for (int t = 0; t < V; ++t) {
      bool sub = P.down_set(s).is_subset_of(P.down_set(t));
      if (P.leq(s, t) && !sub) rep.star_monotone = false;
      if (sub && !P.leq(s, t)) rep.star_full = false;
      if (s != t && P.down_set(s) == P.down_set(t)) rep.star_injective = false;
      if (t < s) continue;
      Bitset I = P.down_set(s) & P.down_set(t);
      std::vector<int> mc(G.n);
      bool candidate = true;
      for (int i = 0; i < G.n && candidate; ++i)
        candidate = axis_meet(G.coords[s][i], G.coords[t][i], &mc[i]);
      if (!candidate) {
        if (I.any()) rep.meets_are_cells = false;
      } else {
        int m = G.cell_index(mc);
        if (m < 0 || I != P.down_set(m)) rep.meets_are_cells = false;
        if (I.any()) ++rep.nonempty_meets;
      }
    }
  }
  return rep;
}

}  // namespace pil
