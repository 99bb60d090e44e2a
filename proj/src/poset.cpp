#include "pil/poset.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace pil {

namespace {

void transitive_close(std::vector<Bitset>& up) {
  const int n = static_cast<int>(up.size());
  // Warshall on bitsets: if k ∈ up[p], fold in up[k].
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p)
      if (up[p].test(k)) up[p] |= up[k];
}

}  // namespace

std::shared_ptr<const FinitePoset> FinitePoset::from_relations(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& relations) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (idx.count(labels[i]))
      throw ValidationError("duplicate element label '" + labels[i] + "'");
    idx[labels[i]] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(relations.size());
  for (const auto& [lo, hi] : relations) {
    auto itl = idx.find(lo), ith = idx.find(hi);
    if (itl == idx.end()) throw UnknownLabel("unknown element '" + lo + "' in relation");
    if (ith == idx.end()) throw UnknownLabel("unknown element '" + hi + "' in relation");
    pairs.emplace_back(itl->second, ith->second);
  }
  return from_index_pairs(std::move(labels), pairs);
}

std::shared_ptr<const FinitePoset> FinitePoset::from_index_pairs(
    std::vector<std::string> labels, const std::vector<std::pair<int, int>>& relations) {
  const int n = static_cast<int>(labels.size());
  std::vector<Bitset> up(n, Bitset(n));
  for (int p = 0; p < n; ++p) up[p].set(p);
  for (const auto& [lo, hi] : relations) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw UnknownLabel("relation index out of range");
    up[lo].set(hi);
  }
  transitive_close(up);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (up[p].test(q) && up[q].test(p))
        throw CycleError("elements '" + labels[p] + "' and '" + labels[q] +
                         "' are related in both directions");
  return from_leq(std::move(labels), std::move(up));
}

std::shared_ptr<const FinitePoset> FinitePoset::from_leq(std::vector<std::string> labels,
                                                         std::vector<Bitset> leq) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(leq.size()) != n) throw ShapeMismatch("leq matrix size");
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(leq[p].size()) != n) throw ShapeMismatch("leq row size");
    if (!leq[p].test(p)) throw ValidationError("order not reflexive at '" + labels[p] + "'");
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p != q && leq[p].test(q) && leq[q].test(p))
        throw CycleError("antisymmetry fails for '" + labels[p] + "', '" + labels[q] + "'");
      if (leq[p].test(q) && !(leq[q] & ~leq[p]).none())
        throw ValidationError("order not transitive at '" + labels[p] + "' ≤ '" + labels[q] +
                              "'");
    }

  auto poset = std::shared_ptr<FinitePoset>(new FinitePoset());
  poset->n_ = n;
  poset->labels_ = std::move(labels);
  poset->up_ = std::move(leq);
  poset->down_.assign(n, Bitset(n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (poset->up_[p].test(q)) poset->down_[q].set(p);
  poset->finish();
  return poset;
}

void FinitePoset::finish() {
  // Hasse edges by transitive reduction: p ⋖ q iff p < q and no r strictly
  // between.
  hasse_below_.assign(n_, {});
  for (int q = 0; q < n_; ++q) {
    Bitset strictly_below = down_[q];
    strictly_below.reset(q);
    for (int p = 0; p < n_; ++p) {
      if (!strictly_below.test(p)) continue;
      Bitset between = up_[p] & strictly_below;
      between.reset(p);
      if (between.none()) {
        hasse_.emplace_back(p, q);
        hasse_below_[q].push_back(p);
      }
    }
  }
  std::sort(hasse_.begin(), hasse_.end());
  for (auto& v : hasse_below_) std::sort(v.begin(), v.end());

  // Kahn topological order; ties broken by index for determinism.
  std::vector<int> indeg(n_, 0);
  for (int q = 0; q < n_; ++q) indeg[q] = static_cast<int>(hasse_below_[q].size());
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int p = 0; p < n_; ++p)
    if (indeg[p] == 0) ready.push(p);
  std::vector<std::vector<int>> hasse_above(n_);
  for (const auto& [p, q] : hasse_) hasse_above[p].push_back(q);
  while (!ready.empty()) {
    int p = ready.top();
    ready.pop();
    topo_.push_back(p);
    for (int q : hasse_above[p])
      if (--indeg[q] == 0) ready.push(q);
  }
  topo_pos_.assign(n_, 0);
  for (int i = 0; i < n_; ++i) topo_pos_[topo_[i]] = i;
}

int FinitePoset::index_of(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  throw UnknownLabel("unknown element '" + label + "'");
}

bool DownSet::is_valid() const {
  if (static_cast<int>(members.size()) != poset->size()) return false;
  for (int q = 0; q < poset->size(); ++q)
    if (members.test(q) && !(poset->down_set(q) & ~members).none()) return false;
  return true;
}

bool MonotoneMap::is_monotone_valid() const {
  const int n = source->size();
  if (static_cast<int>(image.size()) != n) return false;
  for (int p = 0; p < n; ++p)
    if (image[p] < 0 || image[p] >= target->size()) return false;
  for (const auto& [p, q] : source->hasse())
    if (!target->leq(image[p], image[q])) return false;
  return true;
}

bool MonotoneMap::is_full() const {
  const int n = source->size();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (target->leq(image[p], image[q]) && !source->leq(p, q)) return false;
  return true;
}

bool MonotoneMap::is_injective() const {
  std::vector<int> img = image;
  std::sort(img.begin(), img.end());
  return std::adjacent_find(img.begin(), img.end()) == img.end();
}

MonotoneMap MonotoneMap::identity(PosetPtr P) {
  MonotoneMap f{P, P, std::vector<int>(P->size())};
  for (int p = 0; p < P->size(); ++p) f.image[p] = p;
  return f;
}

MonotoneMap MonotoneMap::constant(PosetPtr P, PosetPtr Q, int q0) {
  return MonotoneMap{P, Q, std::vector<int>(P->size(), q0)};
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  MonotoneMap h{f.source, g.target, std::vector<int>(f.source->size())};
  for (int p = 0; p < f.source->size(); ++p) h.image[p] = g.image[f.image[p]];
  return h;
}

DownSet principal_down(PosetPtr P, int p) {
  if (p < 0 || p >= P->size()) throw ValidationError("element index out of range");
  return DownSet{P, P->down_set(p)};
}

DownSet down_closure(PosetPtr P, const Bitset& S) {
  Bitset out(P->size());
  for (int p = 0; p < P->size(); ++p)
    if (S.test(p)) out |= P->down_set(p);
  return DownSet{P, out};
}

Bitset up_closure(PosetPtr P, const Bitset& S) {
  Bitset out(P->size());
  for (int p = 0; p < P->size(); ++p)
    if (S.test(p)) out |= P->up_set(p);
  return out;
}

Bitset sublevel(const MonotoneMap& f, int q) {
  Bitset out(f.source->size());
  for (int p = 0; p < f.source->size(); ++p)
    if (f.target->leq(f.image[p], q)) out.set(p);
  return out;
}

Bitset superlevel(const MonotoneMap& f, int q) {
  Bitset out(f.source->size());
  for (int p = 0; p < f.source->size(); ++p)
    if (f.target->leq(q, f.image[p])) out.set(p);
  return out;
}

int DownLattice::index_of(const Bitset& s) const {
  for (std::size_t i = 0; i < down_sets.size(); ++i)
    if (down_sets[i] == s) return static_cast<int>(i);
  throw ValidationError("set is not a down set of the base poset");
}

int DownLattice::bottom() const { return index_of(Bitset(base->size())); }

int DownLattice::top() const {
  Bitset b(base->size());
  b.set();
  return index_of(b);
}

DownLattice down_lattice(PosetPtr P, std::size_t cap) {
  const int n = P->size();
  // Enumerate down sets by BFS from ∅: adding any maximal element of the
  // complement's lower frontier keeps the set down-closed. Simpler and still
  // complete: a set S is down-closed iff every element's principal down set
  // is inside; grow by adding minimal elements of the complement.
  std::map<Bitset, int> seen;
  std::vector<Bitset> all;
  std::queue<Bitset> work;
  Bitset empty(n);
  seen[empty] = 0;
  all.push_back(empty);
  work.push(empty);
  while (!work.empty()) {
    Bitset s = work.front();
    work.pop();
    for (int p = 0; p < n; ++p) {
      if (s.test(p)) continue;
      // p addable iff everything strictly below p is already in s.
      Bitset below = P->down_set(p);
      below.reset(p);
      if (!(below & ~s).none()) continue;
      Bitset t = s;
      t.set(p);
      if (seen.count(t)) continue;
      if (all.size() >= cap)
        throw ExplosionError("down-set count exceeds cap " + std::to_string(cap));
      seen[t] = static_cast<int>(all.size());
      all.push_back(t);
      work.push(t);
    }
  }
  // Order lattice elements deterministically: by popcount then bit pattern,
  // which is automatic from std::map's Bitset ordering? Use stable canonical
  // sort: size, then lexicographic bit string.
  std::sort(all.begin(), all.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });

  std::vector<std::string> labels(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string name = "{";
    bool first = true;
    for (int p = 0; p < n; ++p)
      if (all[i].test(p)) {
        if (!first) name += ",";
        name += P->label(p);
        first = false;
      }
    name += "}";
    labels[i] = name;
  }
  std::vector<Bitset> leq(all.size(), Bitset(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      if ((all[i] & ~all[j]).none()) leq[i].set(j);

  DownLattice L;
  L.base = P;
  L.lattice = FinitePoset::from_leq(std::move(labels), std::move(leq));
  L.down_sets = std::move(all);
  L.iota.source = P;
  L.iota.target = L.lattice;
  L.iota.image.resize(n);
  for (int p = 0; p < n; ++p) L.iota.image[p] = L.index_of(P->down_set(p));
  return L;
}

namespace {

int bound_of(const FinitePoset& P, int a, int b, bool join) {
  Bitset common = join ? (P.up_set(a) & P.up_set(b)) : (P.down_set(a) & P.down_set(b));
  int best = -1;
  for (int c = 0; c < P.size(); ++c) {
    if (!common.test(c)) continue;
    if (best < 0) {
      best = c;
      continue;
    }
    if (join ? P.leq(c, best) : P.leq(best, c)) best = c;
  }
  if (best < 0) return -1;
  // best must compare with every common bound, else no least/greatest exists.
  for (int c = 0; c < P.size(); ++c)
    if (common.test(c) && !(join ? P.leq(best, c) : P.leq(c, best))) return -1;
  return best;
}

}  // namespace

LatticeOps lattice_ops(PosetPtr P) {
  const int n = P->size();
  LatticeOps ops;
  ops.poset = P;
  ops.join_tab.assign(n, std::vector<int>(n, -1));
  ops.meet_tab.assign(n, std::vector<int>(n, -1));
  ops.is_lattice = n > 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ops.join_tab[a][b] = bound_of(*P, a, b, true);
      ops.meet_tab[a][b] = bound_of(*P, a, b, false);
      if (ops.join_tab[a][b] < 0 || ops.meet_tab[a][b] < 0) ops.is_lattice = false;
    }
  if (ops.is_lattice) {
    int bot = 0, top = 0;
    for (int a = 1; a < n; ++a) {
      bot = ops.meet_tab[bot][a];
      top = ops.join_tab[top][a];
    }
    ops.bottom = bot;
    ops.top = top;
  }
  return ops;
}

int LatticeOps::join_of(const Bitset& S) const {
  if (!is_lattice) return -1;
  int acc = -1;
  for (std::size_t p = 0; p < S.size(); ++p)
    if (S.test(p)) acc = acc < 0 ? static_cast<int>(p) : join_tab[acc][p];
  return acc < 0 ? bottom : acc;
}

int LatticeOps::meet_of(const Bitset& S) const {
  if (!is_lattice) return -1;
  int acc = -1;
  for (std::size_t p = 0; p < S.size(); ++p)
    if (S.test(p)) acc = acc < 0 ? static_cast<int>(p) : meet_tab[acc][p];
  return acc < 0 ? top : acc;
}

}  // namespace pil
