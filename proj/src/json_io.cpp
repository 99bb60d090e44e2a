#include "pil/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pil {

namespace {

std::string ctx_msg(const char* doc, const std::string& what) {
  return std::string(doc) + ": " + what;
}

const Json& field(const Json& j, const char* key, const char* doc) {
  if (!j.is_object()) throw SchemaError(ctx_msg(doc, "expected a JSON object"));
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ctx_msg(doc, std::string("missing key \"") + key + "\""));
  return *it;
}

const Json* field_opt(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

long long int_from(const Json& j, const char* doc) {
  if (!j.is_number_integer()) throw SchemaError(ctx_msg(doc, "expected an integer"));
  return j.get<long long>();
}

std::string str_from(const Json& j, const char* doc) {
  if (!j.is_string()) throw SchemaError(ctx_msg(doc, "expected a string"));
  return j.get<std::string>();
}

int label_index(const FinitePoset& P, const std::string& label, const char* doc) {
  try {
    return P.index_of(label);
  } catch (const UnknownLabel&) {
    throw SchemaError(ctx_msg(doc, "unknown element \"" + label + "\""));
  }
}

std::string edge_key(const FinitePoset& P, int lo, int hi) {
  return P.label(lo) + "|" + P.label(hi);
}

std::uint32_t mod_reduce(long long v, std::uint32_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  return static_cast<std::uint32_t>(m);
}

FFMatrix matrix_from(const Json& j, std::uint32_t p, int rows, int cols, const char* doc) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw SchemaError(ctx_msg(doc, "matrix must have one row array per target dimension"));
  FFMatrix A(p, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw SchemaError(ctx_msg(doc, "matrix row has the wrong length"));
    for (int c = 0; c < cols; ++c) A.at(r, c) = mod_reduce(int_from(row[c], doc), p);
  }
  return A;
}

Json matrix_to(const FFMatrix& A) {
  Json rows = Json::array();
  for (int r = 0; r < A.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < A.cols; ++c) row.push_back(A.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw SchemaError("expected an integer or a \"p/q\" string");
}

ExtRat ext_from_json(const Json& j) {
  if (j.is_number_integer()) return ExtRat(Rat(j.get<long long>()));
  if (j.is_string()) return parse_ext(j.get<std::string>());
  throw SchemaError("expected an integer, a \"p/q\" string, or \"inf\"");
}

PosetPtr poset_from_json(const Json& j) {
  const char* doc = "poset";
  const Json& elems = field(j, "elements", doc);
  if (!elems.is_array()) throw SchemaError(ctx_msg(doc, "\"elements\" must be an array"));
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const Json& e : elems) {
    std::string s = str_from(e, doc);
    if (s.empty()) throw SchemaError(ctx_msg(doc, "empty element label"));
    if (s.find('|') != std::string::npos)
      throw SchemaError(ctx_msg(doc, "element labels must not contain '|'"));
    if (!seen.insert(s).second) throw SchemaError(ctx_msg(doc, "duplicate element \"" + s + "\""));
    labels.push_back(std::move(s));
  }
  std::vector<std::pair<std::string, std::string>> rels;
  if (const Json* r = field_opt(j, "relations")) {
    if (!r->is_array()) throw SchemaError(ctx_msg(doc, "\"relations\" must be an array"));
    for (const Json& pr : *r) {
      if (!pr.is_array() || pr.size() != 2)
        throw SchemaError(ctx_msg(doc, "each relation is a [lo, hi] pair"));
      std::string lo = str_from(pr[0], doc), hi = str_from(pr[1], doc);
      if (!seen.count(lo)) throw SchemaError(ctx_msg(doc, "unknown element \"" + lo + "\""));
      if (!seen.count(hi)) throw SchemaError(ctx_msg(doc, "unknown element \"" + hi + "\""));
      rels.push_back({std::move(lo), std::move(hi)});
    }
  }
  return FinitePoset::from_relations(std::move(labels), rels);
}

Json poset_to_json(const FinitePoset& P) {
  Json j;
  j["elements"] = P.labels();
  Json rels = Json::array();
  for (const auto& [lo, hi] : P.hasse()) rels.push_back(Json::array({P.label(lo), P.label(hi)}));
  j["relations"] = std::move(rels);
  return j;
}

VectModule module_from_json(const Json& j) {
  const char* doc = "module";
  VectModule M;
  M.poset = poset_from_json(field(j, "poset", doc));
  long long p = 2;
  if (const Json* f = field_opt(j, "field")) p = int_from(*f, doc);
  if (p < 2) throw SchemaError(ctx_msg(doc, "\"field\" must be at least 2"));
  check_prime(static_cast<std::uint32_t>(p));
  M.p = static_cast<std::uint32_t>(p);
  M.dims.assign(M.poset->size(), 0);
  const Json& dims = field(j, "dims", doc);
  if (!dims.is_object()) throw SchemaError(ctx_msg(doc, "\"dims\" must be an object"));
  for (const auto& [key, val] : dims.items()) {
    long long d = int_from(val, doc);
    if (d < 0) throw SchemaError(ctx_msg(doc, "negative dimension"));
    M.dims[label_index(*M.poset, key, doc)] = static_cast<int>(d);
  }
  std::map<std::pair<int, int>, bool> hasse_edges;
  for (const auto& e : M.poset->hasse()) hasse_edges[e] = true;
  if (const Json* maps = field_opt(j, "maps")) {
    if (!maps->is_object()) throw SchemaError(ctx_msg(doc, "\"maps\" must be an object"));
    for (const auto& [key, val] : maps->items()) {
      auto bar = key.find('|');
      if (bar == std::string::npos)
        throw SchemaError(ctx_msg(doc, "map keys look like \"lo|hi\""));
      int lo = label_index(*M.poset, key.substr(0, bar), doc);
      int hi = label_index(*M.poset, key.substr(bar + 1), doc);
      if (!hasse_edges.count({lo, hi}))
        throw SchemaError(ctx_msg(doc, "\"" + key + "\" is not a covering relation"));
      M.edge_maps[{lo, hi}] = matrix_from(val, M.p, M.dims[hi], M.dims[lo], doc);
    }
  }
  for (const auto& [e, unused] : hasse_edges) {
    (void)unused;
    if (!M.edge_maps.count(e))
      M.edge_maps[e] = FFMatrix(M.p, M.dims[e.second], M.dims[e.first]);
  }
  return M;
}

Json module_to_json(const VectModule& M) {
  Json j;
  j["field"] = M.p;
  j["poset"] = poset_to_json(*M.poset);
  Json dims;
  for (int x = 0; x < M.poset->size(); ++x) dims[M.poset->label(x)] = M.dims[x];
  j["dims"] = std::move(dims);
  Json maps = Json::object();
  for (const auto& [e, A] : M.edge_maps)
    if (A.rows > 0 && A.cols > 0) maps[edge_key(*M.poset, e.first, e.second)] = matrix_to(A);
  j["maps"] = std::move(maps);
  return j;
}

SetModule set_module_from_json(const Json& j) {
  const char* doc = "set-module";
  SetModule M;
  M.poset = poset_from_json(field(j, "poset", doc));
  M.sizes.assign(M.poset->size(), 0);
  const Json& sizes = field(j, "sizes", doc);
  if (!sizes.is_object()) throw SchemaError(ctx_msg(doc, "\"sizes\" must be an object"));
  for (const auto& [key, val] : sizes.items()) {
    long long s = int_from(val, doc);
    if (s < 0) throw SchemaError(ctx_msg(doc, "negative set size"));
    M.sizes[label_index(*M.poset, key, doc)] = static_cast<int>(s);
  }
  std::map<std::pair<int, int>, bool> given;
  if (const Json* fns = field_opt(j, "fns")) {
    if (!fns->is_object()) throw SchemaError(ctx_msg(doc, "\"fns\" must be an object"));
    for (const auto& [key, val] : fns->items()) {
      auto bar = key.find('|');
      if (bar == std::string::npos)
        throw SchemaError(ctx_msg(doc, "function keys look like \"lo|hi\""));
      int lo = label_index(*M.poset, key.substr(0, bar), doc);
      int hi = label_index(*M.poset, key.substr(bar + 1), doc);
      if (!val.is_array() || static_cast<int>(val.size()) != M.sizes[lo])
        throw SchemaError(ctx_msg(doc, "\"" + key + "\" needs one value per source element"));
      std::vector<int> fn;
      for (const Json& v : val) {
        long long t = int_from(v, doc);
        if (t < 0 || t >= M.sizes[hi])
          throw SchemaError(ctx_msg(doc, "\"" + key + "\" sends an element out of range"));
        fn.push_back(static_cast<int>(t));
      }
      M.edge_fns[{lo, hi}] = std::move(fn);
      given[{lo, hi}] = true;
    }
  }
  for (const auto& e : M.poset->hasse()) {
    if (given.count(e)) continue;
    if (M.sizes[e.first] > 0)
      throw SchemaError(ctx_msg(doc, "missing function for covering relation " +
                                         edge_key(*M.poset, e.first, e.second)));
    M.edge_fns[e] = {};
  }
  return M;
}

Json set_module_to_json(const SetModule& M) {
  Json j;
  j["poset"] = poset_to_json(*M.poset);
  Json sizes;
  for (int x = 0; x < M.poset->size(); ++x) sizes[M.poset->label(x)] = M.sizes[x];
  j["sizes"] = std::move(sizes);
  Json fns = Json::object();
  for (const auto& [e, fn] : M.edge_fns)
    if (!fn.empty()) fns[edge_key(*M.poset, e.first, e.second)] = fn;
  j["fns"] = std::move(fns);
  return j;
}

MonotoneMap map_from_json(const Json& j) {
  const char* doc = "map";
  MonotoneMap f;
  f.source = poset_from_json(field(j, "source", doc));
  f.target = poset_from_json(field(j, "target", doc));
  const Json& table = field(j, "map", doc);
  if (!table.is_object()) throw SchemaError(ctx_msg(doc, "\"map\" must be an object"));
  f.image.assign(f.source->size(), -1);
  for (const auto& [key, val] : table.items()) {
    int p = label_index(*f.source, key, doc);
    f.image[p] = label_index(*f.target, str_from(val, doc), doc);
  }
  for (int p = 0; p < f.source->size(); ++p)
    if (f.image[p] < 0)
      throw SchemaError(ctx_msg(doc, "no image for element \"" + f.source->label(p) + "\""));
  if (!f.is_monotone_valid()) throw ValidationError("map is not monotone");
  return f;
}

Json map_to_json(const MonotoneMap& f) {
  Json j;
  j["source"] = poset_to_json(*f.source);
  j["target"] = poset_to_json(*f.target);
  Json table;
  for (int p = 0; p < f.source->size(); ++p)
    table[f.source->label(p)] = f.target->label(f.image[p]);
  j["map"] = std::move(table);
  return j;
}

WeightedPoset weighted_from_json(const Json& j) {
  const char* doc = "weighted";
  WeightedPoset wP;
  wP.poset = poset_from_json(field(j, "poset", doc));
  const int n = wP.poset->size();
  const Json& w = field(j, "weights", doc);
  if (!w.is_array() || static_cast<int>(w.size()) != n)
    throw SchemaError(ctx_msg(doc, "\"weights\" must have one row per element"));
  wP.w.assign(n, std::vector<ExtRat>(n));
  for (int p = 0; p < n; ++p) {
    const Json& row = w[p];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError(ctx_msg(doc, "weight row has the wrong length"));
    for (int q = 0; q < n; ++q) wP.w[p][q] = ext_from_json(row[q]);
  }
  return wP;
}

Json weighted_to_json(const WeightedPoset& wP) {
  Json j;
  j["poset"] = poset_to_json(*wP.poset);
  Json rows = Json::array();
  for (const auto& row : wP.w) {
    Json r = Json::array();
    for (const ExtRat& e : row) r.push_back(format_ext(e));
    rows.push_back(std::move(r));
  }
  j["weights"] = std::move(rows);
  return j;
}

TranslationFamily translation_from_json(const Json& j, PosetPtr fallback) {
  const char* doc = "translation";
  TranslationFamily T;
  if (const Json* p = field_opt(j, "poset"))
    T.poset = poset_from_json(*p);
  else if (fallback)
    T.poset = fallback;
  else
    throw SchemaError(ctx_msg(doc, "document carries no poset and none was supplied"));
  const int n = T.poset->size();

  const Json& ladder = field(j, "ladder", doc);
  if (!ladder.is_array() || ladder.empty())
    throw SchemaError(ctx_msg(doc, "\"ladder\" must be a non-empty array"));
  for (const Json& v : ladder) T.ladder.push_back(rat_from_json(v));

  const Json& maps = field(j, "maps", doc);
  if (!maps.is_object()) throw SchemaError(ctx_msg(doc, "\"maps\" must be an object"));
  std::map<std::string, const Json*> canon;
  for (const auto& [key, val] : maps.items()) {
    std::string c = format_rat(parse_rat(key));
    if (!canon.insert({c, &val}).second)
      throw SchemaError(ctx_msg(doc, "two map keys name the ladder value " + c));
  }
  for (const Rat& eps : T.ladder) {
    auto it = canon.find(format_rat(eps));
    if (it == canon.end())
      throw SchemaError(ctx_msg(doc, "missing map for ladder value " + format_rat(eps)));
    const Json& row = *it->second;
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError(ctx_msg(doc, "each map needs one image index per element"));
    std::vector<int> m;
    for (const Json& v : row) {
      long long x = int_from(v, doc);
      if (x < 0 || x >= n) throw SchemaError(ctx_msg(doc, "image index out of range"));
      m.push_back(static_cast<int>(x));
    }
    T.maps.push_back(std::move(m));
  }
  return T;
}

Json translation_to_json(const TranslationFamily& T) {
  Json j;
  j["poset"] = poset_to_json(*T.poset);
  Json ladder = Json::array();
  Json maps;
  for (std::size_t i = 0; i < T.ladder.size(); ++i) {
    ladder.push_back(format_rat(T.ladder[i]));
    maps[format_rat(T.ladder[i])] = T.maps[i];
  }
  j["ladder"] = std::move(ladder);
  j["maps"] = std::move(maps);
  return j;
}

GridComplex grid_from_json(const Json& j) {
  const char* doc = "grid";
  long long n = int_from(field(j, "n", doc), doc);
  Rat delta = rat_from_json(field(j, "delta", doc));
  const Json& w = field(j, "window", doc);
  if (!w.is_array() || static_cast<long long>(w.size()) != n)
    throw SchemaError(ctx_msg(doc, "\"window\" must have one [lo, hi] pair per axis"));
  std::vector<std::pair<int, int>> window;
  for (const Json& pr : w) {
    if (!pr.is_array() || pr.size() != 2)
      throw SchemaError(ctx_msg(doc, "window ranges are [lo, hi] pairs"));
    window.push_back({static_cast<int>(int_from(pr[0], doc)),
                      static_cast<int>(int_from(pr[1], doc))});
  }
  return build_grid(static_cast<int>(n), delta, window);
}

Json grid_to_json(const GridComplex& G) {
  Json j;
  j["n"] = G.n;
  j["delta"] = format_rat(G.delta);
  Json w = Json::array();
  for (const auto& [lo, hi] : G.window) w.push_back(Json::array({lo, hi}));
  j["window"] = std::move(w);
  return j;
}

GridOpen grid_open_from_json(const GridComplex& G, const Json& j) {
  const char* doc = "grid-open";
  if (!j.is_array()) throw SchemaError(ctx_msg(doc, "expected an array of cell coordinates"));
  GridOpen U(G.cells->size());
  for (const Json& cj : j) {
    if (!cj.is_array() || static_cast<int>(cj.size()) != G.n)
      throw SchemaError(ctx_msg(doc, "each cell is an array of n doubled coordinates"));
    std::vector<int> c;
    for (const Json& v : cj) c.push_back(static_cast<int>(int_from(v, doc)));
    int s = G.cell_index(c);
    if (s < 0) throw ValidationError("grid-open cell lies outside the window");
    U.set(s);
  }
  return U;
}

Json grid_open_to_json(const GridComplex& G, const GridOpen& U) {
  Json j = Json::array();
  for (auto s = U.find_first(); s != Bitset::npos; s = U.find_next(s))
    j.push_back(G.coords[s]);
  return j;
}

RectOpen rect_from_json(const Json& j) {
  const char* doc = "rect-open";
  RectOpen V;
  const Json& boxes = field(j, "boxes", doc);
  if (!boxes.is_array()) throw SchemaError(ctx_msg(doc, "\"boxes\" must be an array"));
  int n = -1;
  if (const Json* nj = field_opt(j, "n")) n = static_cast<int>(int_from(*nj, doc));
  for (const Json& bj : boxes) {
    if (!bj.is_array() || bj.empty())
      throw SchemaError(ctx_msg(doc, "each box is a non-empty array of [lo, hi] sides"));
    Box b;
    for (const Json& side : bj) {
      if (!side.is_array() || side.size() != 2)
        throw SchemaError(ctx_msg(doc, "box sides are [lo, hi] pairs"));
      b.sides.push_back({rat_from_json(side[0]), rat_from_json(side[1])});
    }
    if (n < 0) n = static_cast<int>(b.sides.size());
    if (static_cast<int>(b.sides.size()) != n)
      throw SchemaError(ctx_msg(doc, "boxes have inconsistent dimensions"));
    V.boxes.push_back(std::move(b));
  }
  if (n < 0) throw SchemaError(ctx_msg(doc, "no boxes and no \"n\": dimension unknown"));
  V.n = n;
  return V;
}

Json rect_to_json(const RectOpen& V) {
  Json j;
  j["n"] = V.n;
  Json boxes = Json::array();
  for (const Box& b : V.boxes) {
    Json bj = Json::array();
    for (const auto& [lo, hi] : b.sides)
      bj.push_back(Json::array({format_rat(lo), format_rat(hi)}));
    boxes.push_back(std::move(bj));
  }
  j["boxes"] = std::move(boxes);
  return j;
}

ReebGraph reeb_from_json(const Json& j) {
  const char* doc = "reeb";
  ReebGraph R;
  const Json& verts = field(j, "vertices", doc);
  if (!verts.is_array()) throw SchemaError(ctx_msg(doc, "\"vertices\" must be an array"));
  for (const Json& vj : verts) {
    R.ids.push_back(str_from(field(vj, "id", doc), doc));
    R.values.push_back(rat_from_json(field(vj, "value", doc)));
  }
  if (const Json* edges = field_opt(j, "edges")) {
    if (!edges->is_array()) throw SchemaError(ctx_msg(doc, "\"edges\" must be an array"));
    for (const Json& ej : *edges) {
      if (!ej.is_array() || ej.size() != 2)
        throw SchemaError(ctx_msg(doc, "each edge is an [id, id] pair"));
      int u = R.index_of(str_from(ej[0], doc));
      int w = R.index_of(str_from(ej[1], doc));
      if (u < 0 || w < 0) throw SchemaError(ctx_msg(doc, "edge endpoint is not a vertex id"));
      R.edges.push_back({u, w});
    }
  }
  return R;
}

Json reeb_to_json(const ReebGraph& R) {
  Json j;
  Json verts = Json::array();
  for (std::size_t v = 0; v < R.ids.size(); ++v) {
    Json vj;
    vj["id"] = R.ids[v];
    vj["value"] = format_rat(R.values[v]);
    verts.push_back(std::move(vj));
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (const auto& [u, w] : R.edges) edges.push_back(Json::array({R.ids[u], R.ids[w]}));
  j["edges"] = std::move(edges);
  return j;
}

Json module_map_to_json(const ModuleMap& f) {
  Json j;
  const FinitePoset& P = *f.source->poset;
  for (int x = 0; x < P.size(); ++x) j[P.label(x)] = matrix_to(f.comps[x]);
  return j;
}

Json set_module_map_to_json(const SetModuleMap& f) {
  Json j;
  const FinitePoset& P = *f.source->poset;
  for (int x = 0; x < P.size(); ++x) j[P.label(x)] = f.comps[x];
  return j;
}

std::vector<int> match_poset(PosetPtr want, PosetPtr doc) {
  if (want->size() != doc->size())
    throw ValidationError("posets differ: different element counts");
  std::vector<int> m(want->size());
  for (int i = 0; i < want->size(); ++i) {
    try {
      m[i] = doc->index_of(want->label(i));
    } catch (const UnknownLabel&) {
      throw ValidationError("posets differ: no element \"" + want->label(i) + "\"");
    }
  }
  for (int i = 0; i < want->size(); ++i)
    for (int k = 0; k < want->size(); ++k)
      if (want->leq(i, k) != doc->leq(m[i], m[k]))
        throw ValidationError("posets agree on labels but differ in order");
  return m;
}

VectModule module_onto(const VectModule& M, PosetPtr want) {
  if (M.poset == want) return M;
  std::vector<int> m = match_poset(want, M.poset);
  VectModule out;
  out.poset = want;
  out.p = M.p;
  out.dims.resize(want->size());
  for (int i = 0; i < want->size(); ++i) out.dims[i] = M.dims[m[i]];
  for (const auto& [lo, hi] : want->hasse()) out.edge_maps[{lo, hi}] = M.map_on(m[lo], m[hi]);
  return out;
}

SetModule set_module_onto(const SetModule& M, PosetPtr want) {
  if (M.poset == want) return M;
  std::vector<int> m = match_poset(want, M.poset);
  SetModule out;
  out.poset = want;
  out.sizes.resize(want->size());
  for (int i = 0; i < want->size(); ++i) out.sizes[i] = M.sizes[m[i]];
  for (const auto& [lo, hi] : want->hasse()) out.edge_fns[{lo, hi}] = M.fn_on(m[lo], m[hi]);
  return out;
}

TranslationFamily translation_onto(const TranslationFamily& T, PosetPtr want) {
  if (T.poset == want) return T;
  std::vector<int> m = match_poset(want, T.poset);
  std::vector<int> inv(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = static_cast<int>(i);
  TranslationFamily out;
  out.poset = want;
  out.ladder = T.ladder;
  for (const auto& row : T.maps) {
    std::vector<int> r(want->size());
    for (int i = 0; i < want->size(); ++i) r[i] = inv[row[m[i]]];
    out.maps.push_back(std::move(r));
  }
  return out;
}

WeightedPoset weighted_onto(const WeightedPoset& wP, PosetPtr want) {
  if (wP.poset == want) return wP;
  std::vector<int> m = match_poset(want, wP.poset);
  WeightedPoset out;
  out.poset = want;
  out.w.assign(want->size(), std::vector<ExtRat>(want->size()));
  for (int i = 0; i < want->size(); ++i)
    for (int k = 0; k < want->size(); ++k) out.w[i][k] = wP.w[m[i]][m[k]];
  return out;
}

namespace {

Json make_schema(const char* name, const char* description, Json example) {
  Json j;
  j["name"] = name;
  j["description"] = description;
  j["example"] = std::move(example);
  return j;
}

Json schema_for(const std::string& name) {
  if (name == "poset")
    return make_schema("poset",
                       "Finite poset: \"elements\" lists labels (no '|'), \"relations\" lists "
                       "[lo, hi] pairs whose reflexive-transitive closure is the order.",
                       Json{{"elements", {"b", "a", "c"}},
                            {"relations", {{"b", "a"}, {"b", "c"}}}});
  if (name == "module")
    return make_schema(
        "module",
        "Functor to F_p vector spaces: \"dims\" by element (missing = 0), \"maps\" by covering "
        "relation \"lo|hi\" as row-major matrices, target rows x source cols (missing = zero).",
        Json{{"poset", {{"elements", {"b", "a"}}, {"relations", {{"b", "a"}}}}},
             {"field", 2},
             {"dims", {{"b", 1}, {"a", 1}}},
             {"maps", {{"b|a", {{1}}}}}});
  if (name == "set-module")
    return make_schema(
        "set-module",
        "Functor to finite sets: \"sizes\" by element, \"fns\" by covering relation \"lo|hi\" as "
        "value tables (required when the source set is non-empty).",
        Json{{"poset", {{"elements", {"b", "a"}}, {"relations", {{"b", "a"}}}}},
             {"sizes", {{"b", 2}, {"a", 1}}},
             {"fns", {{"b|a", {0, 0}}}}});
  if (name == "map")
    return make_schema("map",
                       "Monotone map: \"source\" and \"target\" posets plus \"map\" from every "
                       "source label to a target label.",
                       Json{{"source", {{"elements", {"x"}}, {"relations", Json::array()}}},
                            {"target", {{"elements", {"u", "v"}}, {"relations", {{"u", "v"}}}}},
                            {"map", {{"x", "u"}}}});
  if (name == "weighted")
    return make_schema(
        "weighted",
        "Weighted poset: \"weights\"[p][q] is the cost of reaching q from p as \"p/q\", an "
        "integer, or \"inf\"; zero exactly on the down relation; triangle inequality required.",
        Json{{"poset", {{"elements", {"b", "a"}}, {"relations", {{"b", "a"}}}}},
             {"weights", {{"0/1", "1/1"}, {"0/1", "0/1"}}}});
  if (name == "translation")
    return make_schema(
        "translation",
        "Translation family: sorted \"ladder\" of rationals starting at 0 and \"maps\" keyed by "
        "ladder value, each an array of image indices (monotone, inflationary, superlinear). "
        "\"poset\" may be omitted when another document supplies it.",
        Json{{"poset", {{"elements", {"x", "y"}}, {"relations", {{"x", "y"}}}}},
             {"ladder", {"0/1", "1/1"}},
             {"maps", {{"0/1", {0, 1}}, {"1/1", {1, 1}}}}});
  if (name == "grid")
    return make_schema(
        "grid",
        "Cubical grid: dimension \"n\" (1-3), spacing \"delta\", and per-axis inclusive ranges of "
        "doubled coordinates (even 2k = vertex k*delta, odd 2k+1 = open interval).",
        Json{{"n", 2}, {"delta", "1"}, {"window", {{0, 6}, {0, 6}}}});
  if (name == "grid-open")
    return make_schema("grid-open",
                       "Array of cells by doubled coordinates; must be closed under taking "
                       "cofaces (a union of open stars).",
                       Json::array({{1, 1}, {0, 1}, {1, 0}, {2, 1}, {1, 2}}));
  if (name == "rect-open")
    return make_schema(
        "rect-open",
        "Finite union of open boxes: \"boxes\" lists per-axis open [lo, hi] sides as rationals; "
        "\"n\" pins the dimension when the list is empty.",
        Json{{"n", 2}, {"boxes", {{{"1/2", "3/2"}, {"0/1", "2/1"}}}}});
  if (name == "reeb")
    return make_schema(
        "reeb",
        "Reeb graph: vertices with rational heights, undirected edges between distinct heights; "
        "parallel edges allowed.",
        Json{{"vertices", {{{"id", "bot"}, {"value", "0/1"}}, {{"id", "top"}, {"value", "4/1"}}}},
             {"edges", {{"bot", "top"}, {"bot", "top"}}}});
  throw SchemaError("unknown schema \"" + name + "\"; try one of: poset, module, set-module, "
                    "map, weighted, translation, grid, grid-open, rect-open, reeb");
}

}  // namespace

std::vector<std::string> schema_names() {
  return {"poset",       "module", "set-module", "map",  "weighted",
          "translation", "grid",   "grid-open",  "rect-open", "reeb"};
}

std::string schema_text(const std::string& name) { return dump_canonical(schema_for(name)); }

}  // namespace pil
