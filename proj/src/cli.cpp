#include "pil/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <memory>
#include <ostream>
#include <sstream>

#include "pil/json_io.hpp"

namespace pil {

namespace {

const char* error_name(const Error& e) {
  if (dynamic_cast<const CycleError*>(&e)) return "CycleError";
  if (dynamic_cast<const UnknownLabel*>(&e)) return "UnknownLabel";
  if (dynamic_cast<const ShapeMismatch*>(&e)) return "ShapeMismatch";
  if (dynamic_cast<const ModulusMismatch*>(&e)) return "ModulusMismatch";
  if (dynamic_cast<const NotPrime*>(&e)) return "NotPrime";
  if (dynamic_cast<const NotALattice*>(&e)) return "NotALattice";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const ThickeningAxiomError*>(&e)) return "ThickeningAxiomError";
  if (dynamic_cast<const BoundaryError*>(&e)) return "BoundaryError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const ExplosionError*>(&e)) return "ExplosionError";
  if (dynamic_cast<const SearchCapExceeded*>(&e)) return "SearchCapExceeded";
  if (dynamic_cast<const CapError*>(&e)) return "CapError";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const IOError*>(&e)) return "IOError";
  return "Error";
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const CapError*>(&e)) return 2;
  if (dynamic_cast<const IOError*>(&e)) return 3;
  return 1;
}

std::string detect_type(const Json& j) {
  if (j.is_object()) {
    if (j.contains("vertices")) return "reeb";
    if (j.contains("boxes")) return "rect-open";
    if (j.contains("window")) return "grid";
    if (j.contains("ladder")) return "translation";
    if (j.contains("weights")) return "weighted";
    if (j.contains("map")) return "map";
    if (j.contains("sizes")) return "set-module";
    if (j.contains("dims")) return "module";
    if (j.contains("elements")) return "poset";
  }
  throw SchemaError("cannot infer the document type; pass --type");
}

void check_document(const Json& j, const std::string& type) {
  if (type == "poset")
    poset_from_json(j);
  else if (type == "module")
    require_valid(module_from_json(j));
  else if (type == "set-module")
    require_valid(set_module_from_json(j));
  else if (type == "map")
    map_from_json(j);
  else if (type == "weighted")
    require_valid_weighted(weighted_from_json(j));
  else if (type == "translation")
    require_valid_translation(translation_from_json(j));
  else if (type == "grid")
    grid_from_json(j);
  else if (type == "rect-open")
    rect_from_json(j);
  else if (type == "reeb")
    require_valid_reeb(reeb_from_json(j));
  else
    throw SchemaError("unknown document type \"" + type + "\"");
}

VectModule load_module(const std::string& path) {
  VectModule M = module_from_json(load_json(path));
  require_valid(M);
  return M;
}

// Re-aim a parsed map so its source (or target) IS the given poset object.
MonotoneMap map_with_source(const MonotoneMap& f, PosetPtr src) {
  std::vector<int> m = match_poset(src, f.source);
  MonotoneMap g;
  g.source = src;
  g.target = f.target;
  g.image.resize(src->size());
  for (int i = 0; i < src->size(); ++i) g.image[i] = f.image[m[i]];
  return g;
}

MonotoneMap map_with_target(const MonotoneMap& f, PosetPtr tgt) {
  std::vector<int> m = match_poset(tgt, f.target);
  std::vector<int> inv(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = static_cast<int>(i);
  MonotoneMap g;
  g.source = f.source;
  g.target = tgt;
  g.image.resize(f.source->size());
  for (int p = 0; p < f.source->size(); ++p) g.image[p] = inv[f.image[p]];
  return g;
}

std::string distance_string(const DistanceResult::Kind kind, const Rat& value) {
  switch (kind) {
    case DistanceResult::Kind::Finite:
      return format_rat(value);
    case DistanceResult::Kind::Infinite:
      return "inf";
    default:
      return "indeterminate";
  }
}

std::vector<int> parse_coords(const std::string& s, int n) {
  std::vector<int> c;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw SchemaError("bad cell coordinates \"" + s + "\"; expected comma-separated integers");
    }
  }
  if (static_cast<int>(c.size()) != n)
    throw SchemaError("cell \"" + s + "\" needs exactly one coordinate per grid axis");
  return c;
}

// Shared window convention: vertex heights padded by one delta on both sides.
std::pair<Rat, Rat> padded_window(const std::vector<Rat>& values, const Rat& delta) {
  Rat vmin = values.front(), vmax = values.front();
  for (const Rat& v : values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  return {(rat_floor_div(vmin, delta) - 1) * delta, (-rat_floor_div(-vmax, delta) + 1) * delta};
}

struct Options {
  std::string file, file2, map_file, translation_file, weights_file;
  std::string mode, epsilon, open_file, rect_file, from_cell, to_cell, type = "auto";
  std::string delta = "1";
  long long cap = 1u << 20;
  int threads = 1;
  int refine = 2;
  bool open_supports = false;
  bool dot = false;
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"interleavings, shifts, and pixelizations over finite posets"};
  app.require_subcommand(0, 1);
  Options o;
  std::string schema_name;
  app.add_option("--schema", schema_name, "print the JSON schema of a document type and exit");

  CLI::App* check = app.add_subcommand("check", "validate a JSON document");
  check->add_option("file", o.file, "document to validate")->required();
  check->add_option("--type", o.type, "document type (default: inferred)");

  CLI::App* colim = app.add_subcommand("colimit", "colimit of a module");
  colim->add_option("file", o.file)->required();

  CLI::App* limi = app.add_subcommand("limit", "limit of a module");
  limi->add_option("file", o.file)->required();

  CLI::App* pullb = app.add_subcommand("pullback", "restrict a module along a map");
  pullb->add_option("file", o.file, "module over the map's target")->required();
  pullb->add_option("--map", o.map_file)->required();

  CLI::App* pushf = app.add_subcommand("pushforward", "extend a module along a map");
  pushf->add_option("file", o.file, "module over the map's source")->required();
  pushf->add_option("--map", o.map_file)->required();
  pushf->add_flag("--open-supports", o.open_supports,
                  "use the open-supports (limit-based) extension");
  pushf->add_option("--threads", o.threads);

  CLI::App* pix = app.add_subcommand("pixelize", "resample a module through a sample map");
  pix->add_option("file", o.file, "module over the map's target")->required();
  pix->add_option("--map", o.map_file)->required();
  pix->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"lower", "upper"}));

  CLI::App* shift = app.add_subcommand("shift", "shift a module by epsilon");
  shift->add_option("file", o.file)->required();
  shift->add_option("--epsilon", o.epsilon)->required();
  shift->add_option("--weights", o.weights_file, "weighted poset over the module's poset");
  shift->add_option("--translation", o.translation_file);
  shift->add_option("--relative", o.map_file, "shift relative to this map's extension");
  shift->add_option("--threads", o.threads);

  CLI::App* dist = app.add_subcommand("distance", "interleaving distance of two modules");
  dist->add_option("file", o.file)->required();
  dist->add_option("file2", o.file2)->required();
  dist->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"weak", "standard"}));
  dist->add_option("--translation", o.translation_file)->required();
  dist->add_option("--relative", o.map_file);
  dist->add_option("--cap", o.cap);
  dist->add_option("--threads", o.threads);

  CLI::App* grid = app.add_subcommand("grid", "cubical grid tools");
  grid->require_subcommand(1);
  CLI::App* gbuild = grid->add_subcommand("build", "enumerate the cells of a window");
  gbuild->add_option("file", o.file, "grid document")->required();
  CLI::App* gweight = grid->add_subcommand("weight", "zig-zag weight between two cells");
  gweight->add_option("file", o.file)->required();
  gweight->add_option("--from", o.from_cell)->required();
  gweight->add_option("--to", o.to_cell)->required();
  CLI::App* gtflat = grid->add_subcommand("tflat", "thicken a grid open");
  gtflat->add_option("file", o.file)->required();
  gtflat->add_option("--open", o.open_file)->required();
  gtflat->add_option("--epsilon", o.epsilon)->required();
  CLI::App* gwitness = grid->add_subcommand("approx-witness", "cell cover of a rectangular open");
  gwitness->add_option("file", o.file)->required();
  gwitness->add_option("--rect", o.rect_file)->required();

  CLI::App* reeb = app.add_subcommand("reeb", "Reeb graph sampling tools");
  reeb->require_subcommand(1);
  CLI::App* rcosheaf = reeb->add_subcommand("cosheaf", "components over grid intervals");
  rcosheaf->add_option("file", o.file)->required();
  rcosheaf->add_option("--delta", o.delta)->required();
  CLI::App* rpix = reeb->add_subcommand("pixelize", "pixelize through the grid intervals");
  rpix->add_option("file", o.file)->required();
  rpix->add_option("--delta", o.delta)->required();
  rpix->add_option("--refine", o.refine);
  CLI::App* rslice = reeb->add_subcommand("slice", "pixelated Reeb graph via 2-delta slices");
  rslice->add_option("file", o.file)->required();
  rslice->add_option("--delta", o.delta)->required();
  rslice->add_option("--refine", o.refine);
  rslice->add_flag("--dot", o.dot, "emit Graphviz instead of JSON");
  CLI::App* rdist = reeb->add_subcommand("distance", "weak distance of two sampled graphs");
  rdist->add_option("file", o.file)->required();
  rdist->add_option("file2", o.file2)->required();
  rdist->add_option("--delta", o.delta)->required();
  rdist->add_option("--cap", o.cap);

  CLI::App* report = app.add_subcommand("report", "derived reports");
  report->require_subcommand(1);
  CLI::App* distort = report->add_subcommand(
      "distortion", "compare distances upstairs and downstairs of an extension");
  distort->add_option("file", o.file)->required();
  distort->add_option("file2", o.file2)->required();
  distort->add_option("--map", o.map_file)->required();
  distort->add_option("--translation", o.translation_file)->required();
  distort->add_option("--cap", o.cap);
  distort->add_option("--threads", o.threads);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (!schema_name.empty()) {
      out << schema_text(schema_name);
      return 0;
    }
    if (app.get_subcommands().empty()) {
      out << app.help();
      return 3;
    }

    if (check->parsed()) {
      Json j = load_json(o.file);
      std::string type = o.type == "auto" ? detect_type(j) : o.type;
      check_document(j, type);
      Json rep;
      rep["ok"] = true;
      rep["type"] = type;
      rep["message"] = "ok";
      out << dump_canonical(rep);
      return 0;
    }

    if (colim->parsed() || limi->parsed()) {
      VectModule M = load_module(o.file);
      Json j;
      j["field"] = M.p;
      if (colim->parsed()) {
        VectColimit C = colimit(M);
        j["dim"] = C.dim;
        Json legs;
        for (int x : C.elems) {
          Json rows = Json::array();
          FFMatrix L = C.leg_of(x);
          for (int r = 0; r < L.rows; ++r) {
            Json row = Json::array();
            for (int c = 0; c < L.cols; ++c) row.push_back(L.at(r, c));
            rows.push_back(std::move(row));
          }
          legs[M.poset->label(x)] = std::move(rows);
        }
        j["legs"] = std::move(legs);
      } else {
        VectLimit L = limit(M);
        j["dim"] = L.dim;
        Json projs;
        for (int x : L.elems) {
          FFMatrix P = L.projection_of(x);
          Json rows = Json::array();
          for (int r = 0; r < P.rows; ++r) {
            Json row = Json::array();
            for (int c = 0; c < P.cols; ++c) row.push_back(P.at(r, c));
            rows.push_back(std::move(row));
          }
          projs[M.poset->label(x)] = std::move(rows);
        }
        j["projections"] = std::move(projs);
      }
      out << dump_canonical(j);
      return 0;
    }

    if (pullb->parsed()) {
      VectModule M = load_module(o.file);
      MonotoneMap f = map_with_target(map_from_json(load_json(o.map_file)), M.poset);
      out << dump_canonical(module_to_json(pullback(f, M)));
      return 0;
    }

    if (pushf->parsed()) {
      VectModule M = load_module(o.file);
      MonotoneMap f = map_with_source(map_from_json(load_json(o.map_file)), M.poset);
      VectModule R = o.open_supports ? pushforward_open(f, M).module
                                     : pushforward(f, M, o.threads).module;
      out << dump_canonical(module_to_json(R));
      return 0;
    }

    if (pix->parsed()) {
      auto M = std::make_shared<VectModule>(load_module(o.file));
      MonotoneMap f = map_with_target(map_from_json(load_json(o.map_file)), M->poset);
      Pixelization P = o.mode == "lower" ? pixelize_lower(f, M) : pixelize_upper(f, M);
      Json j;
      j["module"] = module_to_json(*P.module);
      j["comparison"] = module_map_to_json(P.comparison);
      j["direction"] = o.mode == "lower" ? "module_to_input" : "input_to_module";
      out << dump_canonical(j);
      return 0;
    }

    if (shift->parsed()) {
      VectModule M = load_module(o.file);
      Rat eps = parse_rat(o.epsilon);
      const bool haveW = !o.weights_file.empty();
      const bool haveT = !o.translation_file.empty();
      const bool haveF = !o.map_file.empty();
      if (haveW == haveT) {
        err << "usage error: shift needs exactly one of --weights or --translation\n";
        return 3;
      }
      if (haveW) {
        if (haveF) {
          err << "usage error: --relative requires --translation\n";
          return 3;
        }
        WeightedPoset wP = weighted_onto(weighted_from_json(load_json(o.weights_file)), M.poset);
        require_valid_weighted(wP);
        out << dump_canonical(module_to_json(shift_weighted(wP, M, eps)));
        return 0;
      }
      if (haveF) {
        MonotoneMap f = map_with_source(map_from_json(load_json(o.map_file)), M.poset);
        TranslationFamily T =
            translation_onto(translation_from_json(load_json(o.translation_file), f.target),
                             f.target);
        require_valid_translation(T);
        RelativeShiftResult R =
            relative_shift(f, T, std::make_shared<VectModule>(std::move(M)), eps, o.threads);
        out << dump_canonical(module_to_json(*R.module));
        return 0;
      }
      TranslationFamily T = translation_onto(
          translation_from_json(load_json(o.translation_file), M.poset), M.poset);
      require_valid_translation(T);
      MonotoneMap t{T.poset, T.poset, T.map_at(eps)};
      out << dump_canonical(module_to_json(pullback(t, M)));
      return 0;
    }

    if (dist->parsed()) {
      auto M = std::make_shared<VectModule>(load_module(o.file));
      auto N = std::make_shared<VectModule>(
          module_onto(load_module(o.file2), M->poset));
      const bool standard = o.mode == "standard";
      ShiftTheory S = [&] {
        if (o.map_file.empty()) {
          TranslationFamily T = translation_onto(
              translation_from_json(load_json(o.translation_file), M->poset), M->poset);
          require_valid_translation(T);
          return ShiftTheory::intrinsic(T);
        }
        MonotoneMap f = map_with_source(map_from_json(load_json(o.map_file)), M->poset);
        TranslationFamily T = translation_onto(
            translation_from_json(load_json(o.translation_file), f.target), f.target);
        require_valid_translation(T);
        return ShiftTheory::relative(f, T, o.threads);
      }();
      DistanceResult res = interleaving_distance(S, M, N, standard,
                                                 static_cast<std::uint64_t>(o.cap), o.threads);
      Json j;
      j["mode"] = o.mode;
      j["relative"] = !o.map_file.empty();
      j["epsilon"] = distance_string(res.kind, res.value);
      j["monotonicity_violations"] = res.monotonicity_violations;
      if (!res.note.empty()) j["note"] = res.note;
      if (res.cert) {
        Json c;
        c["epsilon"] = format_rat(res.cert->epsilon);
        c["phi"] = module_map_to_json(res.cert->phi);
        c["psi"] = module_map_to_json(res.cert->psi);
        j["certificate"] = std::move(c);
      }
      out << dump_canonical(j);
      return res.kind == DistanceResult::Kind::Indeterminate ? 2 : 0;
    }

    if (grid->parsed()) {
      GridComplex G = grid_from_json(load_json(o.file));
      if (gbuild->parsed()) {
        Json j = grid_to_json(G);
        j["cell_count"] = G.cells->size();
        Json cells = Json::array();
        for (const auto& c : G.coords) cells.push_back(c);
        j["cells"] = std::move(cells);
        Json by_dim;
        for (int s = 0; s < G.cells->size(); ++s) {
          std::string k = std::to_string(G.cell_dim(s));
          by_dim[k] = (by_dim.contains(k) ? by_dim[k].get<int>() : 0) + 1;
        }
        j["by_dimension"] = std::move(by_dim);
        out << dump_canonical(j);
        return 0;
      }
      if (gweight->parsed()) {
        int s = G.cell_index(parse_coords(o.from_cell, G.n));
        int t = G.cell_index(parse_coords(o.to_cell, G.n));
        if (s < 0 || t < 0) throw ValidationError("cell lies outside the window");
        Json j;
        j["from"] = G.coords[s];
        j["to"] = G.coords[t];
        j["weight"] = format_rat(cell_weight(G, s, t));
        out << dump_canonical(j);
        return 0;
      }
      if (gtflat->parsed()) {
        GridOpen U = grid_open_from_json(G, load_json(o.open_file));
        GridOpen W = tflat_grid(G, U, parse_rat(o.epsilon));
        out << dump_canonical(grid_open_to_json(G, W));
        return 0;
      }
      RectOpen V = rect_from_json(load_json(o.rect_file));
      GridOpen U = delta_approx_witness(G, V);
      Json j;
      j["delta"] = format_rat(G.delta);
      j["open"] = grid_open_to_json(G, U);
      j["covers_input"] = rect_contains(realize(G, U), V);
      j["within_delta_thickening"] = rect_contains(metric_thicken(V, G.delta), realize(G, U));
      out << dump_canonical(j);
      return 0;
    }

    if (reeb->parsed()) {
      ReebGraph R = reeb_from_json(load_json(o.file));
      require_valid_reeb(R);
      Rat delta = parse_rat(o.delta);
      if (rcosheaf->parsed()) {
        if (R.ids.empty()) throw ValidationError("graph has no vertices");
        auto [lo, hi] = padded_window(R.values, delta);
        IntervalFamily F = interval_family(lo, hi, delta);
        out << dump_canonical(set_module_to_json(reeb_cosheaf(R, F)));
        return 0;
      }
      if (rpix->parsed()) {
        ReebPixelization p = pixelize_reeb(R, delta, o.refine);
        Json j;
        j["pixelized"] = set_module_to_json(*p.pixelized);
        j["restricted"] = set_module_to_json(*p.restricted);
        j["comparison"] = set_module_map_to_json(p.comparison);
        out << dump_canonical(j);
        return 0;
      }
      if (rslice->parsed()) {
        PixelReebGraph g = slice_2delta(pixelize_reeb(R, delta, o.refine));
        if (o.dot) {
          out << reeb_dot(g.graph);
          return 0;
        }
        Json j;
        j["graph"] = reeb_to_json(g.graph);
        j["components"] = g.components;
        j["cycle_rank"] = g.cycle_rank;
        out << dump_canonical(j);
        return 0;
      }
      ReebGraph R2 = reeb_from_json(load_json(o.file2));
      SetDistanceResult res =
          reeb_distance(R, R2, delta, static_cast<std::size_t>(o.cap));
      Json j;
      j["mode"] = "weak";
      j["epsilon"] = distance_string(res.kind, res.value);
      j["monotonicity_violations"] = res.monotonicity_violations;
      if (res.cert) {
        Json c;
        c["epsilon"] = format_rat(res.cert->epsilon);
        c["phi"] = set_module_map_to_json(res.cert->phi);
        c["psi"] = set_module_map_to_json(res.cert->psi);
        j["certificate"] = std::move(c);
      }
      out << dump_canonical(j);
      return res.kind == DistanceResult::Kind::Indeterminate ? 2 : 0;
    }

    // report distortion
    auto M = std::make_shared<VectModule>(load_module(o.file));
    auto N = std::make_shared<VectModule>(module_onto(load_module(o.file2), M->poset));
    MonotoneMap f = map_with_source(map_from_json(load_json(o.map_file)), M->poset);
    TranslationFamily T = translation_onto(
        translation_from_json(load_json(o.translation_file), f.target), f.target);
    require_valid_translation(T);
    DistortionReport rep =
        distortion_report(f, T, M, N, static_cast<std::uint64_t>(o.cap), o.threads);
    Json j;
    j["upstairs"] = distance_string(rep.upstairs.kind, rep.upstairs.value);
    j["downstairs"] = distance_string(rep.downstairs.kind, rep.downstairs.value);
    j["defect_m"] = distance_string(rep.defect_m.kind, rep.defect_m.value);
    j["defect_n"] = distance_string(rep.defect_n.kind, rep.defect_n.value);
    j["bound_checked"] = rep.bound_checked;
    j["bound_ok"] = rep.bound_ok;
    out << dump_canonical(j);
    return rep.bound_checked ? 0 : 2;
  } catch (const Error& e) {
    err << error_name(e) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace pil
