#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pil/grid.hpp"
#include "pil/reeb.hpp"

namespace pil {

// nlohmann::json keeps object keys sorted, which is exactly the canonical
// form the CLI promises. Rationals travel as "p/q" strings everywhere.
using Json = nlohmann::json;

Json load_json(const std::string& path);  // IOError / SchemaError
Json parse_json(const std::string& text);
std::string dump_canonical(const Json& j);  // sorted keys, 2-space indent, trailing newline

Rat rat_from_json(const Json& j);
ExtRat ext_from_json(const Json& j);

PosetPtr poset_from_json(const Json& j);
Json poset_to_json(const FinitePoset& P);

VectModule module_from_json(const Json& j);  // schema only; validate separately
Json module_to_json(const VectModule& M);

SetModule set_module_from_json(const Json& j);
Json set_module_to_json(const SetModule& M);

MonotoneMap map_from_json(const Json& j);  // checks monotonicity
Json map_to_json(const MonotoneMap& f);

WeightedPoset weighted_from_json(const Json& j);
Json weighted_to_json(const WeightedPoset& wP);

// `fallback` supplies the poset when the document has none.
TranslationFamily translation_from_json(const Json& j, PosetPtr fallback = nullptr);
Json translation_to_json(const TranslationFamily& T);

GridComplex grid_from_json(const Json& j);
Json grid_to_json(const GridComplex& G);

GridOpen grid_open_from_json(const GridComplex& G, const Json& j);
Json grid_open_to_json(const GridComplex& G, const GridOpen& U);

RectOpen rect_from_json(const Json& j);
Json rect_to_json(const RectOpen& V);

ReebGraph reeb_from_json(const Json& j);
Json reeb_to_json(const ReebGraph& R);

Json module_map_to_json(const ModuleMap& f);         // comps keyed by source label
Json set_module_map_to_json(const SetModuleMap& f);

// Documents loaded from different files describe posets independently; these
// match them up by label (orders must agree; ValidationError otherwise) and
// re-express one document over the poset object of another.
// match_poset returns m with m[i] = doc index of want->label(i).
std::vector<int> match_poset(PosetPtr want, PosetPtr doc);
VectModule module_onto(const VectModule& M, PosetPtr want);
SetModule set_module_onto(const SetModule& M, PosetPtr want);
TranslationFamily translation_onto(const TranslationFamily& T, PosetPtr want);
WeightedPoset weighted_onto(const WeightedPoset& wP, PosetPtr want);

// Schema help for the CLI.
std::vector<std::string> schema_names();
std::string schema_text(const std::string& name);  // SchemaError on unknown name

}  // namespace pil
