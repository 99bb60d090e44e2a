#pragma once

#include <cstdint>

#include "pil/module.hpp"

namespace pil {

// Precomposition with f: values and maps borrowed from the target module.
VectModule pullback(const MonotoneMap& f, const VectModule& M);
SetModule set_pullback(const MonotoneMap& f, const SetModule& M);

// Left Kan extension along f: value at q is the colimit of M over
// sublevel(f, q); internal maps are solved through the colimit presentation
// (unique by universality). The per-element colimits are kept because units,
// counits and relative shifts are built out of their legs.
struct VectPushforward {
  VectModule module;                // over target(f)
  std::vector<VectColimit> colims;  // indexed by target element
};
VectPushforward pushforward(const MonotoneMap& f, const VectModule& M, int threads = 1);

// Right Kan extension: value at q is the limit over superlevel(f, q).
struct VectOpenPushforward {
  VectModule module;
  std::vector<VectLimit> lims;
};
VectOpenPushforward pushforward_open(const MonotoneMap& f, const VectModule& M);

struct SetPushforward {
  SetModule module;
  std::vector<SetColimit> colims;
};
SetPushforward set_pushforward(const MonotoneMap& f, const SetModule& M);

// Functorial action of f_* on a map ψ : M → N over source(f): component at q
// factors the N-side cocone composed with ψ through M's colimit at q.
ModuleMap pushforward_map(const MonotoneMap& f, const ModuleMap& psi,
                          const VectPushforward& pushSrc, const VectPushforward& pushDst);
SetModuleMap set_pushforward_map(const MonotoneMap& f, const SetModuleMap& psi,
                                 const SetPushforward& pushSrc, const SetPushforward& pushDst);

// Adjunction structure maps for f_* ⊣ f* and f* ⊣ f†.
ModuleMap unit(const MonotoneMap& f, VectModulePtr M);           // M → f*f_*M
ModuleMap counit(const MonotoneMap& f, VectModulePtr N);         // f_*f*N → N
ModuleMap unit_dagger(const MonotoneMap& f, VectModulePtr N);    // N → f†f*N
ModuleMap counit_dagger(const MonotoneMap& f, VectModulePtr M);  // f*f†M → M

// Resample-and-extend along f (f maps the sample poset into the ambient one;
// the input module lives on the ambient poset).
struct Pixelization {
  VectModulePtr module;  // lower: f_*f*M; upper: f†f*M
  ModuleMap comparison;  // lower: module → M (counit); upper: M → module (unit)
};
Pixelization pixelize_lower(const MonotoneMap& f, VectModulePtr M);
Pixelization pixelize_upper(const MonotoneMap& f, VectModulePtr M);

struct SetPixelization {
  SetModulePtr module;      // f_*f*M
  SetModuleMap comparison;  // module → M
};
SetPixelization set_pixelize_lower(const MonotoneMap& f, SetModulePtr M);

// Samples down sets S and basic covers of S (principal covers, Čech
// completions of random families, and rejection-tested random antichains) and
// verifies that the canonical arrow colim over the cover → (ι_*M)(S) is an
// isomorphism.
struct CosheafReport {
  bool ok = true;
  int samples = 0;
  std::string message = "ok";
};
CosheafReport check_basic_cosheaf(const VectModule& M, int sample_count, std::uint64_t seed,
                                  std::size_t lattice_cap = 4096);

}  // namespace pil
