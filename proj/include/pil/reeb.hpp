#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pil/interleave.hpp"
#include "pil/kan.hpp"

namespace pil {

// Finite multigraph with a rational height per vertex. Edges are monotone
// arcs between their endpoints, so the two endpoint heights must differ;
// parallel edges are allowed (that is what makes loops).
struct ReebGraph {
  std::vector<std::string> ids;
  std::vector<Rat> values;
  std::vector<std::pair<int, int>> edges;

  int index_of(const std::string& id) const;  // -1 when absent
};
ValidationReport validate_reeb(const ReebGraph& R);
void require_valid_reeb(const ReebGraph& R);

// All open intervals (lo + k1·s, lo + k2·s) inside the window, ordered by
// inclusion. (hi - lo) / s must be a positive integer.
struct IntervalFamily {
  PosetPtr poset;
  std::vector<std::pair<Rat, Rat>> intervals;  // parallel to poset elements
  Rat lo{0}, hi{0}, spacing{1};

  int index_of(const Rat& a, const Rat& b) const;  // -1 when absent
};
IntervalFamily interval_family(const Rat& lo, const Rat& hi, const Rat& spacing,
                               std::size_t cap = 4096);

// Embed a coarse family into a refinement of the same window (the coarse
// spacing must be a multiple of the fine one). Full and injective.
MonotoneMap interval_inclusion(const IntervalFamily& coarse, const IntervalFamily& fine);

// I ↦ connected components of the part of the graph over I: vertices whose
// height lies strictly inside I, arcs whose open height span meets I, an arc
// glued to an endpoint exactly when that endpoint is inside I. Inclusions
// induce the component maps.
SetModule reeb_cosheaf(const ReebGraph& R, const IntervalFamily& F);

// Clamped thickening T_{k·s}(a,b) = (a - k·s, b + k·s) ∩ (lo, hi), with
// ladder {0, s, …, hi - lo}; the top rung saturates to the whole window.
// Superlinearity holds exactly (validated).
TranslationFamily interval_translation(const IntervalFamily& F);

// Sample a Reeb graph on the δ-grid: window from the vertex heights padded by
// one δ, cosheaf over the δ/m refinement, restriction to the δ-grid family,
// and the induced pixelization back over the refinement.
struct ReebPixelization {
  Rat delta{1};
  int refine = 2;
  IntervalFamily fine, coarse;
  MonotoneMap incl;         // coarse ↪ fine
  SetModulePtr module;      // cosheaf over the refinement
  SetModulePtr restricted;  // its restriction to the δ-grid
  SetModulePtr pixelized;   // pushforward of the restriction, over the refinement
  SetModuleMap comparison;  // pixelized → module
};
ReebPixelization pixelize_reeb(const ReebGraph& R, const Rat& delta, int refine_m = 2);

// Read a graph back out of the pixelized module: one vertex per component
// over each width-2δ slice I_k = (lo + kδ, lo + (k+2)δ) at height lo + (k+1)δ,
// and an edge between consecutive slices whenever a component of the width-δ
// overlap maps to both. Loops shorter than δ collapse; loops taller than 2δ
// keep their cycle.
struct PixelReebGraph {
  ReebGraph graph;
  int components = 0;
  int cycle_rank = 0;  // edges - vertices + components
};
PixelReebGraph slice_2delta(const ReebPixelization& pix);

// Weak interleaving distance of the two δ-grid cosheaves over a common
// window, under the clamped interval thickening.
SetDistanceResult reeb_distance(const ReebGraph& R1, const ReebGraph& R2, const Rat& delta,
                                std::size_t cap = 1u << 20);

// Graphviz rendering (undirected; vertex labels carry the heights).
std::string reeb_dot(const ReebGraph& R);

}  // namespace pil
