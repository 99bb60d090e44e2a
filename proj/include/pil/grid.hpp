#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "pil/translate.hpp"

namespace pil {

// Cubical grid of spacing delta inside a rectangular window, encoded in
// doubled integer coordinates: an even coordinate 2k is the vertex k*delta,
// an odd coordinate 2k+1 is the open interval (k*delta, (k+1)*delta). A cell
// is one doubled coordinate per axis; its dimension is the number of odd
// coordinates. The face order puts each cell below all cells having it as a
// face, so vertices are maximal and the principal down set of a cell is its
// open star.
struct GridComplex {
  int n = 1;
  Rat delta{1};
  std::vector<std::pair<int, int>> window;  // inclusive doubled range per axis

  PosetPtr cells;
  std::vector<std::vector<int>> coords;  // coords[cell]

  int cell_index(const std::vector<int>& c) const;  // -1 if outside the window
  int cell_dim(int sigma) const;

 private:
  friend GridComplex build_grid(int, const Rat&, const std::vector<std::pair<int, int>>&,
                                std::size_t);
  std::map<std::vector<int>, int> index_;
};

// n in {1,2,3}; throws ExplosionError past `cap` cells.
GridComplex build_grid(int n, const Rat& delta, const std::vector<std::pair<int, int>>& window,
                       std::size_t cap = 20000);

// Opens of the grid are down-closed cell sets (unions of open stars).
using GridOpen = Bitset;

bool is_grid_open(const GridComplex& G, const GridOpen& U);
void require_grid_open(const GridComplex& G, const GridOpen& U);

GridOpen star_of(const GridComplex& G, int sigma);

// Zig-zag distance from sigma to every cell in units of delta: steps down the
// face order are free, steps up cost one delta (0-1 BFS over comparability).
std::vector<int> weight_steps_from(const GridComplex& G, int sigma);

// w(sigma, tau) = delta * zig-zag steps; 0 exactly when tau ≤ sigma.
Rat cell_weight(const GridComplex& G, int sigma, int tau);

// Full weight matrix as a WeightedPoset over the cell poset. Quadratic in the
// cell count; meant for small windows.
WeightedPoset grid_weighting(const GridComplex& G);

// {tau : w(sigma, tau) ≤ eps}, from the BFS distances. A grid open.
GridOpen star_ball(const GridComplex& G, int sigma, const Rat& eps);

// k rounds of up-closure-then-down-closure; the closure form of thickening.
GridOpen updown_rounds(const GridComplex& G, GridOpen U, int k);

// Thickening of a grid open: union of star balls of its members, equal to
// updown_rounds at floor(eps/delta) rounds. Snaps: only floor(eps/delta)
// matters.
GridOpen tflat_grid(const GridComplex& G, const GridOpen& U, const Rat& eps);

// Materialized translation family on Down(cells): rung k sends a down set U
// to tflat_grid(U, k*delta), with the ladder long enough to saturate the
// window. Validated (identity at zero, monotone, inflationary, superlinear).
// Only feasible for small windows; throws ExplosionError past `cap` opens.
struct GridLatticeFamily {
  DownLattice lattice;
  TranslationFamily family;
};
GridLatticeFamily grid_lattice_family(const GridComplex& G, std::size_t cap = 4096);

// Finite unions of open axis-aligned boxes with rational corners.
struct Box {
  std::vector<std::pair<Rat, Rat>> sides;  // open (lo, hi) per axis
  bool is_empty() const;
};
struct RectOpen {
  int n = 1;
  std::vector<Box> boxes;
};

// Grow every box by eps on each side (ℓ∞ thickening).
RectOpen metric_thicken(const RectOpen& V, const Rat& eps);

// Geometric open star of a cell as a box in R^n, not clipped to the window:
// axis 2k ↦ ((k-1)δ, (k+1)δ), axis 2k+1 ↦ (kδ, (k+1)δ).
Box cell_box(const GridComplex& G, int sigma);

// Union of the open stars of the cells of U.
RectOpen realize(const GridComplex& G, const GridOpen& U);

bool rect_contains_point(const RectOpen& A, const std::vector<Rat>& x);

// Exact test B ⊆ A, by sampling the midpoints of the coordinate arrangement
// of both unions.
bool rect_contains(const RectOpen& A, const RectOpen& B);

// Cells whose geometric cell (product of vertices and open unit intervals,
// not the star) meets V.
std::vector<int> cells_meeting(const GridComplex& G, const RectOpen& V);

// Union of the stars of the in-window cells meeting V. Satisfies
// V ⊆ realize(U) ⊆ metric_thicken(V, delta); throws BoundaryError when the
// first inclusion fails, i.e. when V needs cells outside the window.
GridOpen delta_approx_witness(const GridComplex& G, const RectOpen& V);

// How the star cover sits inside Down(cells): sigma ↦ star(sigma) should be
// an order embedding, and pairwise star intersections should again be stars
// (of the per-axis meet cell) or empty, so the meet completion of the cover
// adds only the empty set. The join completion is all of Down(cells), which
// GridOpen bitsets already represent.
struct CoverCompletions {
  bool star_monotone = false;
  bool star_full = false;
  bool star_injective = false;
  bool meets_are_cells = false;
  int nonempty_meets = 0;
};
CoverCompletions cover_completions(const GridComplex& G);

}  // namespace pil
