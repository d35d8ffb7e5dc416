// Generalized loops (closed 1-chains with coefficients in {-1,0,1}), corner
// edges, and oriented surfaces bounding a given loop.

#pragma once

#include <cstdint>
#include <random>

#include "lgt/forms.hpp"

namespace lgt {

struct GeneralizedLoop {
  Chain chain;        // degree 1, coefficients in {-1,0,1}, empty boundary
  int length = 0;     // |supp gamma|
  int corners = 0;    // number of corner edges
  GeneralizedLoop() : chain(1) {}
};

// Accepts a 1-chain iff its coefficients lie in {-1,0,1} and its boundary is
// empty; throws with a witness 0-cell otherwise.
GeneralizedLoop validate_loop(const LatticeGeometry& g, const Chain& gamma);

// Edges of the loop sharing a 2-cell with another loop edge (either
// orientation).  corner_restriction + straight_part partition the loop.
Chain corner_restriction(const LatticeGeometry& g, const GeneralizedLoop& loop);
Chain straight_part(const LatticeGeometry& g, const GeneralizedLoop& loop);

struct OrientedSurface {
  Chain chain;  // degree 2 with boundary equal to the loop
  Box box;
  OrientedSurface() : chain(2) {}
};

// Deterministic surface with boundary gamma and support inside the box
// (default: the loop's bounding box fattened by 1).  Built by solving
// delta omega = sigma_gamma over the integers and reading off the 2-chain.
OrientedSurface build_surface(const LatticeGeometry& g, const GeneralizedLoop& loop,
                              const Box* box = nullptr);

// Plaquettes of the surface none of whose boundary edges carry the loop.
std::vector<OrientedCell> internal_plaquettes(const LatticeGeometry& g,
                                              const OrientedSurface& q,
                                              const GeneralizedLoop& loop);
// Edges touched by the surface's support with vanishing boundary coefficient.
std::vector<OrientedCell> internal_edges(const LatticeGeometry& g, const OrientedSurface& q);

// Axis-aligned rectangle loop: R steps along axis1, T along axis2, counter-
// clockwise from `corner`.
GeneralizedLoop rectangle_loop(const LatticeGeometry& g, int axis1, int axis2, int R, int T,
                               const Coord& corner);

// Random generalized loops for tests: rectangles, disjoint rectangle pairs,
// and closed staircase walks, all inside the given box.
GeneralizedLoop random_loop(const LatticeGeometry& g, const Box& box, std::mt19937_64& rng);

// Text format: "edge x1 .. xm axis coef" lines and
// "rect axis1 axis2 R T x1 .. xm" lines.
GeneralizedLoop parse_loop_text(const LatticeGeometry& g, const std::string& text);

}  // namespace lgt
