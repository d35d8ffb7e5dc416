// Vortex decomposition of plaquette configurations, minimal-vortex
// classification, the corrected loop observable, and vortex-surface pairing.
//
// Support sizes count oriented plaquettes throughout (so minimal vortices
// have support 12 = 2 x 6 unoriented plaquettes).

#pragma once

#include "lgt/loops.hpp"
#include "lgt/sampler.hpp"
#include "lgt/zn.hpp"

namespace lgt {

enum class Irreducibility { kIrreducible, kReducible, kUnchecked };

struct Vortex {
  Form form;  // closed, nontrivial
  enum class Certificate { kChecked, kAssumedByConstruction } certificate;
  Vortex() : form(2, 0), certificate(Certificate::kAssumedByConstruction) {}
};

// Oriented-plaquette budget for exhaustive irreducibility certification.
inline constexpr int kIrreducibilityBudget = 48;

// Exhaustive scan over proper nonempty symmetric support subsets; kUnchecked
// beyond the budget, never a silent pass.
Irreducibility is_irreducible(const LatticeGeometry& g, const Form& omega, const Box& box);

// Splits a closed 2-form into closed components with pairwise disjoint
// supports summing to the input.  Components are grown from the least
// unclaimed support plaquette by repeatedly locating the least 3-cell where
// the partial form fails to close and adding the least missing support
// plaquette of its boundary; pieces within the certificate budget are split
// further if the subset scan finds them reducible.
std::vector<Vortex> decompose(const LatticeGeometry& g, const Form& omega, const Box& box);

// d(g dx_e): the minimal vortex centered at an interior edge e; throws when
// the edge's coboundary is clipped by the box.
Form minimal_vortex(const LatticeGeometry& g, const OrientedCell& edge, int coef, int modulus,
                    const Box& box);

// Inverts minimal_vortex when the form matches some d(g dx_e) exactly.
std::optional<std::pair<OrientedCell, int>> classify_minimal(const LatticeGeometry& g,
                                                             const Form& omega, const Box& box);

// Per-edge data for the corrected observable: the loop, its corner and
// straight parts, and a fixed coboundary plaquette per straight edge.
struct WilsonPrimeContext {
  GeneralizedLoop loop;
  Chain gamma_c, gamma_1;
  // per positive straight edge: (edge index, loop coefficient, the fixed
  // plaquette index, its boundary coefficient for the edge, all six
  // coboundary plaquettes as (plaq index, boundary coefficient))
  struct EdgeData {
    int edge;
    int coef;
    int p_fixed;
    int p_sign;
    std::vector<std::pair<int, int>> cob;
  };
  std::vector<EdgeData> straight;
  WilsonPrimeContext() : gamma_c(1), gamma_1(1) {}
};

WilsonPrimeContext make_wilson_prime_context(const LatticeGeometry& g, const BoxLattice& lat,
                                             const GeneralizedLoop& loop);

// gamma'[e] = gamma_1[e] * [coboundary plaquette values of d sigma disagree].
Chain gamma_prime(const WilsonPrimeContext& ctx, const SpinConfiguration& s,
                  const BoxLattice& lat);

struct WilsonPrimeSample {
  cplx w_prime;
  int gamma_prime_size;
};
WilsonPrimeSample wilson_prime(const WilsonPrimeContext& ctx, const SpinConfiguration& s);

// evaluate(nu, q); and the vanishing criterion for vortices far from the
// surface boundary (uses the conservative width bound b = 24, clipped to the
// ambient box).
int vortex_pairing(const Form& nu, const Chain& q);
bool far_vortex_vanishes(const LatticeGeometry& g, const Form& nu, const OrientedSurface& q,
                         const GeneralizedLoop& loop, const Box& ambient);

// Exhaustive enumeration of irreducible closed 2-forms with 2M oriented
// support plaquettes containing p0, following the bounded construction tree
// (at most 5 plaquette choices per step, n-1 values).  M in {6,7}.
std::vector<Form> enumerate_irreducible(const LatticeGeometry& g, const OrientedCell& p0,
                                        int M, int modulus, const Box& box);

// Per-sample vortex census used by the CSV outputs.
struct CensusRow {
  int sample = 0;
  int components = 0;
  int minimal = 0;             // oriented support exactly 12 and classifiable
  int size_le_24 = 0;
  int size_gt_24 = 0;
  int minimal_on_loop = 0;     // centered on an edge of the loop (either sign)
  int minimal_off_loop = 0;
};
CensusRow census_sample(const LatticeGeometry& g, const SpinConfiguration& s,
                        const GeneralizedLoop* loop, int sample_index);

}  // namespace lgt
