// Exact expectations under the Wilson-action measure on small boxes, by
// gauge-fixed enumeration of edge configurations (or direct plaquette
// enumeration in two dimensions, where the measure factorizes).

#pragma once

#include <functional>

#include "lgt/sampler.hpp"

namespace lgt {

struct OracleSpec {
  LatticeGeometry geom;
  Box box;
  Representation rep;
  double beta = 0.0;
  bool gauge_fix = true;  // pin a spanning tree of edges to zero
  OracleSpec(const LatticeGeometry& g, const Box& b, const Representation& r, double beta_)
      : geom(g), box(b), rep(r), beta(beta_) {}
};

// Observable on dense edge configurations.  Gauge fixing is only valid for
// gauge-invariant observables; callers must declare invariance.
struct EdgeObservable {
  std::function<cplx(const SpinConfiguration&)> f;
  bool gauge_invariant = false;
};

inline constexpr double kEnumerationBudgetLog2 = 28.0;  // n^free <= 2^28

// BFS spanning tree of the box's vertex graph; returns tree edge indices.
std::vector<int> spanning_tree(const BoxLattice& lat);

// Exact E[f] = sum_sigma f(sigma) e^{-beta S(sigma)} / Z over the (gauge
// fixed) configuration set.  Throws when the state count exceeds the budget
// or when gauge fixing is requested for a non-invariant observable.
cplx exact_expectation(const OracleSpec& spec, const EdgeObservable& obs);

// Exact E[f] for an observable of the plaquette configuration, dimension 2
// only: every 2-form is closed there and the pushforward measure factorizes
// over plaquettes.  `exponents` gives f = prod_p rho(omega_p)^{e_p}.
cplx exact_expectation_2d(const OracleSpec& spec, const std::vector<int>& exponents);

// Exact E[W_gamma]; routes to the 2d fast path or the edge enumeration.
cplx exact_wilson(const OracleSpec& spec, const GeneralizedLoop& loop);

// Exact probability of the event d sigma|_{supp nu} = nu.
double exact_agreement_probability(const OracleSpec& spec, const Form& nu);

}  // namespace lgt
