#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lgt/oracle.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

namespace {
Box cube(const LatticeGeometry& g, int lo, int hi) {
  Coord l{}, h{};
  for (int i = 0; i < g.dim; ++i) {
    l[i] = lo;
    h[i] = hi;
  }
  return Box(g, l, h);
}
}  // namespace

TEST_CASE("single plaquette closed form") {
  LatticeGeometry g(2);
  Box box = cube(g, 0, 1);
  Representation r2(2);
  for (double beta : {0.0, 0.3, 1.0}) {
    OracleSpec spec(g, box, r2, beta);
    auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
    cplx w = exact_wilson(spec, loop);
    CHECK(std::abs(w - cplx(std::tanh(2.0 * beta))) < 1e-12);
  }
}

TEST_CASE("uniform measure kills every loop") {
  LatticeGeometry g(2);
  Box box = cube(g, 0, 3);
  for (int n : {2, 3, 5}) {
    OracleSpec spec(g, box, Representation(n), 0.0);
    CHECK(std::abs(exact_wilson(spec, rectangle_loop(g, 1, 2, 2, 1, Coord{}))) < 1e-12);
  }
}

TEST_CASE("gauge fixing matches the full enumeration") {
  LatticeGeometry g(3);
  Box box = cube(g, 0, 1);
  Representation r2(2);
  auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
  for (double beta : {0.25, 0.7}) {
    OracleSpec fixed(g, box, r2, beta);
    OracleSpec full(g, box, r2, beta);
    full.gauge_fix = false;
    cplx a = exact_wilson(fixed, loop);
    BoxLattice lat(g, box);
    LoopMeasurement m = bind_loop(lat, loop);
    EdgeObservable obs;
    obs.gauge_invariant = true;
    obs.f = [m](const SpinConfiguration& s) { return wilson_loop(s, m); };
    cplx b = exact_expectation(full, obs);  // all 2^12 edge configurations
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("2d plaquette enumeration matches the edge enumeration") {
  LatticeGeometry g(2);
  Box box = cube(g, 0, 2);
  for (int n : {2, 3}) {
    Representation rep(n);
    auto loop = rectangle_loop(g, 1, 2, 2, 2, Coord{});
    OracleSpec spec(g, box, rep, 0.45);
    cplx fast = exact_wilson(spec, loop);
    BoxLattice lat(g, box);
    LoopMeasurement m = bind_loop(lat, loop);
    EdgeObservable obs;
    obs.gauge_invariant = true;
    obs.f = [m](const SpinConfiguration& s) { return wilson_loop(s, m); };
    cplx slow = exact_expectation(spec, obs);
    CHECK(std::abs(fast - slow) < 1e-12);
  }
}

TEST_CASE("budget and gauge-invariance refusals") {
  LatticeGeometry g(3);
  Representation r2(2);
  OracleSpec spec(g, cube(g, 0, 1), r2, 0.5);
  EdgeObservable not_invariant;
  not_invariant.gauge_invariant = false;
  not_invariant.f = [](const SpinConfiguration& s) { return cplx(s.edge_value(0)); };
  CHECK_THROWS_AS(exact_expectation(spec, not_invariant), std::domain_error);

  OracleSpec too_big(g, cube(g, 0, 4), Representation(3), 0.5);
  EdgeObservable ok;
  ok.gauge_invariant = true;
  ok.f = [](const SpinConfiguration&) { return cplx(1.0); };
  CHECK_THROWS_WITH_AS(exact_expectation(too_big, ok), doctest::Contains("budget"),
                       std::domain_error);
}

TEST_CASE("spanning tree pins vertex count minus one edges") {
  LatticeGeometry g(3);
  BoxLattice lat(g, cube(g, 0, 2));
  auto tree = spanning_tree(lat);
  CHECK(int(tree.size()) == lat.vertex_count() - 1);
}

TEST_CASE("expected wilson values grow with the box") {
  LatticeGeometry g(3);
  std::vector<Box> nested{Box(g, Coord{0, 0, 0}, Coord{1, 1, 1}),
                          Box(g, Coord{0, 0, 0}, Coord{2, 1, 1}),
                          Box(g, Coord{0, 0, 0}, Coord{2, 2, 1})};
  auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
  for (int n : {2, 3}) {
    auto report = verify_monotonicity(g, nested, Representation(n), 0.4, loop);
    CHECK(report.pass());
  }
  // beta = 0: all values equal zero
  auto flat = verify_monotonicity(g, nested, Representation(2), 0.0, loop);
  CHECK(flat.pass());
  for (auto& [k, v] : flat.info) CHECK(std::abs(std::stod(v)) < 1e-12);
}

TEST_CASE("agreement bound holds exactly on the unit cube") {
  AgreementParams p;
  p.samples = 25;
  auto report = verify_agreement_bound(p);
  CHECK(report.pass());
  CHECK(report.checks.size() > 20);
}
