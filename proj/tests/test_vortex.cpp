#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lgt/oracle.hpp"
#include "lgt/vortex.hpp"

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

TEST_CASE("minimal vortex support and round trip") {
  LatticeGeometry g(4);
  Box box = cube(g, -3, 3);
  for (int axis = 1; axis <= 4; ++axis)
    for (int n : {2, 3, 5})
      for (int v = 1; v < n; ++v) {
        auto e = make_cell(g, Coord{}, {axis});
        Form nu = minimal_vortex(g, e, v, n, box);
        CHECK(nu.support_size() == 12);
        CHECK(closedness_witness(g, nu, box) == std::nullopt);
        auto cls = classify_minimal(g, nu, box);
        REQUIRE(cls.has_value());
        CHECK(cls->first.key() == e.key());
        CHECK(cls->second == v);
        CHECK(is_irreducible(g, nu, box) == Irreducibility::kIrreducible);
      }
  // boundary-adjacent edges are rejected
  auto corner_edge = make_cell(g, Coord{-3, -3, -3, -3}, {1});
  CHECK_THROWS_AS(minimal_vortex(g, corner_edge, 1, 2, box), std::domain_error);
}

TEST_CASE("forms with other support sizes do not classify as minimal") {
  LatticeGeometry g(4);
  Box box = cube(g, -3, 3);
  Form f(1, 2);
  f.set(make_cell(g, Coord{}, {1}), 1);
  f.set(make_cell(g, Coord{0, 1, 0, 0}, {1}), 1);  // two parallel edges
  Form w = exterior_derivative(g, f, &box);
  CHECK(w.support_size() != 12);
  CHECK(classify_minimal(g, w, box) == std::nullopt);
  CHECK(classify_minimal(g, Form(2, 2), box) == std::nullopt);
}

TEST_CASE("irreducibility: witnesses, certificates, budget") {
  LatticeGeometry g(4);
  Box box = cube(g, -4, 4);
  Form a = minimal_vortex(g, make_cell(g, Coord{}, {1}), 1, 2, box);
  Coord far{};
  far[1] = 3;
  Form b = minimal_vortex(g, make_cell(g, far, {2}), 1, 2, box);
  Form sum = a;
  sum += b;
  CHECK(is_irreducible(g, sum, box) == Irreducibility::kReducible);
  CHECK(is_irreducible(g, Form(2, 2), box) == Irreducibility::kReducible);  // trivial
  // over budget: 25 disjoint plaquette pairs in two dimensions
  LatticeGeometry g2(2);
  Box big = cube(g2, 0, 30);
  Form wide(2, 2);
  for (int i = 0; i <= 24; ++i) wide.set(make_cell(g2, Coord{i, i}, {1, 2}), 1);
  CHECK(is_irreducible(g2, wide, big) == Irreducibility::kUnchecked);
}

TEST_CASE("decompose splits separated minimal vortices") {
  LatticeGeometry g(4);
  Box box = cube(g, -4, 4);
  CHECK(decompose(g, Form(2, 3), box).empty());

  Form a = minimal_vortex(g, make_cell(g, Coord{}, {1}), 2, 3, box);
  auto single = decompose(g, a, box);
  REQUIRE(single.size() == 1);
  CHECK(single[0].form == a);
  CHECK(single[0].certificate == Vortex::Certificate::kChecked);

  Coord far{};
  far[2] = 3;  // L-infinity distance 3
  Form b = minimal_vortex(g, make_cell(g, far, {3}), 1, 3, box);
  Form sum = a;
  sum += b;
  auto parts = decompose(g, sum, box);
  REQUIRE(parts.size() == 2);
  Form rebuilt(2, 3);
  for (auto& v : parts) {
    rebuilt += v.form;
    CHECK(closedness_witness(g, v.form, box) == std::nullopt);
    CHECK(classify_minimal(g, v.form, box).has_value());
  }
  CHECK(rebuilt == sum);
  // supports disjoint
  for (auto& [k, v] : parts[0].form.values()) CHECK(parts[1].form.values().count(k) == 0);
}

TEST_CASE("decompose is a deterministic partition on random configurations") {
  LatticeGeometry g(4);
  Box box = cube(g, 0, 3);
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + int(rng() % 3);
    Form sigma(1, n);
    for (auto& c : cells_in_box(g, box, 1))
      if (rng() % 5 == 0) sigma.set(c, 1 + int(rng() % (n - 1)));
    Form w = exterior_derivative(g, sigma, &box);
    auto parts = decompose(g, w, box);
    Form rebuilt(2, n);
    std::set<uint64_t> seen;
    for (auto& v : parts) {
      CHECK(!v.form.is_zero());
      CHECK(closedness_witness(g, v.form, box) == std::nullopt);
      if (int(v.form.support_size()) <= kIrreducibilityBudget)
        CHECK(is_irreducible(g, v.form, box) == Irreducibility::kIrreducible);
      for (auto& [k, val] : v.form.values()) {
        CHECK(!seen.count(k));
        seen.insert(k);
      }
      rebuilt += v.form;
      // flip: removing a component keeps the remainder closed
      Form rest = w;
      rest -= v.form;
      CHECK(closedness_witness(g, rest, box) == std::nullopt);
    }
    CHECK(rebuilt == w);
    auto again = decompose(g, w, box);
    REQUIRE(again.size() == parts.size());
    for (size_t i = 0; i < parts.size(); ++i) CHECK(again[i].form == parts[i].form);
  }
}

TEST_CASE("enumeration of small irreducible configurations") {
  LatticeGeometry g(4);
  Box box = cube(g, -4, 4);
  auto p0 = make_cell(g, Coord{}, {1, 2});
  for (int n : {2, 3}) {
    auto forms = enumerate_irreducible(g, p0, 6, n, box);
    CHECK(int(forms.size()) == 4 * (n - 1));
    for (auto& f : forms) {
      CHECK(f.support_size() == 12);
      CHECK(f(p0) != 0);
      CHECK(classify_minimal(g, f, box).has_value());
    }
    CHECK(double(forms.size()) <= std::pow(5.0, 5) * std::pow(n - 1.0, 6));
  }
  CHECK_THROWS_AS(enumerate_irreducible(g, p0, 8, 2, box), std::domain_error);
}

TEST_CASE("corrected observable on constructed configurations") {
  LatticeGeometry g(4);
  Box box = cube(g, -5, 5);
  BoxLattice lat(g, box);
  Representation r3(3);
  auto loop = rectangle_loop(g, 1, 2, 3, 3, Coord{-1, -1, 0, 0});
  auto ctx = make_wilson_prime_context(g, lat, loop);
  CHECK(ctx.gamma_1.support_size() == 4);
  CHECK(ctx.gamma_c.support_size() == 8);

  SpinConfiguration s(lat, r3);
  // vacuum: gamma' empty, W' = 1
  auto ws = wilson_prime(ctx, s);
  CHECK(ws.gamma_prime_size == 0);
  CHECK(std::abs(ws.w_prime - cplx(1.0)) < 1e-14);
  CHECK(gamma_prime(ctx, s, lat).is_zero());

  // a single spin on a straight loop edge: all six plaquette values agree,
  // so the edge stays out of gamma' and W' picks up rho(g * coefficient)
  OrientedCell mid = OrientedCell::from_key(ctx.gamma_1.terms().begin()->first);
  int coef = ctx.gamma_1.terms().begin()->second;
  s.set_edge(lat.edge_index(mid), 2);
  ws = wilson_prime(ctx, s);
  CHECK(ws.gamma_prime_size == 0);
  CHECK(std::abs(ws.w_prime - r3.rho(r3.mod(2 * coef))) < 1e-14);

  // a spin on a neighboring edge makes the plaquette values at `mid` disagree
  SpinConfiguration s2(lat, r3);
  Coord near = mid.base;
  near[2] += 1;  // parallel edge sharing a plaquette
  s2.set_edge(lat.edge_index(make_cell(g, near, {mid.has_axis(1) ? 1 : 2})), 1);
  auto gp = gamma_prime(ctx, s2, lat);
  CHECK(gp[mid] == coef);
}

TEST_CASE("corrected observable refuses clipped coboundaries") {
  LatticeGeometry g(4);
  Box box = cube(g, -2, 2);
  BoxLattice lat(g, box);
  // straight edges of this loop sit on the box boundary
  auto loop = rectangle_loop(g, 1, 2, 3, 3, Coord{-2, -2, 0, 0});
  CHECK_THROWS_AS(make_wilson_prime_context(g, lat, loop), std::domain_error);
  LatticeGeometry g3(3);
  BoxLattice lat3(g3, cube(g3, -2, 2));
  CHECK_THROWS_AS(
      make_wilson_prime_context(g3, lat3, rectangle_loop(g3, 1, 2, 1, 1, Coord{})),
      std::domain_error);  // wrong dimension
}

TEST_CASE("resampling identity on an exactly enumerable box") {
  // 4d is too big to enumerate, so check the conditional mean directly:
  // E[rho(d sigma(p_e)) | others] = theta at an interior edge with vacuum
  // staples, which is the single-edge version of the identity.
  LatticeGeometry g(4);
  Box box = cube(g, 0, 2);
  BoxLattice lat(g, box);
  Representation r2(2);
  SpinConfiguration s(lat, r2);
  int e = lat.edge_index(make_cell(g, Coord{1, 1, 1, 1}, {1}));
  auto w = s.local_conditional(e, 0.35);
  cplx mean = 0.0;
  for (int v = 0; v < 2; ++v) mean += r2.rho(v) * w[v];
  CHECK(std::abs(mean.real() - theta(r2, 0.35)) < 1e-12);
}

TEST_CASE("vortex pairing with surfaces") {
  LatticeGeometry g(4);
  Box ambient = cube(g, -6, 6);
  auto loop = rectangle_loop(g, 1, 2, 4, 4, Coord{-2, -2, 0, 0});
  auto surf = build_surface(g, loop);

  // minimal vortex centered on a loop edge pairs to its coefficient
  OrientedCell e = OrientedCell::from_key(loop.chain.terms().begin()->first);
  int coef = loop.chain.terms().begin()->second;
  for (int n : {2, 3})
    for (int v = 1; v < n; ++v) {
      Form nu = minimal_vortex(g, e, v, n, ambient);
      CHECK(vortex_pairing(nu, surf.chain) == reduce_mod((long long)v * coef, n));
    }

  // minimal vortex centered on an internal edge pairs to zero
  auto internal = internal_edges(g, surf);
  REQUIRE(!internal.empty());
  Form nu0 = minimal_vortex(g, internal.front(), 1, 3, ambient);
  CHECK(vortex_pairing(nu0, surf.chain) == 0);

  // far-away vortices satisfy the vanishing criterion
  Coord far{};
  far[3] = -4;
  far[2] = 4;
  Form nuf = minimal_vortex(g, make_cell(g, far, {2}), 1, 3, ambient);
  CHECK(far_vortex_vanishes(g, nuf, surf, loop, ambient));
  CHECK(vortex_pairing(nuf, surf.chain) == 0);
  // near the loop the criterion refuses to certify
  Form nun = minimal_vortex(g, e, 1, 3, ambient);
  CHECK(!far_vortex_vanishes(g, nun, surf, loop, ambient));
}

TEST_CASE("census rows summarize decompositions") {
  LatticeGeometry g(4);
  Box box = cube(g, -3, 3);
  BoxLattice lat(g, box);
  Representation r2(2);
  SpinConfiguration s(lat, r2);
  auto loop = rectangle_loop(g, 1, 2, 2, 2, Coord{-1, -1, 0, 0});
  OrientedCell on_loop = OrientedCell::from_key(loop.chain.terms().begin()->first);
  s.set_edge(lat.edge_index(on_loop), 1);
  Coord far{};
  far[3] = -2;
  far[2] = 2;
  s.set_edge(lat.edge_index(make_cell(g, far, {1})), 1);
  auto row = census_sample(g, s, &loop, 7);
  CHECK(row.sample == 7);
  CHECK(row.components == 2);
  CHECK(row.minimal == 2);
  CHECK(row.minimal_on_loop == 1);
  CHECK(row.minimal_off_loop == 1);
  CHECK(row.size_le_24 == 2);
}
