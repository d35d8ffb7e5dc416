#include "lgt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgt {

std::vector<int> spanning_tree(const BoxLattice& lat) {
  std::vector<int> tree;
  std::vector<char> visited(lat.vertex_count(), 0);
  std::vector<int> queue{0};
  visited[0] = 1;
  const int m = lat.dim();
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    Coord c = lat.vertex_coord(v);
    for (int d = 0; d < m; ++d) {
      // forward neighbor via edge (v, d)
      int e = v * m + d;
      if (lat.edge_valid(e)) {
        Coord nc = c;
        nc[d] += 1;
        int nv = lat.vertex_index(nc);
        if (!visited[nv]) {
          visited[nv] = 1;
          tree.push_back(e);
          queue.push_back(nv);
        }
      }
      // backward neighbor via edge (v - e_d, d)
      if (c[d] - 1 >= lat.box().lower[d]) {
        Coord nc = c;
        nc[d] -= 1;
        int nv = lat.vertex_index(nc);
        int be = nv * m + d;
        if (lat.edge_valid(be) && !visited[nv]) {
          visited[nv] = 1;
          tree.push_back(be);
          queue.push_back(nv);
        }
      }
    }
  }
  if (int(queue.size()) != lat.vertex_count())
    throw std::logic_error("box vertex graph is not connected");
  return tree;
}

cplx exact_expectation(const OracleSpec& spec, const EdgeObservable& obs) {
  BoxLattice lat(spec.geom, spec.box);
  std::vector<char> fixed(lat.edge_slots(), 0);
  if (spec.gauge_fix) {
    if (!obs.gauge_invariant)
      throw std::domain_error("gauge fixing requires a gauge-invariant observable");
    for (int e : spanning_tree(lat)) fixed[e] = 1;
  }
  std::vector<int> free_edges;
  for (int e : lat.edges())
    if (!fixed[e]) free_edges.push_back(e);
  const int n = spec.rep.n;
  double states_log2 = free_edges.size() * std::log2(double(n));
  if (states_log2 > kEnumerationBudgetLog2)
    throw std::domain_error("enumeration budget exceeded: " + std::to_string(free_edges.size()) +
                            " free edges at n=" + std::to_string(n));

  // Plaquette weight table exp(2 beta (Re rho(g) - 1)); the shift cancels in
  // the ratio.
  std::vector<double> w2(n);
  for (int g = 0; g < n; ++g) w2[g] = std::exp(2.0 * spec.beta * (spec.rep.re_rho(g) - 1.0));

  SpinConfiguration s(lat, spec.rep);
  const auto& plaqs = lat.plaquettes();
  cplx num = 0.0;
  double den = 0.0;
  std::vector<int> odo(free_edges.size(), 0);
  while (true) {
    double weight = 1.0;
    for (int p : plaqs) weight *= w2[s.plaq_value(p)];
    num += obs.f(s) * weight;
    den += weight;
    size_t i = 0;
    for (; i < odo.size(); ++i) {
      int v = odo[i] + 1;
      if (v < n) {
        odo[i] = v;
        s.set_edge(free_edges[i], v);
        break;
      }
      odo[i] = 0;
      s.set_edge(free_edges[i], 0);
    }
    if (i == odo.size()) break;
  }
  return num / den;
}

cplx exact_expectation_2d(const OracleSpec& spec, const std::vector<int>& exponents) {
  if (spec.geom.dim != 2) throw std::domain_error("plaquette enumeration is dimension-2 only");
  BoxLattice lat(spec.geom, spec.box);
  const auto& plaqs = lat.plaquettes();
  if (exponents.size() != plaqs.size())
    throw std::domain_error("exponent vector size must match the plaquette count");
  const int n = spec.rep.n;
  // The measure factorizes over plaquettes: each factor is an independent
  // one-site expectation of rho(g)^e under weights phi(g)^2.
  std::vector<double> w2(n);
  double wtot = 0.0;
  for (int g = 0; g < n; ++g) {
    w2[g] = std::exp(2.0 * spec.beta * (spec.rep.re_rho(g) - 1.0));
    wtot += w2[g];
  }
  cplx out = 1.0;
  for (size_t i = 0; i < plaqs.size(); ++i) {
    int e = exponents[i];
    cplx acc = 0.0;
    for (int g = 0; g < n; ++g) acc += spec.rep.rho(spec.rep.mod((long long)e * g)) * w2[g];
    out *= acc / wtot;
  }
  return out;
}

namespace {
// In two dimensions the unique compactly supported surface with boundary
// gamma is the column prefix sum of the horizontal edge coefficients; its
// support stays inside the loop's bounding box.
Chain planar_surface_2d(const LatticeGeometry& g, const GeneralizedLoop& loop) {
  std::map<int, std::map<int, int>> columns;  // x -> y -> coef of e1@(x,y)
  for (auto& [k, c] : loop.chain.terms()) {
    OrientedCell e = OrientedCell::from_key(k);
    if (e.has_axis(1)) columns[e.base[0]][e.base[1]] += c;
  }
  Chain q(2);
  for (auto& [x, col] : columns) {
    int acc = 0;
    int prev_y = 0;
    bool first = true;
    for (auto& [y, c] : col) {
      if (!first && acc != 0)
        for (int t = prev_y; t < y; ++t)
          q.add(make_cell(g, Coord{x, t}, {1, 2}), acc);
      acc += c;
      if (acc != 0) q.add(make_cell(g, Coord{x, y}, {1, 2}), acc);
      prev_y = y + 1;
      first = false;
    }
    if (acc != 0) throw std::logic_error("loop column flux does not vanish");
  }
  if (!(boundary_chain(g, q) == loop.chain))
    throw std::logic_error("planar surface does not bound the loop");
  return q;
}
}  // namespace

cplx exact_wilson(const OracleSpec& spec, const GeneralizedLoop& loop) {
  if (spec.geom.dim == 2) {
    BoxLattice lat(spec.geom, spec.box);
    Chain surf = planar_surface_2d(spec.geom, loop);
    std::vector<int> exponents(lat.plaquettes().size(), 0);
    const auto& plaqs = lat.plaquettes();
    for (size_t i = 0; i < plaqs.size(); ++i)
      exponents[i] = surf[lat.plaq_cell(plaqs[i])];
    return exact_expectation_2d(spec, exponents);
  }
  BoxLattice lat(spec.geom, spec.box);
  LoopMeasurement m = bind_loop(lat, loop);
  EdgeObservable obs;
  obs.gauge_invariant = true;  // closed loops are invariant under sigma -> sigma + dh
  obs.f = [m](const SpinConfiguration& s) { return wilson_loop(s, m); };
  return exact_expectation(spec, obs);
}

double exact_agreement_probability(const OracleSpec& spec, const Form& nu) {
  BoxLattice lat(spec.geom, spec.box);
  std::vector<std::pair<int, int>> want;  // (plaquette index, value)
  for (auto& [k, v] : nu.values()) want.emplace_back(lat.plaq_index(OrientedCell::from_key(k)), v);
  EdgeObservable obs;
  obs.gauge_invariant = true;  // the event depends on d sigma only
  obs.f = [want](const SpinConfiguration& s) {
    for (auto& [p, v] : want)
      if (s.plaq_value(p) != v) return cplx(0.0);
    return cplx(1.0);
  };
  return exact_expectation(spec, obs).real();
}

}  // namespace lgt
