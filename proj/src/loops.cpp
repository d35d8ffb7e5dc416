#include "lgt/loops.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lgt {

GeneralizedLoop validate_loop(const LatticeGeometry& g, const Chain& gamma) {
  if (gamma.degree() != 1 || gamma.dual()) throw std::domain_error("loop must be a primal 1-chain");
  for (auto& [k, c] : gamma.terms())
    if (c < -1 || c > 1)
      throw std::domain_error("loop coefficient out of {-1,0,1} at " +
                              OrientedCell::from_key(k).str(g.dim));
  Chain b = boundary_chain(g, gamma);
  if (!b.is_zero())
    throw std::domain_error("chain has non-empty boundary; witness 0-cell " +
                            OrientedCell::from_key(b.terms().begin()->first).str(g.dim));
  GeneralizedLoop loop;
  loop.chain = gamma;
  loop.length = int(gamma.support_size());
  loop.corners = int(corner_restriction(g, loop).support_size());
  return loop;
}

Chain corner_restriction(const LatticeGeometry& g, const GeneralizedLoop& loop) {
  Chain out(1);
  for (auto& [k, c] : loop.chain.terms()) {
    OrientedCell e = OrientedCell::from_key(k);
    bool corner = false;
    for (auto& pt : coboundary(g, e)) {
      for (auto& et : boundary(g, pt.cell)) {
        if (et.cell.key() == k) continue;
        if (loop.chain[et.cell] != 0) {
          corner = true;
          break;
        }
      }
      if (corner) break;
    }
    if (corner) out.add(e, c);
  }
  return out;
}

Chain straight_part(const LatticeGeometry& g, const GeneralizedLoop& loop) {
  Chain out = loop.chain;
  out -= corner_restriction(g, loop);
  return out;
}

OrientedSurface build_surface(const LatticeGeometry& g, const GeneralizedLoop& loop,
                              const Box* box) {
  Form sigma(1, 0);  // integer-valued indicator 1-form of the loop
  for (auto& [k, c] : loop.chain.terms()) sigma.set(OrientedCell::from_key(k), c);

  OrientedSurface out;
  if (loop.chain.is_zero()) {
    if (box) out.box = *box;
    return out;
  }
  Box b = box ? *box : *support_bbox(g, sigma, 1);
  for (auto& [k, c] : loop.chain.terms())
    if (!b.contains_cell(OrientedCell::from_key(k)))
      throw std::domain_error("loop support exceeds the surface box");

  Form omega_q = copoincare_potential(g, sigma, b);
  Chain q(2);
  for (auto& [k, v] : omega_q.values()) q.add(OrientedCell::from_key(k), v);

  if (!(boundary_chain(g, q) == loop.chain))
    throw std::logic_error("surface construction failed to bound the loop");
  out.chain = q;
  out.box = b;
  return out;
}

std::vector<OrientedCell> internal_plaquettes(const LatticeGeometry& g,
                                              const OrientedSurface& q,
                                              const GeneralizedLoop& loop) {
  std::vector<OrientedCell> out;
  for (auto& [k, c] : q.chain.terms()) {
    OrientedCell p = OrientedCell::from_key(k);
    bool internal = true;
    for (auto& et : boundary(g, p))
      if (loop.chain[et.cell] != 0) {
        internal = false;
        break;
      }
    if (internal) out.push_back(p);
  }
  return out;
}

std::vector<OrientedCell> internal_edges(const LatticeGeometry& g, const OrientedSurface& q) {
  Chain bd = boundary_chain(g, q.chain);
  std::set<uint64_t> seen;
  std::vector<OrientedCell> out;
  for (auto& [k, c] : q.chain.terms())
    for (auto& et : boundary(g, OrientedCell::from_key(k))) {
      uint64_t ek = et.cell.key();
      if (seen.count(ek)) continue;
      seen.insert(ek);
      if (bd[et.cell] == 0) out.push_back(et.cell);
    }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.key() < b.key(); });
  return out;
}

GeneralizedLoop rectangle_loop(const LatticeGeometry& g, int axis1, int axis2, int R, int T,
                               const Coord& corner) {
  if (axis1 == axis2 || axis1 < 1 || axis2 < 1 || axis1 > g.dim || axis2 > g.dim || R < 1 ||
      T < 1)
    throw std::domain_error("bad rectangle spec");
  Chain gamma(1);
  Coord p = corner;
  for (int i = 0; i < R; ++i) {
    gamma.add(make_cell(g, p, {axis1}), +1);
    p[axis1 - 1] += 1;
  }
  for (int i = 0; i < T; ++i) {
    gamma.add(make_cell(g, p, {axis2}), +1);
    p[axis2 - 1] += 1;
  }
  for (int i = 0; i < R; ++i) {
    p[axis1 - 1] -= 1;
    gamma.add(make_cell(g, p, {axis1}), -1);
  }
  for (int i = 0; i < T; ++i) {
    p[axis2 - 1] -= 1;
    gamma.add(make_cell(g, p, {axis2}), -1);
  }
  return validate_loop(g, gamma);
}

GeneralizedLoop random_loop(const LatticeGeometry& g, const Box& box, std::mt19937_64& rng) {
  auto rint = [&](int lo, int hi) {
    return lo + int(rng() % uint64_t(hi - lo + 1));
  };
  auto random_rect = [&]() -> std::optional<Chain> {
    int a1 = rint(1, g.dim), a2 = rint(1, g.dim);
    if (a1 == a2) return std::nullopt;
    if (a1 > a2) std::swap(a1, a2);
    Coord c{};
    int R = 0, T = 0;
    for (int i = 0; i < g.dim; ++i) c[i] = rint(box.lower[i], box.upper[i] - 1);
    R = rint(1, std::max(1, box.upper[a1 - 1] - c[a1 - 1]));
    T = rint(1, std::max(1, box.upper[a2 - 1] - c[a2 - 1]));
    if (c[a1 - 1] + R > box.upper[a1 - 1] || c[a2 - 1] + T > box.upper[a2 - 1])
      return std::nullopt;
    return rectangle_loop(g, a1, a2, R, T, c).chain;
  };

  for (int attempt = 0; attempt < 200; ++attempt) {
    int kind = int(rng() % 3);
    std::optional<Chain> gamma;
    if (kind == 0) {
      gamma = random_rect();
    } else if (kind == 1) {
      auto r1 = random_rect(), r2 = random_rect();
      if (r1 && r2) {
        Chain sum = *r1;
        sum += *r2;
        // reject overlapping supports (coefficients would leave {-1,0,1})
        bool ok = sum.support_size() == r1->support_size() + r2->support_size();
        if (ok) gamma = sum;
      }
    } else {
      // closed staircase walk: a shuffled multiset of balanced +/- steps
      int steps = 2 * rint(2, 5);
      std::vector<int> moves;  // +axis / -axis
      for (int i = 0; i < steps / 2; ++i) {
        int ax = rint(1, g.dim);
        moves.push_back(ax);
        moves.push_back(-ax);
      }
      std::shuffle(moves.begin(), moves.end(), rng);
      Coord p{};
      for (int i = 0; i < g.dim; ++i) p[i] = (box.lower[i] + box.upper[i]) / 2;
      Chain c(1);
      bool ok = true;
      for (int mv : moves) {
        int ax = std::abs(mv);
        Coord base = p;
        if (mv > 0) {
          c.add(make_cell(g, base, {ax}), +1);
          p[ax - 1] += 1;
        } else {
          base[ax - 1] -= 1;
          c.add(make_cell(g, base, {ax}), -1);
          p[ax - 1] -= 1;
        }
        if (p[ax - 1] < box.lower[ax - 1] || p[ax - 1] > box.upper[ax - 1]) {
          ok = false;
          break;
        }
      }
      if (ok && !c.is_zero()) gamma = c;
    }
    if (!gamma) continue;
    bool coeffs_ok = true;
    for (auto& [k, c] : gamma->terms())
      if (c < -1 || c > 1) coeffs_ok = false;
    if (!coeffs_ok) continue;
    Chain b = boundary_chain(g, *gamma);
    if (!b.is_zero()) continue;
    bool inside = true;
    for (auto& [k, c] : gamma->terms())
      if (!box.contains_cell(OrientedCell::from_key(k))) inside = false;
    if (!inside) continue;
    return validate_loop(g, *gamma);
  }
  throw std::runtime_error("random loop generation failed");
}

GeneralizedLoop parse_loop_text(const LatticeGeometry& g, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Chain gamma(1);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "edge") {
      Coord p{};
      int axis, coef;
      for (int i = 0; i < g.dim; ++i) ls >> p[i];
      ls >> axis >> coef;
      if (!ls) throw std::invalid_argument("bad edge line: " + line);
      gamma.add(make_cell(g, p, {axis}), coef);
    } else if (kind == "rect") {
      int a1, a2, R, T;
      Coord p{};
      ls >> a1 >> a2 >> R >> T;
      for (int i = 0; i < g.dim; ++i) ls >> p[i];
      if (!ls) throw std::invalid_argument("bad rect line: " + line);
      gamma += rectangle_loop(g, a1, a2, R, T, p).chain;
    } else {
      throw std::invalid_argument("unknown loop line: " + line);
    }
  }
  return validate_loop(g, gamma);
}

}  // namespace lgt
