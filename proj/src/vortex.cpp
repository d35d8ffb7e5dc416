#include "lgt/vortex.hpp"

#include <algorithm>
#include <set>

namespace lgt {

namespace {

// Least 3-cell of the box where the partial form fails to close, if any.
std::optional<OrientedCell> least_open_3cell(const LatticeGeometry& g, const Form& part,
                                             const Box& box) {
  Form d = exterior_derivative(g, part, &box);
  if (d.is_zero()) return std::nullopt;
  return OrientedCell::from_key(d.values().begin()->first);
}

// Incidence of the support plaquettes on the 3-cells of their coboundaries,
// for fast closedness tests of support subsets.
struct SubsetScanner {
  int modulus;
  std::vector<OrientedCell> supp;
  std::vector<int> value;
  std::vector<std::vector<std::pair<int, int>>> contrib;  // per plaquette: (cube id, coef*value)
  int n_cubes = 0;

  SubsetScanner(const LatticeGeometry& g, const Form& omega, const Box& box)
      : modulus(omega.modulus()), supp(omega.positive_support()) {
    std::map<uint64_t, int> cube_ids;
    contrib.resize(supp.size());
    value.resize(supp.size());
    for (size_t i = 0; i < supp.size(); ++i) {
      value[i] = omega(supp[i]);
      for (auto& t : coboundary(g, supp[i], &box)) {
        auto [it, fresh] = cube_ids.emplace(t.cell.key(), n_cubes);
        if (fresh) ++n_cubes;
        contrib[i].emplace_back(it->second, t.coef * value[i]);
      }
    }
  }

  // Gray-code scan over proper nonempty subsets containing plaquette 0;
  // returns the subset bitmask of a closed restriction, if any.
  std::optional<uint64_t> closed_subset() const {
    size_t s = supp.size();
    if (s < 2 || s > 40) return std::nullopt;
    std::vector<int> sum(n_cubes, 0);
    int nonzero = 0;
    auto toggle = [&](size_t i, int dir) {
      for (auto& [cube, dv] : contrib[i]) {
        int before = sum[cube];
        int after = reduce_mod((long long)before + dir * dv, modulus);
        sum[cube] = after;
        nonzero += (after != 0) - (before != 0);
      }
    };
    std::vector<char> in(s, 0);
    toggle(0, +1);
    in[0] = 1;
    if (nonzero == 0) return uint64_t(1);  // the seed plaquette alone closes
    uint64_t full = (s >= 64) ? ~0ull : ((1ull << (s - 1)) - 1);
    for (uint64_t gidx = 1; gidx <= full; ++gidx) {
      size_t bit = size_t(__builtin_ctzll(gidx)) + 1;  // plaquette toggled by this Gray step
      if (in[bit]) {
        toggle(bit, -1);
        in[bit] = 0;
      } else {
        toggle(bit, +1);
        in[bit] = 1;
      }
      uint64_t gray = gidx ^ (gidx >> 1);
      if (gray == full) continue;  // the full support is not a proper subset
      if (nonzero == 0) {
        uint64_t mask = 1;  // plaquette 0
        for (size_t i = 1; i < s; ++i)
          if (in[i]) mask |= 1ull << i;
        return mask;
      }
    }
    return std::nullopt;
  }

  std::vector<OrientedCell> subset_cells(uint64_t mask) const {
    std::vector<OrientedCell> out;
    for (size_t i = 0; i < supp.size(); ++i)
      if (mask >> i & 1) {
        out.push_back(supp[i]);
        out.push_back(-supp[i]);
      }
    return out;
  }
};

// Support components under "shares a 3-cell" adjacency; separated pieces are
// independently closed, so multiple components mean reducible.
std::vector<std::vector<size_t>> threecell_components(const LatticeGeometry& g,
                                                      const Form& omega, const Box& box) {
  auto supp = omega.positive_support();
  std::map<uint64_t, std::vector<size_t>> by_cube;
  for (size_t i = 0; i < supp.size(); ++i)
    for (auto& t : coboundary(g, supp[i], &box)) by_cube[t.cell.key()].push_back(i);
  std::vector<int> comp(supp.size(), -1);
  int nc = 0;
  for (size_t i = 0; i < supp.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<size_t> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      for (auto& t : coboundary(g, supp[cur], &box))
        for (size_t j : by_cube[t.cell.key()])
          if (comp[j] < 0) {
            comp[j] = nc;
            stack.push_back(j);
          }
    }
    ++nc;
  }
  std::vector<std::vector<size_t>> out(nc);
  for (size_t i = 0; i < supp.size(); ++i) out[comp[i]].push_back(i);
  return out;
}

}  // namespace

Irreducibility is_irreducible(const LatticeGeometry& g, const Form& omega, const Box& box) {
  if (omega.is_zero()) return Irreducibility::kReducible;  // vortices are nontrivial
  if (int(omega.support_size()) > kIrreducibilityBudget) return Irreducibility::kUnchecked;
  if (threecell_components(g, omega, box).size() > 1) return Irreducibility::kReducible;
  SubsetScanner scan(g, omega, box);
  return scan.closed_subset() ? Irreducibility::kReducible : Irreducibility::kIrreducible;
}

namespace {

void decompose_into(const LatticeGeometry& g, Form remaining, const Box& box,
                    std::vector<Vortex>& out) {
  while (!remaining.is_zero()) {
    // Seed at the least unclaimed support plaquette and grow until closed.
    OrientedCell seed = OrientedCell::from_key(remaining.values().begin()->first);
    Form part(2, remaining.modulus(), remaining.dual());
    part.set(seed, remaining(seed));
    while (auto open = least_open_3cell(g, part, box)) {
      std::optional<OrientedCell> next;
      for (auto& t : boundary(g, *open)) {
        if (part(t.cell) != 0) continue;
        if (remaining(t.cell) == 0) continue;
        if (!next || t.cell.key() < next->key()) next = t.cell;
      }
      if (!next) throw std::invalid_argument("decompose: form is not closed in the box");
      part.set(*next, remaining(*next));
    }
    remaining -= part;

    Irreducibility irr = is_irreducible(g, part, box);
    if (irr == Irreducibility::kReducible && part.values().size() > 1) {
      SubsetScanner scan(g, part, box);
      auto comps = threecell_components(g, part, box);
      if (comps.size() > 1) {
        for (auto& comp : comps) {
          Form piece(2, part.modulus(), part.dual());
          for (size_t i : comp) piece.set(scan.supp[i], scan.value[i]);
          decompose_into(g, piece, box, out);
        }
        continue;
      }
      if (auto mask = scan.closed_subset()) {
        Form half = restrict_form(part, scan.subset_cells(*mask));
        Form rest = part;
        rest -= half;
        decompose_into(g, half, box, out);
        decompose_into(g, rest, box, out);
        continue;
      }
    }
    Vortex v;
    v.form = part;
    v.certificate = (irr == Irreducibility::kIrreducible)
                        ? Vortex::Certificate::kChecked
                        : Vortex::Certificate::kAssumedByConstruction;
    out.push_back(v);
  }
}

}  // namespace

std::vector<Vortex> decompose(const LatticeGeometry& g, const Form& omega, const Box& box) {
  if (omega.degree() != 2 || omega.dual())
    throw std::domain_error("decompose expects a primal 2-form");
  if (auto w = closedness_witness(g, omega, box))
    throw std::invalid_argument("decompose: form is not closed; witness " + w->str(g.dim));
  std::vector<Vortex> out;
  decompose_into(g, omega, box, out);
  std::sort(out.begin(), out.end(), [](const Vortex& a, const Vortex& b) {
    return a.form.values().begin()->first < b.form.values().begin()->first;
  });
  return out;
}

Form minimal_vortex(const LatticeGeometry& g, const OrientedCell& edge, int coef, int modulus,
                    const Box& box) {
  if (edge.degree() != 1 || edge.dual)
    throw std::domain_error("minimal vortex needs a primal edge");
  if (reduce_mod(coef, modulus) == 0)
    throw std::domain_error("minimal vortex needs a nonzero value");
  if (int(coboundary(g, edge, &box).size()) != 2 * (g.dim - 1))
    throw std::domain_error("edge too close to the box boundary for a minimal vortex");
  Form f(1, modulus);
  f.set(edge, coef);
  return exterior_derivative(g, f, &box);
}

std::optional<std::pair<OrientedCell, int>> classify_minimal(const LatticeGeometry& g,
                                                             const Form& omega,
                                                             const Box& box) {
  if (omega.is_zero() || int(omega.support_size()) != 4 * (g.dim - 1)) return std::nullopt;
  OrientedCell p0 = OrientedCell::from_key(omega.values().begin()->first);
  for (auto& et : boundary(g, p0)) {
    OrientedCell e = et.cell.abs();
    if (int(coboundary(g, e, &box).size()) != 2 * (g.dim - 1)) continue;
    // If omega = d(v dx_e) then omega(p0) = v * (coefficient of e in bd p0).
    int bcoef = et.cell.positive() ? et.coef : -et.coef;
    int v = reduce_mod((long long)omega(p0) * bcoef, omega.modulus());
    if (reduce_mod(v, omega.modulus()) == 0) continue;
    if (minimal_vortex(g, e, v, omega.modulus(), box) == omega) return std::make_pair(e, v);
  }
  return std::nullopt;
}

WilsonPrimeContext make_wilson_prime_context(const LatticeGeometry& g, const BoxLattice& lat,
                                             const GeneralizedLoop& loop) {
  if (g.dim != 4)
    throw std::domain_error("the corrected observable is defined on the 4d lattice");
  WilsonPrimeContext ctx;
  ctx.loop = loop;
  ctx.gamma_c = corner_restriction(g, loop);
  ctx.gamma_1 = straight_part(g, loop);
  for (auto& [k, c] : ctx.gamma_1.terms()) {
    OrientedCell e = OrientedCell::from_key(k);
    auto cob = coboundary(g, e);  // canonical (key) order
    WilsonPrimeContext::EdgeData d;
    d.edge = lat.edge_index(e);
    d.coef = c;
    d.p_fixed = -1;
    d.p_sign = 0;
    for (auto& t : cob) {
      if (!lat.box().contains_cell(t.cell))
        throw std::domain_error(
            "loop too close to the box boundary for the corrected observable");
      int pi = lat.plaq_index(t.cell);
      d.cob.emplace_back(pi, t.coef);
      if (d.p_fixed < 0) {
        d.p_fixed = pi;
        d.p_sign = t.coef;
      }
    }
    ctx.straight.push_back(d);
  }
  return ctx;
}

namespace {
bool edge_disagrees(const WilsonPrimeContext::EdgeData& d, const SpinConfiguration& s) {
  const auto& rep = s.rep();
  int first = rep.mod(d.cob[0].second * s.plaq_value(d.cob[0].first));
  for (auto& [pi, sg] : d.cob)
    if (rep.mod(sg * s.plaq_value(pi)) != first) return true;
  return false;
}
}  // namespace

Chain gamma_prime(const WilsonPrimeContext& ctx, const SpinConfiguration& s,
                  const BoxLattice& lat) {
  Chain out(1);
  for (auto& d : ctx.straight)
    if (edge_disagrees(d, s)) out.add(lat.edge_cell(d.edge), d.coef);
  return out;
}

WilsonPrimeSample wilson_prime(const WilsonPrimeContext& ctx, const SpinConfiguration& s) {
  const auto& rep = s.rep();
  long long acc = 0;
  int gp = 0;
  for (auto& d : ctx.straight) {
    if (edge_disagrees(d, s)) ++gp;
    else acc += (long long)d.coef * d.p_sign * s.plaq_value(d.p_fixed);
  }
  return {rep.rho(rep.mod(acc)), gp};
}

int vortex_pairing(const Form& nu, const Chain& q) { return evaluate(nu, q); }

bool far_vortex_vanishes(const LatticeGeometry& g, const Form& nu, const OrientedSurface& q,
                         const GeneralizedLoop& loop, const Box& ambient) {
  if (nu.is_zero()) return true;
  // The vanishing criterion holds for any box containing the support; the
  // tight bounding box gives the weakest hypothesis.  (The conservative
  // width bound b = 24 for small irreducible configurations lives in the
  // theory constants, where it feeds the envelope; a width-24 box cannot
  // fit desk-scale ambient lattices.)
  Box b = *support_bbox(g, nu, 0);
  for (auto& [k, v] : nu.values())
    if (!b.contains_cell(OrientedCell::from_key(k))) return false;
  Box bss = b.dual_box().dual_box();
  for (int i = 0; i < g.dim; ++i)
    if (bss.lower[i] < ambient.lower[i] || bss.upper[i] > ambient.upper[i]) return false;
  for (auto& [k, c] : q.chain.terms()) {
    OrientedCell p = OrientedCell::from_key(k);
    if (!bss.contains_cell(p)) continue;
    for (auto& et : boundary(g, p))
      if (loop.chain[et.cell] != 0) return false;  // surface plaquette not internal
  }
  if (vortex_pairing(nu, q.chain) != 0)
    throw std::logic_error("far vortex pairing is nonzero despite the vanishing criterion");
  return true;
}

std::vector<Form> enumerate_irreducible(const LatticeGeometry& g, const OrientedCell& p0,
                                        int M, int modulus, const Box& box) {
  if (M < 6 || M > 7) throw std::domain_error("enumeration budget allows M in {6,7}");
  if (modulus < 2) throw std::domain_error("enumeration needs a finite modulus");
  std::set<std::string> seen;
  std::vector<Form> out;
  struct Rec {
    const LatticeGeometry& g;
    const Box& box;
    int M, modulus;
    std::set<std::string>& seen;
    std::vector<Form>& out;
    void go(Form& part, int k) {
      auto open = least_open_3cell(g, part, box);
      if (!open) {
        if (k != M) return;  // closed early: smaller support than the target
        if (is_irreducible(g, part, box) != Irreducibility::kIrreducible) return;
        if (seen.insert(serialize_form(part)).second) out.push_back(part);
        return;
      }
      if (k == M) return;
      for (auto& t : boundary(g, *open)) {
        if (part(t.cell) != 0) continue;
        if (!box.contains_cell(t.cell)) continue;
        for (int v = 1; v < modulus; ++v) {
          part.set(t.cell, v);
          go(part, k + 1);
          part.set(t.cell, 0);
        }
      }
    }
  } rec{g, box, M, modulus, seen, out};
  for (int v = 1; v < modulus; ++v) {
    Form part(2, modulus);
    part.set(p0.abs(), v);
    rec.go(part, 1);
  }
  return out;
}

CensusRow census_sample(const LatticeGeometry& g, const SpinConfiguration& s,
                        const GeneralizedLoop* loop, int sample_index) {
  CensusRow row;
  row.sample = sample_index;
  if (s.nonzero_plaquettes() == 0) return row;
  const BoxLattice& lat = s.lattice();
  Form dsigma(2, s.rep().n);
  for (int p : lat.plaquettes())
    if (s.plaq_value(p)) dsigma.set(lat.plaq_cell(p), s.plaq_value(p));
  auto comps = decompose(g, dsigma, lat.box());
  row.components = int(comps.size());
  for (auto& v : comps) {
    int sz = int(v.form.support_size());
    if (sz <= 24) ++row.size_le_24;
    else ++row.size_gt_24;
    if (sz == 4 * (g.dim - 1)) {
      auto cls = classify_minimal(g, v.form, lat.box());
      if (cls) {
        ++row.minimal;
        if (loop && loop->chain[cls->first] != 0) ++row.minimal_on_loop;
        else ++row.minimal_off_loop;
      }
    }
  }
  return row;
}

}  // namespace lgt
