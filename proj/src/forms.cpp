#include "lgt/forms.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace lgt {

int Chain::operator[](const OrientedCell& c) const {
  auto it = terms_.find(c.abs().key());
  if (it == terms_.end()) return 0;
  return c.positive() ? it->second : -it->second;
}

void Chain::add(const OrientedCell& c, int coef) {
  if (coef == 0) return;
  if (!c.positive()) coef = -coef;
  uint64_t k = c.abs().key();
  int v = (terms_.count(k) ? terms_[k] : 0) + coef;
  if (v == 0) terms_.erase(k);
  else terms_[k] = v;
}

Chain& Chain::operator+=(const Chain& o) {
  for (auto& [k, v] : o.terms_) add(OrientedCell::from_key(k), v);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  for (auto& [k, v] : o.terms_) add(OrientedCell::from_key(k), -v);
  return *this;
}

Chain Chain::operator-() const {
  Chain q(degree_, dual_);
  for (auto& [k, v] : terms_) q.terms_[k] = -v;
  return q;
}

int Form::operator()(const OrientedCell& c) const {
  auto it = vals_.find(c.abs().key());
  if (it == vals_.end()) return 0;
  return c.positive() ? it->second : reduce_mod(-(long long)it->second, modulus_);
}

void Form::set(const OrientedCell& c, int v) {
  long long val = c.positive() ? v : -(long long)v;
  uint64_t k = c.abs().key();
  int r = reduce_mod(val, modulus_);
  if (r == 0) vals_.erase(k);
  else vals_[k] = r;
}

void Form::add(const OrientedCell& c, int v) {
  long long val = c.positive() ? v : -(long long)v;
  uint64_t k = c.abs().key();
  long long cur = vals_.count(k) ? vals_[k] : 0;
  int r = reduce_mod(cur + val, modulus_);
  if (r == 0) vals_.erase(k);
  else vals_[k] = r;
}

std::vector<OrientedCell> Form::positive_support() const {
  std::vector<OrientedCell> out;
  out.reserve(vals_.size());
  for (auto& [k, v] : vals_) out.push_back(OrientedCell::from_key(k));
  return out;
}

Form& Form::operator+=(const Form& o) {
  if (o.degree_ != degree_ || o.modulus_ != modulus_ || o.dual_ != dual_)
    throw std::domain_error("form mismatch in +=");
  for (auto& [k, v] : o.vals_) add(OrientedCell::from_key(k), v);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.degree_ != degree_ || o.modulus_ != modulus_ || o.dual_ != dual_)
    throw std::domain_error("form mismatch in -=");
  for (auto& [k, v] : o.vals_) add(OrientedCell::from_key(k), -v);
  return *this;
}

Form Form::operator-() const {
  Form f(degree_, modulus_, dual_);
  for (auto& [k, v] : vals_) f.set(OrientedCell::from_key(k), reduce_mod(-(long long)v, modulus_));
  return f;
}

int evaluate(const Form& omega, const Chain& q) {
  if (omega.degree() != q.degree() || omega.dual() != q.dual())
    throw std::domain_error("degree mismatch in evaluate");
  long long acc = 0;
  for (auto& [k, coef] : q.terms()) {
    auto it = omega.values().find(k);
    if (it != omega.values().end()) acc += (long long)coef * it->second;
  }
  return reduce_mod(acc, omega.modulus());
}

Chain boundary_chain(const LatticeGeometry& g, const Chain& q) {
  Chain out(q.degree() - 1, q.dual());
  for (auto& [k, coef] : q.terms())
    for (auto& t : boundary(g, OrientedCell::from_key(k)))
      out.add(t.cell, t.coef * coef);
  return out;
}

Chain coboundary_chain(const LatticeGeometry& g, const Chain& q, const Box* within) {
  Chain out(q.degree() + 1, q.dual());
  for (auto& [k, coef] : q.terms())
    for (auto& t : coboundary(g, OrientedCell::from_key(k), within))
      out.add(t.cell, t.coef * coef);
  return out;
}

Form exterior_derivative(const LatticeGeometry& g, const Form& omega, const Box* within) {
  if (omega.degree() >= g.dim) throw std::domain_error("exterior derivative of a top form");
  Form out(omega.degree() + 1, omega.modulus(), omega.dual());
  int flip = omega.dual() ? -1 : +1;  // dual-lattice convention
  for (auto& [k, v] : omega.values())
    for (auto& t : coboundary(g, OrientedCell::from_key(k), within))
      out.add(t.cell, flip * t.coef * v);
  return out;
}

Form coderivative(const LatticeGeometry& g, const Form& omega, const Box* within) {
  if (omega.degree() < 1) throw std::domain_error("coderivative of a 0-form");
  Form out(omega.degree() - 1, omega.modulus(), omega.dual());
  for (auto& [k, v] : omega.values())
    for (auto& t : boundary(g, OrientedCell::from_key(k))) {
      if (within && !within->contains_cell(t.cell)) continue;
      out.add(t.cell, t.coef * v);
    }
  return out;
}

Form hodge_dual(const LatticeGeometry& g, const Form& omega) {
  Form out(g.dim - omega.degree(), omega.modulus(), !omega.dual());
  for (auto& [k, v] : omega.values()) out.add(hodge_star(g, OrientedCell::from_key(k)), v);
  return out;
}

Form restrict_form(const Form& omega, const std::vector<OrientedCell>& cells) {
  std::map<uint64_t, int> mask;
  for (auto& c : cells) mask[c.abs().key()] |= c.positive() ? 1 : 2;
  for (auto& [k, m] : mask)
    if (m != 3) throw std::domain_error("restriction set is not symmetric");
  Form out(omega.degree(), omega.modulus(), omega.dual());
  for (auto& [k, v] : omega.values())
    if (mask.count(k)) out.set(OrientedCell::from_key(k), v);
  return out;
}

std::optional<OrientedCell> closedness_witness(const LatticeGeometry& g, const Form& omega,
                                               const Box& box) {
  if (omega.degree() >= g.dim) return std::nullopt;  // top forms are closed
  Form d = exterior_derivative(g, omega, &box);
  if (d.is_zero()) return std::nullopt;
  return OrientedCell::from_key(d.values().begin()->first);
}

std::optional<Box> support_bbox(const LatticeGeometry& g, const Form& omega, int pad) {
  if (omega.is_zero()) return std::nullopt;
  Coord lo{}, hi{};
  bool first = true;
  bool dual = omega.dual();
  for (auto& [k, v] : omega.values()) {
    OrientedCell c = OrientedCell::from_key(k);
    Coord clo{}, chi{};
    cell_extent(c, g.dim, clo, chi);
    for (int i = 0; i < g.dim; ++i) {
      if (first || clo[i] < lo[i]) lo[i] = clo[i];
      if (first || chi[i] > hi[i]) hi[i] = chi[i];
    }
    first = false;
  }
  for (int i = 0; i < g.dim; ++i) {
    lo[i] -= pad;
    hi[i] += pad;
  }
  return Box(g, lo, hi, dual);
}

namespace {

// --- coordinate-sweep potential engine (primal pairing convention) ---------
//
// Solves d eta = omega on the box restricted to axes 1..n_act, peeling the
// top active axis M: omega splits into a part with dx^M and a part without,
// the first is summed along axis M, the second is handled on the bottom
// slice recursively.  When `bv` is set (input vanishes on the sub-box
// boundary, degree <= n_act-1) a closed correction supported away from the
// walls makes the output vanish on the boundary as well.

Form sweep_potential(const LatticeGeometry& g, const Form& omega, const Box& box, int n_act,
                     bool bv) {
  int k = omega.degree();
  Form out(k - 1, omega.modulus(), false);
  if (omega.is_zero()) return out;
  if (n_act == 0 || k == 0) throw std::logic_error("sweep engine: nothing to peel");
  const int M = n_act;
  const int l = box.lower[M - 1], u = box.upper[M - 1];
  const int eps = (k % 2 == 1) ? +1 : -1;  // (-1)^{k-1}

  if (bv && u - l <= 2) {
    // A boundary-vanishing closed form on a slab this thin is zero.
    throw std::logic_error("sweep engine: nonzero boundary-vanishing form on thin slab");
  }

  Form gathered_A(k - 1, omega.modulus(), false);  // column sums of the dx^M part
  for (auto& [key, v] : omega.values()) {
    OrientedCell c = OrientedCell::from_key(key);
    if (c.has_axis(M)) {
      OrientedCell base = c;
      base.axes &= ~(1u << (M - 1));
      for (int t = c.base[M - 1] + 1; t <= u; ++t) {
        OrientedCell oc = base;
        oc.base[M - 1] = t;
        out.add(oc, eps * v);
      }
      OrientedCell ac = base;
      ac.base[M - 1] = l;
      gathered_A.add(ac, eps * v);
    }
  }

  if (!bv) {
    // Bottom-slice remainder, solved recursively and lifted constantly.
    Form collapse(k, omega.modulus(), false);
    for (auto& [key, v] : omega.values()) {
      OrientedCell c = OrientedCell::from_key(key);
      if (!c.has_axis(M) && c.base[M - 1] == l) collapse.add(c, v);
    }
    if (!collapse.is_zero()) {
      Form eta = sweep_potential(g, collapse, box, n_act - 1, false);
      for (auto& [key, v] : eta.values()) {
        OrientedCell c = OrientedCell::from_key(key);
        for (int t = l; t <= u; ++t) {
          OrientedCell oc = c;
          oc.base[M - 1] = t;
          out.add(oc, v);
        }
      }
    }
    return out;
  }

  // Boundary-vanishing route: subtract a closed correction R carrying the
  // accumulated column sums off the top slab through the interior at t0.
  if (!gathered_A.is_zero()) {
    if (k - 1 == 0)
      throw std::logic_error("sweep engine: nonzero column sums for a 1-form with bv input");
    Form Z = sweep_potential(g, gathered_A, box, n_act - 1, true);
    const int t0 = l + 1;
    const int zeta = (k % 2 == 0) ? +1 : -1;  // (-1)^k
    for (auto& [key, v] : gathered_A.values()) {
      OrientedCell c = OrientedCell::from_key(key);
      for (int t = t0 + 1; t <= u; ++t) {
        OrientedCell oc = c;
        oc.base[M - 1] = t;
        out.add(oc, -v);
      }
    }
    for (auto& [key, v] : Z.values()) {
      OrientedCell c = OrientedCell::from_key(key);
      OrientedCell oc = c;
      oc.base[M - 1] = t0;
      oc.axes |= 1u << (M - 1);
      out.add(oc, -zeta * v);
    }
  }
  return out;
}

Form mirror(const LatticeGeometry& g, const Form& f, bool to_dual) {
  Form out(f.degree(), f.modulus(), to_dual);
  for (auto& [key, v] : f.values()) {
    OrientedCell c = OrientedCell::from_key(key);
    OrientedCell mc;
    for (int i = 0; i < g.dim; ++i) mc.base[i] = -c.base[i];
    mc.axes = c.axes;
    mc.dual = to_dual;
    mc.sign = +1;
    out.add(mc, v);
  }
  return out;
}

Box mirror_box(const LatticeGeometry& g, const Box& b, bool to_dual) {
  Coord lo{}, hi{};
  for (int i = 0; i < g.dim; ++i) {
    lo[i] = -b.upper[i];
    hi[i] = -b.lower[i];
  }
  return Box(g, lo, hi, to_dual);
}

}  // namespace

Form poincare_potential(const LatticeGeometry& g, const Form& omega, const Box& box) {
  int k = omega.degree();
  if (k < 1 || k > g.dim) throw std::domain_error("potential needs degree in [1,m]");
  if (omega.dual() != box.dual) throw std::domain_error("form/box lattice mismatch");
  for (auto& [key, v] : omega.values())
    if (!box.contains_cell(OrientedCell::from_key(key)))
      throw std::invalid_argument("form has support outside the box");
  if (auto w = closedness_witness(g, omega, box))
    throw std::invalid_argument("form is not closed; witness cell " + w->str(g.dim));

  bool bv = k <= g.dim - 1;
  if (bv)
    for (auto& [key, v] : omega.values())
      if (box.is_boundary_cell(OrientedCell::from_key(key))) {
        bv = false;
        break;
      }

  if (!omega.dual()) return sweep_potential(g, omega, box, g.dim, bv);

  // Dual lattice: mirroring coordinates turns the dual complex into a primal
  // one; the dual-lattice d equals minus the mirrored pairing d.
  Form m = mirror(g, omega, false);
  Form neg = -m;
  Box mb = mirror_box(g, box, false);
  Form eta = sweep_potential(g, neg, mb, g.dim, bv);
  return mirror(g, eta, true);
}

Form copoincare_potential(const LatticeGeometry& g, const Form& omega, const Box& box) {
  int k = omega.degree();
  if (k < 1 || k > g.dim - 1) throw std::domain_error("copotential needs degree in [1,m-1]");
  if (omega.dual() || box.dual) throw std::domain_error("copotential expects primal form and box");
  for (auto& [key, v] : omega.values())
    if (!box.contains_cell(OrientedCell::from_key(key)))
      throw std::invalid_argument("form has support outside the box");
  Form out(k + 1, omega.modulus(), false);
  if (omega.is_zero()) return out;
  {
    Form div = coderivative(g, omega);
    if (!div.is_zero())
      throw std::invalid_argument("form is not delta-closed; witness cell " +
                                  OrientedCell::from_key(div.values().begin()->first).str(g.dim));
  }
  Form s = hodge_dual(g, omega);
  Box d = *support_bbox(g, s, 1);
  Form eta = poincare_potential(g, s, d);
  Form cand = hodge_dual(g, eta);
  for (int sign : {+1, -1}) {
    Form candidate = sign > 0 ? cand : -cand;
    if (coderivative(g, candidate) == omega) {
      for (auto& [key, v] : candidate.values())
        if (!box.contains_cell(OrientedCell::from_key(key)))
          throw std::invalid_argument(
              "box too small: needs the support bounding box fattened by 1");
      return candidate;
    }
  }
  throw std::logic_error("copotential: neither sign matched");
}

std::string serialize_form(const Form& omega) {
  std::ostringstream os;
  os << "form deg=" << omega.degree() << " mod=" << omega.modulus()
     << " dual=" << (omega.dual() ? 1 : 0) << "\n";
  os << std::hex;
  for (auto& [k, v] : omega.values()) os << k << " " << std::dec << v << std::hex << "\n";
  return os.str();
}

Form parse_form(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  is >> tag;
  if (tag != "form") throw std::invalid_argument("bad form header");
  int deg = 0, mod = 0, dual = 0;
  std::string f1, f2, f3;
  is >> f1 >> f2 >> f3;
  deg = std::stoi(f1.substr(4));
  mod = std::stoi(f2.substr(4));
  dual = std::stoi(f3.substr(5));
  Form out(deg, mod, dual != 0);
  uint64_t key;
  int v;
  while (is >> std::hex >> key >> std::dec >> v) out.set(OrientedCell::from_key(key), v);
  return out;
}

}  // namespace lgt
