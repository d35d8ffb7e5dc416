// Integer k-chains and G-valued k-forms (G = Z_n, or Z when modulus == 0),
// with the discrete operators d, delta, the Hodge dual, restriction, and
// constructive potentials inverting d and delta.

#pragma once

#include <map>
#include <optional>
#include <string>

#include "lgt/geometry.hpp"

namespace lgt {

inline int reduce_mod(long long v, int n) {
  if (n == 0) return int(v);
  int r = int(v % n);
  return r < 0 ? r + n : r;
}

// Finitely supported integer combination of positively oriented k-cells.
class Chain {
 public:
  Chain(int degree, bool dual = false) : degree_(degree), dual_(dual) {}

  int degree() const { return degree_; }
  bool dual() const { return dual_; }
  const std::map<uint64_t, int>& terms() const { return terms_; }

  int operator[](const OrientedCell& c) const;
  void add(const OrientedCell& c, int coef);
  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  Chain operator-() const;
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }
  bool operator==(const Chain& o) const {
    return degree_ == o.degree_ && dual_ == o.dual_ && terms_ == o.terms_;
  }

 private:
  int degree_;
  bool dual_;
  std::map<uint64_t, int> terms_;  // key of positive cell -> nonzero coefficient
};

// G-valued odd function on oriented k-cells, stored on positive cells with
// canonical representatives 0..n-1 (or raw integers for modulus 0).
class Form {
 public:
  Form(int degree, int modulus, bool dual = false)
      : degree_(degree), modulus_(modulus), dual_(dual) {}

  int degree() const { return degree_; }
  int modulus() const { return modulus_; }
  bool dual() const { return dual_; }
  const std::map<uint64_t, int>& values() const { return vals_; }

  int operator()(const OrientedCell& c) const;
  void set(const OrientedCell& c, int v);
  void add(const OrientedCell& c, int v);
  bool is_zero() const { return vals_.empty(); }
  // Number of oriented cells in the support (always even).
  size_t support_size() const { return 2 * vals_.size(); }
  std::vector<OrientedCell> positive_support() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form operator-() const;
  bool operator==(const Form& o) const {
    return degree_ == o.degree_ && modulus_ == o.modulus_ && dual_ == o.dual_ &&
           vals_ == o.vals_;
  }

 private:
  int degree_;
  int modulus_;
  bool dual_;
  std::map<uint64_t, int> vals_;
};

// Linear pairing omega(q), reduced in G.
int evaluate(const Form& omega, const Chain& q);

Chain boundary_chain(const LatticeGeometry& g, const Chain& q);
Chain coboundary_chain(const LatticeGeometry& g, const Chain& q, const Box* within = nullptr);

// Exterior derivative.  On the primal lattice d omega(c) = omega(boundary c);
// on the dual lattice the sign is flipped, matching the dual-lattice
// convention that keeps the star identities below exact.
Form exterior_derivative(const LatticeGeometry& g, const Form& omega,
                         const Box* within = nullptr);

// Coderivative: delta omega(c) = omega(coboundary c).
Form coderivative(const LatticeGeometry& g, const Form& omega, const Box* within = nullptr);

// Hodge dual: (*omega)(*c) = omega(c); maps k-forms to (m-k)-forms on the
// other lattice.  star(star(omega)) = (-1)^{k(m-k)} omega.
Form hodge_dual(const LatticeGeometry& g, const Form& omega);

// Restriction to a symmetric set of oriented cells (throws if asymmetric).
Form restrict_form(const Form& omega, const std::vector<OrientedCell>& cells);

// First (k+1)-cell of the box where d omega != 0, if any.
std::optional<OrientedCell> closedness_witness(const LatticeGeometry& g, const Form& omega,
                                               const Box& box);

// Finds omega' with d omega' = omega for a closed k-form on a box (1 <= k <= m).
// Deterministic coordinate-sweep construction.  If omega vanishes on the
// boundary cells of the box and k <= m-1, the result vanishes there too.
Form poincare_potential(const LatticeGeometry& g, const Form& omega, const Box& box);

// Finds omega' with delta omega' = omega for a delta-closed k-form
// (1 <= k <= m-1) supported in the box; the result is zero outside the box.
// Route: Hodge dual, boundary-vanishing potential on the dual lattice, dual
// back.  Requires the box to contain the support's bounding box fattened by 1.
Form copoincare_potential(const LatticeGeometry& g, const Form& omega, const Box& box);

// Bounding box of the positive support, fattened by `pad`; nullopt for the
// zero form.
std::optional<Box> support_bbox(const LatticeGeometry& g, const Form& omega, int pad);

// Line-based text serialization (one cell key + value per line).
std::string serialize_form(const Form& omega);
Form parse_form(const std::string& text);

}  // namespace lgt
