// Oriented cells of the hypercubic complex on Z^m and of its dual lattice.
//
// Conventions used throughout:
//  * A primal k-cell with base a and axis set {j1<...<jk} spans [a_j, a_j+1]
//    on cell axes and {a_j} elsewhere.
//  * Dual lattice vertices sit at centers of primal m-cells.  A dual vertex
//    is stored as the integer base of the primal m-cell it centers, i.e. the
//    stored point z represents the geometric point z + (1/2,...,1/2).  Dual
//    1-cells run in the -e_j directions, so a dual cell with stored base z
//    spans [z_j-1, z_j] on its axes (in stored coordinates).
//  * Cells are identified by a packed 64-bit key ordering them
//    lexicographically by (base, axes); see OrientedCell::key().

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgt {

inline constexpr int kMaxDim = 6;
inline constexpr int kCoordMin = -255;
inline constexpr int kCoordMax = 255;

using Coord = std::array<int, kMaxDim>;  // unused entries are 0

struct LatticeGeometry {
  int dim;
  explicit LatticeGeometry(int m) : dim(m) {
    if (m < 2 || m > kMaxDim) throw std::domain_error("lattice dimension must be in [2," + std::to_string(kMaxDim) + "]");
  }
};

// An oriented k-cell of the primal or dual lattice.  `axes` is a bitmask
// (bit j-1 set <=> axis j spans the cell); only the sign distinguishes the
// two orientations of a cell.
struct OrientedCell {
  Coord base{};
  uint8_t axes = 0;
  int8_t sign = +1;
  bool dual = false;

  int degree() const { return __builtin_popcount(axes); }
  bool has_axis(int j) const { return (axes >> (j - 1)) & 1u; }
  bool positive() const { return sign > 0; }

  OrientedCell operator-() const {
    OrientedCell c = *this;
    c.sign = -c.sign;
    return c;
  }
  OrientedCell abs() const {
    OrientedCell c = *this;
    c.sign = +1;
    return c;
  }

  // Packed key: [dual][biased coords a1..a6, 9 bits each][complemented axis
  // mask, axis 1 at the top bit].  Key order on positive cells of one lattice
  // and one degree equals lexicographic order on (base, sorted axis list).
  uint64_t key() const;
  static OrientedCell from_key(uint64_t k, int sign = +1);

  bool operator==(const OrientedCell& o) const {
    return key() == o.key() && sign == o.sign;
  }
  std::string str(int dim) const;
};

// A term of an integer chain: positively oriented cell with a coefficient.
struct CellTerm {
  OrientedCell cell;  // sign == +1
  int coef;
};

// Canonicalize (base, axis list, sign): sorts the axes, multiplying the sign
// by the permutation parity.  A repeated axis yields nullopt (the zero cell).
std::optional<OrientedCell> canonicalize(const LatticeGeometry& g, const Coord& base,
                                         const std::vector<int>& axes, int sign,
                                         bool dual = false);

OrientedCell make_cell(const LatticeGeometry& g, const Coord& base,
                       std::initializer_list<int> axes, int sign = +1, bool dual = false);

OrientedCell make_vertex(const LatticeGeometry& g, const Coord& base, int sign = +1,
                         bool dual = false);

// A lattice box [lower, upper] (componentwise, closed; lower < upper).  On
// the dual lattice the bounds are stored coordinates of dual vertices.
struct Box {
  Coord lower{};
  Coord upper{};
  bool dual = false;
  int dim = 0;

  Box() = default;
  Box(const LatticeGeometry& g, const Coord& lo, const Coord& hi, bool dual_ = false);

  bool contains_point(const Coord& p) const;
  bool contains_cell(const OrientedCell& c) const;
  // Closed cell extent intersects the boundary of the solid box.
  bool is_boundary_cell(const OrientedCell& c) const;
  // Closed cell extent is contained in the boundary of the solid box.
  bool lies_in_boundary(const OrientedCell& c) const;

  // The dual box B*: primal [l,u] -> dual [l-1,u]; dual [l,u] -> primal [l,u+1].
  Box dual_box() const;

  long long vertex_count() const;
  std::string str() const;
};

// Per-axis closed extent of a cell in stored coordinates.
void cell_extent(const OrientedCell& c, int dim, Coord& lo, Coord& hi);

// Boundary of an oriented k-cell as a (k-1)-chain; k >= 1.
std::vector<CellTerm> boundary(const LatticeGeometry& g, const OrientedCell& c);

// Coboundary of an oriented k-cell as a (k+1)-chain; k <= m-1.  When `within`
// is given, cells outside the box are dropped.
std::vector<CellTerm> coboundary(const LatticeGeometry& g, const OrientedCell& c,
                                 const Box* within = nullptr);

// Hodge star: bijection between oriented k-cells and oriented (m-k)-cells of
// the other lattice, with the orientation convention sgn(j..., i...).
OrientedCell hodge_star(const LatticeGeometry& g, const OrientedCell& c);

// All k-cells of a box, positively oriented (optionally both orientations),
// emitted in key order (lexicographic base, then axes).
std::vector<OrientedCell> cells_in_box(const LatticeGeometry& g, const Box& box, int k,
                                       bool both_orientations = false);

// All (2k choose ...) strictly increasing k-subsets of {1..m} in lex order.
std::vector<std::vector<int>> axis_subsets(int m, int k);

}  // namespace lgt
