#include "lgt/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace lgt {

namespace {

constexpr int kCoordBits = 9;
constexpr int kCoordBias = 256;

void check_coord_range(const Coord& base, int dim) {
  for (int i = 0; i < dim; ++i) {
    if (base[i] < kCoordMin || base[i] > kCoordMax)
      throw std::domain_error("cell coordinate out of packable range");
  }
}

}  // namespace

uint64_t OrientedCell::key() const {
  uint64_t k = dual ? 1u : 0u;
  for (int i = 0; i < kMaxDim; ++i) k = (k << kCoordBits) | uint64_t(base[i] + kCoordBias);
  // Axis mask with axis 1 at the top bit of the field, complemented so that
  // key order matches lexicographic order on sorted axis lists of equal size.
  uint64_t rev = 0;
  for (int j = 0; j < kMaxDim; ++j)
    if ((axes >> j) & 1u) rev |= 1u << (kMaxDim - 1 - j);
  k = (k << kMaxDim) | (~rev & ((1u << kMaxDim) - 1));
  return k;
}

OrientedCell OrientedCell::from_key(uint64_t k, int sign) {
  OrientedCell c;
  uint64_t comp = k & ((1u << kMaxDim) - 1);
  k >>= kMaxDim;
  uint64_t rev = ~comp & ((1u << kMaxDim) - 1);
  for (int j = 0; j < kMaxDim; ++j)
    if ((rev >> (kMaxDim - 1 - j)) & 1u) c.axes |= 1u << j;
  for (int i = kMaxDim - 1; i >= 0; --i) {
    c.base[i] = int(k & ((1u << kCoordBits) - 1)) - kCoordBias;
    k >>= kCoordBits;
  }
  c.dual = k & 1u;
  c.sign = int8_t(sign);
  return c;
}

std::string OrientedCell::str(int dim) const {
  std::ostringstream os;
  os << (sign > 0 ? "+" : "-") << (dual ? "d" : "p") << "(";
  for (int i = 0; i < dim; ++i) os << base[i] << (i + 1 < dim ? "," : "");
  os << ";";
  bool first = true;
  for (int j = 1; j <= dim; ++j)
    if (has_axis(j)) {
      os << (first ? "" : " ") << j;
      first = false;
    }
  os << ")";
  return os.str();
}

std::optional<OrientedCell> canonicalize(const LatticeGeometry& g, const Coord& base,
                                         const std::vector<int>& axes, int sign, bool dual) {
  check_coord_range(base, g.dim);
  std::vector<int> a = axes;
  for (int j : a)
    if (j < 1 || j > g.dim) throw std::domain_error("axis index out of range");
  // Bubble sort, counting transpositions.
  int swaps = 0;
  for (size_t i = 0; i + 1 < a.size(); ++i)
    for (size_t t = 0; t + 1 < a.size() - i; ++t)
      if (a[t] > a[t + 1]) {
        std::swap(a[t], a[t + 1]);
        ++swaps;
      }
  for (size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i] == a[i + 1]) return std::nullopt;
  OrientedCell c;
  c.base = base;
  for (int j : a) c.axes |= 1u << (j - 1);
  c.sign = int8_t((swaps % 2 == 0) ? sign : -sign);
  c.dual = dual;
  return c;
}

OrientedCell make_cell(const LatticeGeometry& g, const Coord& base,
                       std::initializer_list<int> axes, int sign, bool dual) {
  auto c = canonicalize(g, base, std::vector<int>(axes), sign, dual);
  if (!c) throw std::domain_error("repeated axis in make_cell");
  return *c;
}

OrientedCell make_vertex(const LatticeGeometry& g, const Coord& base, int sign, bool dual) {
  return make_cell(g, base, {}, sign, dual);
}

Box::Box(const LatticeGeometry& g, const Coord& lo, const Coord& hi, bool dual_)
    : lower(lo), upper(hi), dual(dual_), dim(g.dim) {
  for (int i = 0; i < dim; ++i)
    if (lo[i] >= hi[i]) throw std::domain_error("box requires lower < upper componentwise");
}

bool Box::contains_point(const Coord& p) const {
  for (int i = 0; i < dim; ++i)
    if (p[i] < lower[i] || p[i] > upper[i]) return false;
  return true;
}

void cell_extent(const OrientedCell& c, int dim, Coord& lo, Coord& hi) {
  for (int i = 0; i < dim; ++i) {
    int inc = (c.axes >> i) & 1u;
    if (c.dual) {
      lo[i] = c.base[i] - inc;
      hi[i] = c.base[i];
    } else {
      lo[i] = c.base[i];
      hi[i] = c.base[i] + inc;
    }
  }
}

bool Box::contains_cell(const OrientedCell& c) const {
  if (c.dual != dual) return false;
  Coord lo{}, hi{};
  cell_extent(c, dim, lo, hi);
  for (int i = 0; i < dim; ++i)
    if (lo[i] < lower[i] || hi[i] > upper[i]) return false;
  return true;
}

bool Box::is_boundary_cell(const OrientedCell& c) const {
  if (c.dual != dual) return false;
  Coord lo{}, hi{};
  cell_extent(c, dim, lo, hi);
  bool intersects = true, strictly_inside = true;
  for (int i = 0; i < dim; ++i) {
    if (lo[i] > upper[i] || hi[i] < lower[i]) intersects = false;
    if (!(lo[i] > lower[i] && hi[i] < upper[i])) strictly_inside = false;
  }
  return intersects && !strictly_inside;
}

bool Box::lies_in_boundary(const OrientedCell& c) const {
  if (c.dual != dual) return false;
  Coord lo{}, hi{};
  cell_extent(c, dim, lo, hi);
  bool within = true, pinned = false;
  for (int i = 0; i < dim; ++i) {
    if (lo[i] < lower[i] || hi[i] > upper[i]) within = false;
    if (lo[i] == hi[i] && (lo[i] == lower[i] || lo[i] == upper[i])) pinned = true;
  }
  return within && pinned;
}

Box Box::dual_box() const {
  Box b = *this;
  b.dual = !dual;
  for (int i = 0; i < dim; ++i) {
    if (!dual) b.lower[i] = lower[i] - 1;   // primal -> dual
    else b.upper[i] = upper[i] + 1;         // dual -> primal
  }
  return b;
}

long long Box::vertex_count() const {
  long long n = 1;
  for (int i = 0; i < dim; ++i) n *= upper[i] - lower[i] + 1;
  return n;
}

std::string Box::str() const {
  std::ostringstream os;
  os << (dual ? "dual" : "primal");
  for (int i = 0; i < dim; ++i) os << " [" << lower[i] << "," << upper[i] << "]";
  return os.str();
}

std::vector<CellTerm> boundary(const LatticeGeometry& g, const OrientedCell& c) {
  int k = c.degree();
  if (k < 1) throw std::domain_error("boundary of a 0-cell is undefined");
  std::vector<int> axes;
  for (int j = 1; j <= g.dim; ++j)
    if (c.has_axis(j)) axes.push_back(j);
  int step = c.dual ? -1 : +1;  // dual 1-cells run along -e_j
  std::vector<CellTerm> out;
  out.reserve(2 * k);
  for (int r = 0; r < k; ++r) {
    int j = axes[r];
    int sgn_near = ((r + 1) % 2 == 0) ? +1 : -1;  // (-1)^{r+1} with 1-based r
    OrientedCell face = c.abs();
    face.axes &= ~(1u << (j - 1));
    out.push_back({face, c.sign * sgn_near});
    OrientedCell far = face;
    far.base[j - 1] += step;
    check_coord_range(far.base, g.dim);
    out.push_back({far, -c.sign * sgn_near});
  }
  return out;
}

std::vector<CellTerm> coboundary(const LatticeGeometry& g, const OrientedCell& c,
                                 const Box* within) {
  int k = c.degree();
  if (k > g.dim - 1) throw std::domain_error("coboundary of a top cell is undefined");
  int step = c.dual ? -1 : +1;
  std::vector<CellTerm> out;
  for (int t = 1; t <= g.dim; ++t) {
    if (c.has_axis(t)) continue;
    // Position of t in the enlarged sorted axis list, 1-based.
    int pos = 1;
    for (int j = 1; j < t; ++j)
      if (c.has_axis(j)) ++pos;
    int sgn_near = (pos % 2 == 0) ? +1 : -1;  // matches boundary's (-1)^{pos} term at base
    OrientedCell up = c.abs();
    up.axes |= 1u << (t - 1);
    // up based at c.base: boundary(up) contains c.abs() with coefficient (-1)^{pos}.
    out.push_back({up, c.sign * sgn_near});
    OrientedCell up2 = up;
    up2.base[t - 1] -= step;
    check_coord_range(up2.base, g.dim);
    // boundary(up2) contains c.abs() with coefficient (-1)^{pos+1}.
    out.push_back({up2, -c.sign * sgn_near});
  }
  if (within) {
    std::vector<CellTerm> filtered;
    for (auto& t : out)
      if (within->contains_cell(t.cell)) filtered.push_back(t);
    return filtered;
  }
  return out;
}

namespace {
// Parity of the permutation mapping (1..m) to (first, second), where first
// and second are disjoint increasing lists covering {1..m}.
int perm_sign(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> p = first;
  p.insert(p.end(), second.begin(), second.end());
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2 == 0) ? +1 : -1;
}
}  // namespace

OrientedCell hodge_star(const LatticeGeometry& g, const OrientedCell& c) {
  std::vector<int> in, comp;
  for (int j = 1; j <= g.dim; ++j)
    (c.has_axis(j) ? in : comp).push_back(j);
  OrientedCell s;
  s.base = c.base;  // stored dual base z equals the primal base a, both ways
  s.dual = !c.dual;
  for (int j : comp) s.axes |= 1u << (j - 1);
  // Both directions carry sgn(cell axes, complement) relative to (1..m).
  s.sign = int8_t(c.sign * perm_sign(in, comp));
  return s;
}

std::vector<std::vector<int>> axis_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Lexicographic enumeration of increasing k-subsets of {1..m}.
  struct Rec {
    int m, k;
    std::vector<std::vector<int>>& out;
    void go(std::vector<int>& cur, int next) {
      if ((int)cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (int j = next; j <= m - (k - (int)cur.size()) + 1; ++j) {
        cur.push_back(j);
        go(cur, j + 1);
        cur.pop_back();
      }
    }
  } rec{m, k, out};
  rec.go(cur, 1);
  return out;
}

std::vector<OrientedCell> cells_in_box(const LatticeGeometry& g, const Box& box, int k,
                                       bool both_orientations) {
  auto subsets = axis_subsets(g.dim, k);
  std::vector<OrientedCell> out;
  Coord p = box.lower;
  // Base-major (lexicographic) iteration keeps the output in key order.
  while (true) {
    for (auto& sub : subsets) {
      OrientedCell c;
      c.base = p;
      c.dual = box.dual;
      c.sign = +1;
      for (int j : sub) c.axes |= 1u << (j - 1);
      if (box.contains_cell(c)) {
        out.push_back(c);
        if (both_orientations) out.push_back(-c);
      }
    }
    int i = g.dim - 1;
    while (i >= 0) {
      if (++p[i] <= box.upper[i]) break;
      p[i] = box.lower[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace lgt
