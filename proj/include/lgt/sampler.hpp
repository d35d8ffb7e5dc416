// Heat-bath Gibbs sampling of the Wilson-action measure on a box, with dense
// edge/plaquette indexing, a counter-based RNG, and batch-means estimators.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "lgt/loops.hpp"
#include "lgt/zn.hpp"

namespace lgt {

// Counter-based generator: the stream is a pure function of (seed, counter).
struct CounterRng {
  uint64_t seed = 0;
  uint64_t counter = 0;
  explicit CounterRng(uint64_t s) : seed(s) {}
  uint64_t next_u64() {
    uint64_t z = seed + (++counter) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
};

// Dense index structure for the edges and plaquettes of a primal box.
class BoxLattice {
 public:
  BoxLattice(const LatticeGeometry& g, const Box& box);

  int dim() const { return dim_; }
  const Box& box() const { return box_; }
  int vertex_count() const { return n_vertices_; }
  int edge_slots() const { return n_vertices_ * dim_; }
  int plaq_slots() const { return n_vertices_ * n_pairs_; }
  const std::vector<int>& edges() const { return valid_edges_; }
  const std::vector<int>& plaquettes() const { return valid_plaqs_; }

  bool edge_valid(int e) const { return edge_valid_[e]; }
  bool plaq_valid(int p) const { return plaq_valid_[p]; }

  int vertex_index(const Coord& c) const;
  Coord vertex_coord(int v) const;
  int edge_index(const OrientedCell& c) const;      // positive edge cell
  OrientedCell edge_cell(int e) const;
  int plaq_index(const OrientedCell& c) const;      // positive plaquette cell
  OrientedCell plaq_cell(int p) const;

  struct Staple {
    int32_t plaq;
    int8_t sign;  // coefficient of the edge in the plaquette's boundary
  };
  const std::vector<Staple>& staples(int e) const { return staples_[e]; }
  struct PlaqEdge {
    int32_t edge;
    int8_t sign;
  };
  const std::array<PlaqEdge, 4>& plaq_edges(int p) const { return plaq_edges_[p]; }

  // Distance-2 greedy coloring of the edge interaction graph (edges sharing
  // a plaquette get distinct colors); computed on demand, cached.
  const std::vector<std::vector<int>>& colors() const;

 private:
  int dim_, n_pairs_, n_vertices_;
  Box box_;
  std::array<int, kMaxDim> dims_{}, vstride_{};
  std::array<std::pair<int, int>, 15> pairs_{};
  std::array<std::array<int, kMaxDim>, kMaxDim> pair_index_{};
  std::vector<char> edge_valid_, plaq_valid_;
  std::vector<int> valid_edges_, valid_plaqs_;
  std::vector<std::vector<Staple>> staples_;
  std::vector<std::array<PlaqEdge, 4>> plaq_edges_;
  mutable std::vector<std::vector<int>> colors_;
};

enum class Schedule { kSequential, kColored };

struct SamplerConfig {
  uint64_t seed = 1;
  int thermalization = 100;
  int sweeps = 1000;       // measurement sweeps
  int stride = 1;          // measure every `stride` sweeps
  Schedule schedule = Schedule::kSequential;
  int chains = 1;
};

// sigma: one Z_n value per positively oriented edge; d sigma maintained
// alongside per positively oriented plaquette.
class SpinConfiguration {
 public:
  SpinConfiguration(const BoxLattice& lat, const Representation& rep);

  const BoxLattice& lattice() const { return *lat_; }
  const Representation& rep() const { return *rep_; }
  int edge_value(int e) const { return sigma_[e]; }
  int plaq_value(int p) const { return dsigma_[p]; }
  void set_edge(int e, int v);  // updates the cached plaquette field
  int nonzero_plaquettes() const { return nonzero_plaqs_; }

  double action(double beta) const;  // both orientations: -2 sum Re rho(dsigma)
  // Exact conditional distribution of edge e given all other edges.
  std::vector<double> local_conditional(int e, double beta) const;

  // d sigma as a 2-form, box-aware; recomputed from sigma (cross-checks the
  // cached field).
  Form plaquette_field(const LatticeGeometry& g) const;
  Form edge_form(const LatticeGeometry& g) const;

 private:
  friend class HeatBath;
  const BoxLattice* lat_;
  const Representation* rep_;
  std::vector<uint8_t> sigma_, dsigma_;
  int nonzero_plaqs_ = 0;
};

class HeatBath {
 public:
  HeatBath(const Representation& rep, double beta);
  void sweep(SpinConfiguration& s, Schedule sched, CounterRng& rng) const;
  double beta() const { return beta_; }

 private:
  void update_edge(SpinConfiguration& s, int e, CounterRng& rng) const;
  const Representation* rep_;
  double beta_;
  std::vector<double> factor_;  // [s*n + g] = exp(2 beta (Re rho(s+g) - 1))
};

// Loop measured on the dense lattice.
struct LoopMeasurement {
  GeneralizedLoop loop;
  std::vector<std::pair<int, int>> edges;  // (edge index, coefficient)
};
LoopMeasurement bind_loop(const BoxLattice& lat, const GeneralizedLoop& loop);

cplx wilson_loop(const SpinConfiguration& s, const LoopMeasurement& m);

struct EstimatorResult {
  cplx mean{};
  double std_error = 0.0;
  int batch_count = 0;
  long long sample_count = 0;
};

// Batch means with batch-size doubling until the lag-1 autocorrelation of the
// batch means drops below 0.1 (or fewer than 20 batches would remain).
EstimatorResult batch_means(const std::vector<double>& xs);
EstimatorResult batch_means_complex(const std::vector<cplx>& xs);
// Pooled over equally long per-chain series.
EstimatorResult batch_means_chains(const std::vector<std::vector<double>>& chains);

// Runs `config.chains` independent chains (in parallel threads) and hands
// each measurement sweep's configuration to `measure` (chain, sweep, state).
void run_chains(const LatticeGeometry& g, const Box& box, const Representation& rep,
                double beta, const SamplerConfig& config,
                const std::function<void(int, int, const SpinConfiguration&)>& measure);

}  // namespace lgt
