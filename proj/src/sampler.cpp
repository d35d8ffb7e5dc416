#include "lgt/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lgt {

BoxLattice::BoxLattice(const LatticeGeometry& g, const Box& box) : dim_(g.dim), box_(box) {
  if (box.dual) throw std::domain_error("sampler lattice must be primal");
  n_pairs_ = dim_ * (dim_ - 1) / 2;
  n_vertices_ = 1;
  for (int i = 0; i < dim_; ++i) dims_[i] = box.upper[i] - box.lower[i] + 1;
  for (int i = dim_ - 1; i >= 0; --i) {
    vstride_[i] = n_vertices_;
    n_vertices_ *= dims_[i];
  }
  int pi = 0;
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b) {
      pairs_[pi] = {a, b};
      pair_index_[a][b] = pi;
      ++pi;
    }

  edge_valid_.assign(size_t(n_vertices_) * dim_, 0);
  plaq_valid_.assign(size_t(n_vertices_) * n_pairs_, 0);
  staples_.resize(size_t(n_vertices_) * dim_);
  plaq_edges_.resize(size_t(n_vertices_) * n_pairs_);

  for (int v = 0; v < n_vertices_; ++v) {
    Coord c = vertex_coord(v);
    for (int d = 0; d < dim_; ++d)
      if (c[d] + 1 <= box.upper[d]) {
        edge_valid_[size_t(v) * dim_ + d] = 1;
        valid_edges_.push_back(v * dim_ + d);
      }
    for (int p = 0; p < n_pairs_; ++p) {
      auto [a, b] = pairs_[p];
      if (c[a] + 1 <= box.upper[a] && c[b] + 1 <= box.upper[b]) {
        plaq_valid_[size_t(v) * n_pairs_ + p] = 1;
        int idx = v * n_pairs_ + p;
        valid_plaqs_.push_back(idx);
        // boundary of plaquette (v;a,b): +a@v, +b@v+ea, -a@v+eb, -b@v
        int va = v + vstride_[a], vb = v + vstride_[b];
        plaq_edges_[idx] = {{{int32_t(v * dim_ + a), +1},
                             {int32_t(va * dim_ + b), +1},
                             {int32_t(vb * dim_ + a), -1},
                             {int32_t(v * dim_ + b), -1}}};
        for (auto& pe : plaq_edges_[idx]) staples_[pe.edge].push_back({int32_t(idx), pe.sign});
      }
    }
  }
}

int BoxLattice::vertex_index(const Coord& c) const {
  int v = 0;
  for (int i = 0; i < dim_; ++i) {
    int x = c[i] - box_.lower[i];
    if (x < 0 || x >= dims_[i]) throw std::domain_error("vertex outside box");
    v += x * vstride_[i];
  }
  return v;
}

Coord BoxLattice::vertex_coord(int v) const {
  Coord c{};
  for (int i = 0; i < dim_; ++i) c[i] = box_.lower[i] + v / vstride_[i] % dims_[i];
  return c;
}

int BoxLattice::edge_index(const OrientedCell& c) const {
  if (c.degree() != 1 || !c.positive() || c.dual) throw std::domain_error("not a positive edge");
  int d = 0;
  while (!c.has_axis(d + 1)) ++d;
  int e = vertex_index(c.base) * dim_ + d;
  if (!edge_valid_[e]) throw std::domain_error("edge outside box");
  return e;
}

OrientedCell BoxLattice::edge_cell(int e) const {
  OrientedCell c;
  c.base = vertex_coord(e / dim_);
  c.axes = uint8_t(1u << (e % dim_));
  return c;
}

int BoxLattice::plaq_index(const OrientedCell& c) const {
  if (c.degree() != 2 || !c.positive() || c.dual)
    throw std::domain_error("not a positive plaquette");
  int a = -1, b = -1;
  for (int j = 0; j < dim_; ++j)
    if (c.has_axis(j + 1)) (a < 0 ? a : b) = j;
  int p = vertex_index(c.base) * n_pairs_ + pair_index_[a][b];
  if (!plaq_valid_[p]) throw std::domain_error("plaquette outside box");
  return p;
}

OrientedCell BoxLattice::plaq_cell(int p) const {
  OrientedCell c;
  c.base = vertex_coord(p / n_pairs_);
  auto [a, b] = pairs_[p % n_pairs_];
  c.axes = uint8_t((1u << a) | (1u << b));
  return c;
}

const std::vector<std::vector<int>>& BoxLattice::colors() const {
  if (!colors_.empty()) return colors_;
  std::vector<int> color(edge_slots(), -1);
  int n_colors = 0;
  for (int e : valid_edges_) {
    uint64_t used = 0;
    for (auto& st : staples_[e])
      for (auto& pe : plaq_edges_[st.plaq])
        if (pe.edge != e && color[pe.edge] >= 0) used |= 1ull << color[pe.edge];
    int c = 0;
    while (used >> c & 1) ++c;
    color[e] = c;
    n_colors = std::max(n_colors, c + 1);
  }
  colors_.resize(n_colors);
  for (int e : valid_edges_) colors_[color[e]].push_back(e);
  return colors_;
}

SpinConfiguration::SpinConfiguration(const BoxLattice& lat, const Representation& rep)
    : lat_(&lat), rep_(&rep) {
  sigma_.assign(lat.edge_slots(), 0);
  dsigma_.assign(lat.plaq_slots(), 0);
}

void SpinConfiguration::set_edge(int e, int v) {
  int old = sigma_[e];
  if (old == v) return;
  sigma_[e] = uint8_t(v);
  int delta = rep_->mod(v - old);
  for (auto& st : lat_->staples(e)) {
    int before = dsigma_[st.plaq];
    int after = rep_->mod(before + st.sign * delta);
    dsigma_[st.plaq] = uint8_t(after);
    nonzero_plaqs_ += (after != 0) - (before != 0);
  }
}

double SpinConfiguration::action(double /*beta*/) const {
  double s = 0.0;
  for (int p : lat_->plaquettes()) s += rep_->re_rho(dsigma_[p]);
  return -2.0 * s;
}

std::vector<double> SpinConfiguration::local_conditional(int e, double beta) const {
  const int n = rep_->n;
  std::vector<double> logw(n, 0.0);
  for (auto& st : lat_->staples(e)) {
    int sp = rep_->mod(st.sign * dsigma_[st.plaq] - sigma_[e]);
    for (int g = 0; g < n; ++g) logw[g] += 2.0 * beta * rep_->re_rho(sp + g);
  }
  double mx = *std::max_element(logw.begin(), logw.end());
  double tot = 0.0;
  std::vector<double> w(n);
  for (int g = 0; g < n; ++g) {
    w[g] = std::exp(logw[g] - mx);
    tot += w[g];
  }
  for (auto& x : w) x /= tot;
  return w;
}

Form SpinConfiguration::edge_form(const LatticeGeometry&) const {
  Form f(1, rep_->n);
  for (int e : lat_->edges())
    if (sigma_[e]) f.set(lat_->edge_cell(e), sigma_[e]);
  return f;
}

Form SpinConfiguration::plaquette_field(const LatticeGeometry& g) const {
  Form f = exterior_derivative(g, edge_form(g), &lat_->box());
  for (int p : lat_->plaquettes())
    if (f(lat_->plaq_cell(p)) != dsigma_[p])
      throw std::logic_error("plaquette field cache out of sync");
  return f;
}

HeatBath::HeatBath(const Representation& rep, double beta) : rep_(&rep), beta_(beta) {
  const int n = rep.n;
  factor_.resize(size_t(n) * n);
  for (int s = 0; s < n; ++s)
    for (int g = 0; g < n; ++g)
      factor_[size_t(s) * n + g] = std::exp(2.0 * beta * (rep.re_rho(s + g) - 1.0));
}

void HeatBath::update_edge(SpinConfiguration& s, int e, CounterRng& rng) const {
  const int n = rep_->n;
  const auto& staples = s.lat_->staples(e);
  int sp[12];
  int ns = int(staples.size());
  int cur = s.sigma_[e];
  for (int i = 0; i < ns; ++i) {
    auto& st = staples[i];
    sp[i] = rep_->mod(st.sign * s.dsigma_[st.plaq] - cur);
  }
  double w[64];
  double tot = 0.0;
  for (int g = 0; g < n; ++g) {
    double acc = 1.0;
    for (int i = 0; i < ns; ++i) acc *= factor_[size_t(sp[i]) * n + g];
    w[g] = acc;
    tot += acc;
  }
  double u = rng.uniform() * tot;
  int g = 0;
  double c = w[0];
  while (g + 1 < n && u >= c) c += w[++g];
  if (g != cur) s.set_edge(e, g);
}

void HeatBath::sweep(SpinConfiguration& s, Schedule sched, CounterRng& rng) const {
  if (rep_->n > 64) throw std::domain_error("heat bath supports n <= 64");
  if (24.0 * beta_ * xi(rep_->n) > 600.0)
    throw std::domain_error("beta too large for the tabulated weights");
  if (sched == Schedule::kSequential) {
    for (int e : s.lat_->edges()) update_edge(s, e, rng);
  } else {
    for (auto& cls : s.lat_->colors())
      for (int e : cls) update_edge(s, e, rng);
  }
}

LoopMeasurement bind_loop(const BoxLattice& lat, const GeneralizedLoop& loop) {
  LoopMeasurement m;
  m.loop = loop;
  for (auto& [k, c] : loop.chain.terms())
    m.edges.emplace_back(lat.edge_index(OrientedCell::from_key(k)), c);
  return m;
}

cplx wilson_loop(const SpinConfiguration& s, const LoopMeasurement& m) {
  long long acc = 0;
  for (auto& [e, c] : m.edges) acc += (long long)c * s.edge_value(e);
  return s.rep().rho(s.rep().mod(acc));
}

namespace {
double lag1_autocorr(const std::vector<double>& v) {
  size_t n = v.size();
  if (n < 3) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(n);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    den += (v[i] - mean) * (v[i] - mean);
    if (i + 1 < n) num += (v[i] - mean) * (v[i + 1] - mean);
  }
  return den > 0 ? num / den : 0.0;
}

std::vector<double> batch_series(const std::vector<double>& xs, size_t b) {
  size_t nb = xs.size() / b;
  std::vector<double> means(nb, 0.0);
  for (size_t i = 0; i < nb; ++i) {
    double s = 0.0;
    for (size_t j = 0; j < b; ++j) s += xs[i * b + j];
    means[i] = s / double(b);
  }
  return means;
}

std::vector<double> adaptive_batches(const std::vector<double>& xs) {
  size_t b = 1;
  std::vector<double> bm = batch_series(xs, b);
  while (xs.size() / (2 * b) >= 20 && std::abs(lag1_autocorr(bm)) >= 0.1) {
    b *= 2;
    bm = batch_series(xs, b);
  }
  return bm;
}

EstimatorResult from_batches(double mean, long long total, const std::vector<double>& bm) {
  EstimatorResult r;
  r.mean = mean;
  r.sample_count = total;
  size_t nb = bm.size();
  if (nb >= 2) {
    double m = 0.0;
    for (double x : bm) m += x;
    m /= double(nb);
    double var = 0.0;
    for (double x : bm) var += (x - m) * (x - m);
    var /= double(nb - 1);
    r.std_error = std::sqrt(var / double(nb));
    r.batch_count = int(nb);
  }
  return r;
}
}  // namespace

EstimatorResult batch_means(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  return from_batches(mean, (long long)xs.size(), adaptive_batches(xs));
}

EstimatorResult batch_means_complex(const std::vector<cplx>& xs) {
  std::vector<double> re(xs.size()), im(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    re[i] = xs[i].real();
    im[i] = xs[i].imag();
  }
  EstimatorResult a = batch_means(re), b = batch_means(im);
  EstimatorResult r;
  r.mean = {a.mean.real(), b.mean.real()};
  r.std_error = std::max(a.std_error, b.std_error);
  r.batch_count = a.batch_count;
  r.sample_count = a.sample_count;
  return r;
}

EstimatorResult batch_means_chains(const std::vector<std::vector<double>>& chains) {
  std::vector<double> pooled;
  long long total = 0;
  double mean = 0.0;
  for (auto& xs : chains) {
    total += (long long)xs.size();
    for (double x : xs) mean += x;
  }
  if (total == 0) return {};
  mean /= double(total);
  for (auto& xs : chains) {
    if (xs.empty()) continue;
    auto bm = adaptive_batches(xs);
    pooled.insert(pooled.end(), bm.begin(), bm.end());
  }
  return from_batches(mean, total, pooled);
}

void run_chains(const LatticeGeometry& g, const Box& box, const Representation& rep,
                double beta, const SamplerConfig& config,
                const std::function<void(int, int, const SpinConfiguration&)>& measure) {
  if (config.sweeps <= 0) throw std::domain_error("measurement sweeps must be positive");
  if (config.stride < 1) throw std::domain_error("stride must be >= 1");
  BoxLattice lat(g, box);
  if (config.schedule == Schedule::kColored) lat.colors();  // build before threads share it
  HeatBath hb(rep, beta);
  auto run_one = [&](int chain) {
    CounterRng rng(config.seed + 0x9e3779b97f4a7c15ull * uint64_t(chain));
    SpinConfiguration s(lat, rep);
    for (int t = 0; t < config.thermalization; ++t) hb.sweep(s, config.schedule, rng);
    int n_meas = config.sweeps / config.stride;
    for (int i = 0; i < n_meas; ++i) {
      for (int t = 0; t < config.stride; ++t) hb.sweep(s, config.schedule, rng);
      measure(chain, i, s);
    }
  };
  if (config.chains <= 1) {
    run_one(0);
    return;
  }
  std::vector<std::thread> threads;
  for (int c = 0; c < config.chains; ++c) threads.emplace_back(run_one, c);
  for (auto& t : threads) t.join();
}

}  // namespace lgt
