#include "lgt/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "lgt/manifest.hpp"

#ifndef LGT_BUILD_ID
#define LGT_BUILD_ID "unknown"
#endif

namespace lgt {

void VerificationReport::add_exact(const std::string& name, double measured, double bound,
                                   bool ok) {
  checks.push_back({name, ok, measured, bound, bound - measured, -1.0, "exact"});
}

void VerificationReport::add_stat(const std::string& name, double measured, double bound,
                                  double sigma, bool ok) {
  checks.push_back({name, ok, measured, bound, bound - measured, sigma, "statistical"});
}

std::string VerificationReport::table() const {
  std::ostringstream os;
  os << "suite: " << suite << "\n";
  for (auto& c : checks) {
    char line[256];
    snprintf(line, sizeof line, "  [%s] %-58s measured=%-12.5g bound=%-12.5g", c.pass ? "PASS" : "FAIL",
             c.name.c_str(), c.measured, c.bound);
    os << line;
    if (c.sigma >= 0) os << " sigma=" << format_g17(c.sigma);
    os << "\n";
  }
  for (auto& [k, v] : info) os << "  (info) " << k << ": " << v << "\n";
  os << "  => " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string VerificationReport::to_json() const {
  std::ostringstream os;
  os << "{\n  \"suite\": \"" << suite << "\",\n  \"build\": \"" << LGT_BUILD_ID << "\",\n";
  os << "  \"pass\": " << (pass() ? "true" : "false") << ",\n  \"checks\": [\n";
  for (size_t i = 0; i < checks.size(); ++i) {
    auto& c = checks[i];
    os << "    {\"name\": \"" << c.name << "\", \"pass\": " << (c.pass ? "true" : "false")
       << ", \"measured\": " << format_g17(c.measured) << ", \"bound\": " << format_g17(c.bound)
       << ", \"margin\": " << format_g17(c.margin);
    if (c.sigma >= 0) os << ", \"sigma\": " << format_g17(c.sigma);
    os << ", \"provenance\": \"" << c.provenance << "\"}" << (i + 1 < checks.size() ? "," : "")
       << "\n";
  }
  os << "  ],\n  \"info\": {\n";
  for (size_t i = 0; i < info.size(); ++i)
    os << "    \"" << info[i].first << "\": \"" << info[i].second << "\""
       << (i + 1 < info.size() ? "," : "") << "\n";
  os << "  }\n}\n";
  return os.str();
}

VerificationReport verify_monotonicity(const LatticeGeometry& g, const std::vector<Box>& nested,
                                       const Representation& rep, double beta,
                                       const GeneralizedLoop& loop) {
  VerificationReport rep_out;
  rep_out.suite = "monotonicity";
  double prev = 0.0;
  for (size_t i = 0; i < nested.size(); ++i) {
    OracleSpec spec(g, nested[i], rep, beta);
    double v = exact_wilson(spec, loop).real();
    rep_out.info.emplace_back("E[Re W] box " + std::to_string(i), format_g17(v));
    if (i > 0)
      rep_out.add_exact("nondecreasing step " + std::to_string(i), prev, v + kExactTol,
                        prev <= v + kExactTol);
    prev = v;
  }
  return rep_out;
}

VerificationReport verify_agreement_bound(const AgreementParams& p) {
  VerificationReport out;
  out.suite = "agreement";
  LatticeGeometry g(3);
  Box box(g, Coord{0, 0, 0}, Coord{1, 1, 1});
  Representation rep(p.n, p.m_rep);
  std::mt19937_64 rng(p.seed);
  BoxLattice lat(g, box);
  for (double beta : p.betas) {
    OracleSpec spec(g, box, rep, beta);
    for (int i = 0; i < p.samples; ++i) {
      // random closed 2-form: d of a random edge form
      Form sigma(1, p.n);
      for (int e : lat.edges())
        if (rng() % 2) sigma.set(lat.edge_cell(e), 1 + int(rng() % (p.n - 1)));
      Form nu = exterior_derivative(g, sigma, &box);
      if (nu.is_zero()) continue;
      double prob = exact_agreement_probability(spec, nu);
      double bound = 1.0;
      for (auto& [k, v] : nu.values()) {
        double ratio = std::exp(beta * (rep.re_rho(v) - 1.0));
        bound *= ratio * ratio;  // both orientations of each support plaquette
      }
      char name[96];
      snprintf(name, sizeof name, "beta=%.2f sample %d (|supp|=%d)", beta, i,
               int(nu.support_size()));
      out.add_exact(name, prob, bound, prob <= bound * (1.0 + kExactTol) + 1e-15);
    }
  }
  return out;
}

namespace {

// Disjoint-ish grid of translation offsets keeping an R x T loop in the
// (1,2) plane, its coboundary margin included, inside the box.
std::vector<Coord> translate_grid(const Box& box, int R, int T) {
  std::vector<Coord> out;
  int lo = box.lower[0] + 1, hi = box.upper[0] - 1;
  std::vector<int> plane1, plane2, trans;
  for (int x = lo; x + R <= hi; x += 2) plane1.push_back(x);
  for (int y = lo; y + T <= hi; y += 2) plane2.push_back(y);
  for (int z = lo; z <= hi; z += 2) trans.push_back(z);
  for (int x : plane1)
    for (int y : plane2)
      for (int z : trans)
        for (int w : trans) out.push_back(Coord{x, y, z, w});
  return out;
}

}  // namespace

VerificationReport verify_resampling(const ResamplingParams& p) {
  VerificationReport out;
  out.suite = "resampling";
  LatticeGeometry g(4);
  Representation rep(p.n, p.m_rep);
  Coord lo{}, hi{};
  for (int i = 0; i < 4; ++i) {
    lo[i] = -p.half_width;
    hi[i] = p.half_width;
  }
  Box box(g, lo, hi);
  BoxLattice lat(g, box);
  double th = theta(rep, p.beta);

  struct ShapeData {
    std::string label;
    int straight_edges = 0;
    std::vector<WilsonPrimeContext> ctxs;
    std::vector<std::vector<double>> d_series;    // per chain
    std::vector<std::vector<double>> lhs_series;  // Re W'
    std::vector<std::vector<double>> rhs_series;  // theta^{|g1|-|g'|}
  };
  std::vector<ShapeData> shapes;
  for (auto& [R, T] : p.loop_sizes) {
    ShapeData sd;
    sd.label = std::to_string(R) + "x" + std::to_string(T);
    for (auto& off : translate_grid(box, R, T)) {
      auto loop = rectangle_loop(g, 1, 2, R, T, off);
      sd.ctxs.push_back(make_wilson_prime_context(g, lat, loop));
    }
    sd.straight_edges = int(sd.ctxs.front().gamma_1.support_size());
    sd.d_series.resize(p.chains);
    sd.lhs_series.resize(p.chains);
    sd.rhs_series.resize(p.chains);
    shapes.push_back(std::move(sd));
  }

  SamplerConfig cfg;
  cfg.seed = p.seed;
  cfg.thermalization = p.thermalization;
  cfg.sweeps = p.sweeps;
  cfg.chains = p.chains;
  int n_meas = cfg.sweeps / cfg.stride;
  for (auto& sd : shapes)
    for (int c = 0; c < p.chains; ++c) {
      sd.d_series[c].reserve(n_meas);
      sd.lhs_series[c].reserve(n_meas);
      sd.rhs_series[c].reserve(n_meas);
    }

  run_chains(g, box, rep, p.beta, cfg,
             [&](int chain, int, const SpinConfiguration& s) {
               for (auto& sd : shapes) {
                 double dsum = 0.0, lsum = 0.0, rsum = 0.0;
                 double base = std::pow(th, sd.straight_edges);
                 for (auto& ctx : sd.ctxs) {
                   auto ws = wilson_prime(ctx, s);
                   double rhs = base * std::pow(th, -ws.gamma_prime_size);
                   dsum += ws.w_prime.real() - rhs;
                   lsum += ws.w_prime.real();
                   rsum += rhs;
                 }
                 double k = double(sd.ctxs.size());
                 sd.d_series[chain].push_back(dsum / k);
                 sd.lhs_series[chain].push_back(lsum / k);
                 sd.rhs_series[chain].push_back(rsum / k);
               }
             });

  for (auto& sd : shapes) {
    EstimatorResult d = batch_means_chains(sd.d_series);
    EstimatorResult lhs = batch_means_chains(sd.lhs_series);
    EstimatorResult rhs = batch_means_chains(sd.rhs_series);
    out.info.emplace_back("loop " + sd.label + " E[W']", format_g17(lhs.mean.real()));
    out.info.emplace_back("loop " + sd.label + " theta-side", format_g17(rhs.mean.real()));
    out.info.emplace_back("loop " + sd.label + " translates", std::to_string(sd.ctxs.size()));
    out.add_stat("identity gap, loop " + sd.label + " (" + std::to_string(d.batch_count) +
                     " batches)",
                 std::abs(d.mean.real()), kStatSigmas * d.std_error, d.std_error,
                 std::abs(d.mean.real()) <= kStatSigmas * d.std_error);
  }
  return out;
}

VerificationReport verify_theorem_envelope(const EnvelopeParams& p) {
  VerificationReport out;
  out.suite = "envelope";
  LatticeGeometry g(4);
  Representation rep(p.n, p.m_rep);
  TheoryConstants tc = constants_bundle(rep, p.beta0);
  if (p.beta < p.beta0) throw std::domain_error("envelope suite needs beta >= beta0");
  Coord lo{}, hi{};
  for (int i = 0; i < 4; ++i) {
    lo[i] = -p.half_width;
    hi[i] = p.half_width;
  }
  Box box(g, lo, hi);
  BoxLattice lat(g, box);

  struct ShapeData {
    std::string label;
    double ell, ell_c;
    LoopMeasurement meas;
    std::vector<std::vector<double>> re_series, im_series;
  };
  std::vector<ShapeData> shapes;
  for (auto& [R, T] : p.loop_sizes) {
    Coord corner{};
    corner[0] = -(R + 1) / 2;
    corner[1] = -(T + 1) / 2;
    auto loop = rectangle_loop(g, 1, 2, R, T, corner);
    ShapeData sd;
    sd.label = std::to_string(R) + "x" + std::to_string(T);
    sd.ell = loop.length;
    sd.ell_c = loop.corners;
    sd.meas = bind_loop(lat, loop);
    sd.re_series.resize(p.chains);
    sd.im_series.resize(p.chains);
    shapes.push_back(std::move(sd));
  }

  SamplerConfig cfg;
  cfg.seed = p.seed;
  cfg.thermalization = p.thermalization;
  cfg.sweeps = p.sweeps;
  cfg.chains = p.chains;
  run_chains(g, box, rep, p.beta, cfg, [&](int chain, int, const SpinConfiguration& s) {
    for (auto& sd : shapes) {
      cplx w = wilson_loop(s, sd.meas);
      sd.re_series[chain].push_back(w.real());
      sd.im_series[chain].push_back(w.imag());
    }
  });

  for (auto& sd : shapes) {
    EstimatorResult re = batch_means_chains(sd.re_series);
    EstimatorResult im = batch_means_chains(sd.im_series);
    double pred = predicted_wilson(rep, sd.ell, p.beta);
    double env = error_envelope(tc, sd.ell, sd.ell_c, p.beta);
    double gap = std::abs(re.mean.real() - pred);
    double bound = std::min(2.0, env) + kStatSigmas * re.std_error;
    out.add_stat("|E[W] - prediction| within envelope, loop " + sd.label, gap, bound,
                 re.std_error, gap <= bound);
    double dev = std::hypot(re.mean.real() - 1.0, im.mean.real());
    out.add_stat("deep weak coupling |E[W] - 1| <= 0.05, loop " + sd.label, dev, 0.05,
                 re.std_error, dev <= 0.05);
    out.info.emplace_back("loop " + sd.label + " E[W]", format_g17(re.mean.real()));
    out.info.emplace_back("loop " + sd.label + " prediction", format_g17(pred));
    out.info.emplace_back("loop " + sd.label + " envelope", format_g17(env));
    out.info.emplace_back(
        "loop " + sd.label + " small-ell-lambda bound (informational)",
        format_g17(small_ell_lambda_bound(tc, sd.ell, sd.ell_c, p.beta)));
  }
  out.info.emplace_back("K'", format_g17(tc.k_prime.value));
  out.info.emplace_back("K''", format_g17(tc.k_dblprime.value));
  return out;
}

VerificationReport verify_vortex_probability(const VortexProbabilityParams& p) {
  VerificationReport out;
  out.suite = "vortex-probability";
  LatticeGeometry g(4);
  Representation rep(p.n, p.m_rep);
  Coord lo{}, hi{};
  for (int i = 0; i < 4; ++i) {
    lo[i] = -p.half_width;
    hi[i] = p.half_width;
  }
  Box box(g, lo, hi);
  BoxLattice lat(g, box);
  int p0 = lat.plaq_index(make_cell(g, Coord{}, {1, 2}));

  std::vector<double> freqs, sigmas;
  for (double beta : p.betas) {
    SamplerConfig cfg;
    cfg.seed = p.seed;
    cfg.thermalization = p.thermalization;
    cfg.stride = p.stride;
    cfg.sweeps = p.samples * p.stride / std::max(1, p.chains);
    cfg.chains = p.chains;
    std::vector<long long> hits(p.chains, 0), tot(p.chains, 0);
    run_chains(g, box, rep, beta, cfg, [&](int chain, int, const SpinConfiguration& s) {
      ++tot[chain];
      if (s.plaq_value(p0) == 0) return;  // p0 outside every component support
      Form dsigma(2, rep.n);
      for (int q : lat.plaquettes())
        if (s.plaq_value(q)) dsigma.set(lat.plaq_cell(q), s.plaq_value(q));
      auto comps = decompose(g, dsigma, box);
      OrientedCell c0 = lat.plaq_cell(p0);
      for (auto& v : comps)
        if (v.form(c0) != 0 && int(v.form.support_size()) >= 12) {
          ++hits[chain];
          break;
        }
    });
    long long h = 0, t = 0;
    for (int c = 0; c < p.chains; ++c) {
      h += hits[c];
      t += tot[c];
    }
    double freq = double(h) / double(t);
    double sig = std::sqrt(freq * (1.0 - freq) / double(t));
    double bound = std::min(1.0, k0_constant(rep, 6, beta) *
                                     std::pow(lambda_activity(rep, beta), 12));
    char name[96];
    snprintf(name, sizeof name, "P(p0 in component >= 12) at beta=%.2f", beta);
    out.add_stat(name, freq, bound + kStatSigmas * sig, sig, freq <= bound + kStatSigmas * sig);
    out.info.emplace_back(std::string("raw bound at beta=") + format_g17(beta),
                          format_g17(bound));
    freqs.push_back(freq);
    sigmas.push_back(sig);
  }
  for (size_t i = 1; i < freqs.size(); ++i) {
    double diff = freqs[i] - freqs[i - 1];
    double sig = std::hypot(sigmas[i], sigmas[i - 1]);
    out.add_stat("frequency decreases with beta (step " + std::to_string(i) + ")", diff,
                 kStatSigmas * sig, sig, diff <= kStatSigmas * sig);
  }
  return out;
}

}  // namespace lgt
