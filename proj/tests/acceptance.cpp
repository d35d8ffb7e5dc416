// Acceptance suite: one check per headline requirement, each printed as a
// single pass/fail line.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "lgt/oracle.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

namespace {

struct Criterion {
  int failures = 0;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      notes.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

Box cube(const LatticeGeometry& g, int lo, int hi, bool dual = false) {
  Coord l{}, h{};
  for (int i = 0; i < g.dim; ++i) {
    l[i] = lo;
    h[i] = hi;
  }
  Box b(g, l, h);
  b.dual = dual;
  return b;
}

Form random_form(const LatticeGeometry& g, const Box& box, int k, int n, std::mt19937_64& rng,
                 int density = 4) {
  Form f(k, n, box.dual);
  for (auto& c : cells_in_box(g, box, k))
    if (rng() % density == 0) f.set(c, 1 + int(rng() % (n - 1)));
  return f;
}

Chain random_chain(const LatticeGeometry& g, const Box& box, int k, std::mt19937_64& rng) {
  Chain q(k, box.dual);
  for (auto& c : cells_in_box(g, box, k))
    if (rng() % 3 == 0) q.add(c, int(rng() % 5) - 2);
  return q;
}

// ---- criterion 1: operator algebra ----------------------------------------
void criterion_operator_algebra(Criterion& c) {
  std::mt19937_64 rng(1001);
  LatticeGeometry g(4);
  Box box = cube(g, 0, 2);
  const int reps = 1000;
  for (int k = 0; k <= 4; ++k) {
    for (int it = 0; it < reps; ++it) {
      int n = 2 + int(rng() % 5);
      Form w = random_form(g, box, k, n, rng, 6);
      if (k <= 3) {
        Form dw = exterior_derivative(g, w);
        Chain q = random_chain(g, box, k + 1, rng);
        c.require(evaluate(dw, q) == evaluate(w, boundary_chain(g, q)), "stokes failed");
        if (k <= 2)
          c.require(exterior_derivative(g, dw).is_zero(), "dd != 0");
      }
      if (k >= 2) c.require(coderivative(g, coderivative(g, w)).is_zero(), "delta delta != 0");
      Form ss = hodge_dual(g, hodge_dual(g, w));
      Form expect = ((k * (4 - k)) % 2 == 0) ? w : -w;
      c.require(ss == expect, "star-star sign failed");
      if (k >= 1) {
        Form route = hodge_dual(g, exterior_derivative(g, hodge_dual(g, w)));
        int sgn = ((4 * (k + 1) + 1) % 2 == 0) ? +1 : -1;
        Form rhs = sgn > 0 ? route : -route;
        c.require(coderivative(g, w) == rhs, "coderivative dual-route identity failed");
      }
    }
  }
  // Bianchi on closed 2-forms
  for (int it = 0; it < 200; ++it) {
    Form sigma = random_form(g, box, 1, 2 + int(rng() % 4), rng, 5);
    Form w = exterior_derivative(g, sigma);
    for (auto& cell : cells_in_box(g, cube(g, -1, 2), 3)) {
      Chain q(3);
      q.add(cell, 1);
      c.require(evaluate(w, boundary_chain(g, q)) == 0, "bianchi failed");
    }
  }
  // boundary-cell duality, exhaustive on [0,2]^3
  LatticeGeometry g3(3);
  Box b = cube(g3, 0, 2);
  Box bs = b.dual_box();
  Box bss = bs.dual_box();
  for (int k = 0; k <= 3; ++k) {
    for (auto& cell : cells_in_box(g3, cube(g3, -2, 4), k)) {
      auto sc = hodge_star(g3, cell);
      bool rhs = !bs.contains_cell(sc) || bs.lies_in_boundary(sc);
      c.require((!b.contains_cell(cell)) == rhs, "boundary-cell duality failed (primal)");
      if (!b.contains_cell(cell) && k >= 1) {
        bool face_in = false;
        for (auto& t : boundary(g3, cell))
          if (b.contains_cell(t.cell)) face_in = true;
        if (face_in)
          c.require(bs.lies_in_boundary(sc), "near-miss cells must star into the boundary");
      }
    }
    Box dwin = cube(g3, -2, 4, true);
    for (auto& cell : cells_in_box(g3, dwin, k)) {
      auto sc = hodge_star(g3, cell);
      bool rhs = !bss.contains_cell(sc) || bss.lies_in_boundary(sc);
      c.require((!bs.contains_cell(cell)) == rhs, "boundary-cell duality failed (dual)");
    }
  }
}

// ---- criterion 2: surface builder ------------------------------------------
void criterion_surfaces(Criterion& c) {
  LatticeGeometry g(4);
  Box b6 = cube(g, -6, 6);
  std::mt19937_64 rng(777);
  for (int i = 0; i < 200; ++i) {
    auto loop = random_loop(g, b6, rng);
    auto surf = build_surface(g, loop);
    c.require(boundary_chain(g, surf.chain) == loop.chain, "surface boundary mismatch");
    for (auto& [k, v] : surf.chain.terms())
      c.require(surf.box.contains_cell(OrientedCell::from_key(k)),
                "surface leaves its declared box");
  }
}

// ---- criterion 3: oracle closed form ---------------------------------------
void criterion_oracle_closed_form(Criterion& c) {
  LatticeGeometry g(2);
  Box box = cube(g, 0, 1);
  Representation r2(2);
  auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
  for (double beta : {0.0, 0.3, 1.0}) {
    OracleSpec spec(g, box, r2, beta);
    cplx w = exact_wilson(spec, loop);
    c.require(std::abs(w - cplx(std::tanh(2.0 * beta))) < 1e-12,
              "tanh(2 beta) mismatch at beta=" + std::to_string(beta));
  }
}

// ---- criterion 4: sampler vs oracle ----------------------------------------
void criterion_sampler_vs_oracle(Criterion& c) {
  struct Case {
    int dim, n, hi;
  };
  for (auto cs : {Case{2, 2, 4}, Case{2, 3, 4}, Case{3, 2, 1}}) {
    LatticeGeometry g(cs.dim);
    Box box = cube(g, 0, cs.hi);
    Representation rep(cs.n);
    auto loop = cs.dim == 2 ? rectangle_loop(g, 1, 2, 2, 2, Coord{1, 1})
                            : rectangle_loop(g, 1, 2, 1, 1, Coord{});
    for (double beta : {0.3, 0.6}) {
      OracleSpec ospec(g, box, rep, beta);
      double exact = exact_wilson(ospec, loop).real();
      BoxLattice lat(g, box);
      auto m = bind_loop(lat, loop);
      SamplerConfig cfg;
      cfg.seed = 40 + cs.dim + cs.n;
      cfg.thermalization = 300;
      cfg.sweeps = 40000;
      std::vector<std::vector<double>> re(1);
      run_chains(g, box, rep, beta, cfg, [&](int chain, int, const SpinConfiguration& s) {
        re[chain].push_back(wilson_loop(s, m).real());
      });
      auto est = batch_means_chains(re);
      std::ostringstream what;
      what << "dim=" << cs.dim << " n=" << cs.n << " beta=" << beta << ": |"
           << est.mean.real() << " - " << exact << "| vs 4 sigma=" << 4 * est.std_error;
      c.require(est.batch_count >= 20, "fewer than 20 batches");
      c.require(std::abs(est.mean.real() - exact) <= 4.0 * est.std_error + 1e-9, what.str());
    }
  }
}

// ---- criterion 5: resampling identity --------------------------------------
void criterion_resampling(Criterion& c) {
  for (int n : {2, 3}) {
    ResamplingParams p;
    p.n = n;
    p.sweeps = (n == 2) ? 20000 : 3000;
    p.chains = 2;
    auto rep = verify_resampling(p);
    for (auto& chk : rep.checks) c.require(chk.pass, "n=" + std::to_string(n) + " " + chk.name);
  }
}

// ---- criterion 6: vortex decomposition invariants ---------------------------
void criterion_decomposition(Criterion& c) {
  LatticeGeometry g(4);
  Box box = cube(g, -5, 5);
  Representation r2(2);
  BoxLattice lat(g, box);
  SamplerConfig cfg;
  cfg.seed = 606;
  cfg.thermalization = 200;
  cfg.stride = 2;
  cfg.sweeps = 250 * cfg.stride;
  cfg.chains = 2;  // 2 x 250 = 500 samples
  int samples = 0, nontrivial = 0;
  std::vector<int> failures(cfg.chains, 0);
  std::vector<int> counts(cfg.chains, 0), events(cfg.chains, 0);
  run_chains(g, box, r2, 0.6, cfg, [&](int chain, int, const SpinConfiguration& s) {
    ++counts[chain];
    Form w(2, 2);
    for (int p : lat.plaquettes())
      if (s.plaq_value(p)) w.set(lat.plaq_cell(p), s.plaq_value(p));
    if (w.is_zero()) return;
    ++events[chain];
    auto parts = decompose(g, w, box);
    Form rebuilt(2, 2);
    std::set<uint64_t> claimed;
    for (auto& v : parts) {
      rebuilt += v.form;
      if (closedness_witness(g, v.form, box) != std::nullopt) ++failures[chain];
      for (auto& [k, val] : v.form.values()) {
        if (claimed.count(k)) ++failures[chain];
        claimed.insert(k);
      }
      bool interior = true;
      for (auto& cell : v.form.positive_support())
        if (box.is_boundary_cell(cell)) interior = false;
      if (interior) {
        if (int(v.form.support_size()) < 12) ++failures[chain];
        if (int(v.form.support_size()) == 12 && !classify_minimal(g, v.form, box))
          ++failures[chain];
      }
    }
    if (!(rebuilt == w)) ++failures[chain];
  });
  for (int ch = 0; ch < cfg.chains; ++ch) {
    samples += counts[ch];
    nontrivial += events[ch];
    c.require(failures[ch] == 0, "decomposition invariant failures in chain");
  }
  c.require(samples == 500, "expected 500 samples, got " + std::to_string(samples));
  c.note("samples with at least one vortex: " + std::to_string(nontrivial) + "/500");
}

// ---- criterion 7: counting census ------------------------------------------
void criterion_counting(Criterion& c) {
  LatticeGeometry g(4);
  Box box = cube(g, -4, 4);
  auto p0 = make_cell(g, Coord{}, {1, 2});
  for (int n : {2, 3}) {
    auto m6 = enumerate_irreducible(g, p0, 6, n, box);
    c.require(int(m6.size()) == 4 * (n - 1),
              "M=6 count " + std::to_string(m6.size()) + " != 4(n-1), n=" + std::to_string(n));
    for (auto& f : m6)
      c.require(classify_minimal(g, f, box).has_value(), "M=6 member is not a minimal vortex");
    c.require(double(m6.size()) <= std::pow(5.0, 5) * std::pow(double(n - 1), 6),
              "M=6 bound violated");
    auto m7 = enumerate_irreducible(g, p0, 7, n, box);
    c.require(double(m7.size()) <= std::pow(5.0, 6) * std::pow(double(n - 1), 7),
              "M=7 bound violated");
    c.note("n=" + std::to_string(n) + ": M=6 -> " + std::to_string(m6.size()) +
           ", M=7 -> " + std::to_string(m7.size()));
  }
}

// ---- criterion 8: agreement bound ------------------------------------------
void criterion_agreement(Criterion& c) {
  AgreementParams p;  // [0,1]^3, n=2, beta in {0.5, 1.0}, 50 random closed forms
  auto rep = verify_agreement_bound(p);
  for (auto& chk : rep.checks) c.require(chk.pass, chk.name);
}

// ---- criterion 9: crucial tuple bound --------------------------------------
void criterion_tuple_bound(Criterion& c) {
  std::mt19937_64 rng(909);
  for (int n = 2; n <= 6; ++n) {
    Representation r(n);
    double beta0 = smallest_admissible_beta0(r);
    c.note("n=" + std::to_string(n) + ": beta0=" + std::to_string(beta0));
    long long total = 1;
    for (int i = 0; i < 6; ++i) total *= n;
    for (double beta : {beta0, beta0 + 0.5, 2 * beta0}) {
      double cap = 1.0 - (xi(n) / 4.0) * std::pow(lambda_activity(r, beta), 12);
      long long bad = 0, bad_sym = 0, bad_crude = 0;
      for (long long idx = 0; idx < total; ++idx) {
        long long t = idx;
        std::vector<int> gs(6);
        for (int i = 0; i < 6; ++i) {
          gs[i] = int(t % n);
          t /= n;
        }
        cplx s = s_beta(r, gs, beta);
        if (!(std::abs(s) <= cap + 1e-13)) ++bad;
        int shift = int(rng() % n);
        std::vector<int> shifted = gs;
        for (auto& x : shifted) x = r.mod(x + shift);
        if (!(std::abs(std::abs(s_beta(r, shifted, beta)) - std::abs(s)) <= 1e-14)) ++bad_sym;
        auto g0 = g_zero_set(r, gs);
        if (g0.size() == 1 && g0[0] == 0) {
          double den = 0.0;
          for (int g = 0; g < n; ++g) {
            double prod = 1.0;
            for (int gk : gs) prod *= r.phi(r.mod(g + gk), beta) / r.phi(gk, beta);
            den += prod * prod;
          }
          double mass = 1.0 / den;
          if (!(mass >= 0.5 && mass <= 1.0 + 1e-14)) ++bad_crude;
        }
      }
      std::ostringstream tag;
      tag << "n=" << n << " beta=" << beta;
      c.require(bad == 0, "crucial bound violated, " + tag.str());
      c.require(bad_sym == 0, "translation symmetry violated, " + tag.str());
      c.require(bad_crude == 0, "crude estimate violated, " + tag.str());
    }
  }
}

// ---- criterion 10: theta asymptotics ---------------------------------------
void criterion_theta(Criterion& c) {
  for (int n = 2; n <= 6; ++n) {
    Representation r(n);
    double x = xi(n);
    double ratio =
        one_minus_theta(r, 3.0) / ((1.0 + (n >= 3 ? 1.0 : 0.0)) * x * std::exp(-36.0 * x));
    c.require(ratio >= 0.99 && ratio <= 1.01,
              "asymptotic ratio " + std::to_string(ratio) + " at n=" + std::to_string(n));
    c.require(std::abs(theta(r, 0.0)) <= 1e-12, "theta(0) != 0");
    double prev = -1.0;
    bool monotone = true;
    for (double b = 0.0; b <= 4.0; b += 0.05) {
      double t = theta(r, b);
      if (t < prev - 1e-14) monotone = false;
      prev = t;
    }
    c.require(monotone, "theta not monotone, n=" + std::to_string(n));
  }
}

// ---- criterion 11: monotone box growth -------------------------------------
void criterion_monotonicity(Criterion& c) {
  LatticeGeometry g(3);
  std::vector<Box> nested{Box(g, Coord{0, 0, 0}, Coord{1, 1, 1}),
                          Box(g, Coord{0, 0, 0}, Coord{2, 1, 1}),
                          Box(g, Coord{0, 0, 0}, Coord{2, 2, 1})};
  auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
  for (int n : {2, 3}) {
    auto rep = verify_monotonicity(g, nested, Representation(n), 0.4, loop);
    for (auto& chk : rep.checks) c.require(chk.pass, "n=" + std::to_string(n) + " " + chk.name);
    for (auto& [k, v] : rep.info) c.note("n=" + std::to_string(n) + " " + k + " = " + v);
  }
}

// ---- criterion 12: envelope ------------------------------------------------
void criterion_envelope(Criterion& c) {
  EnvelopeParams p;  // N=5, n=2, beta=0.6, loops 2x2..4x4
  p.sweeps = 3000;
  auto rep = verify_theorem_envelope(p);
  for (auto& chk : rep.checks) c.require(chk.pass, chk.name);
  for (auto& [k, v] : rep.info)
    if (k.find("E[W]") != std::string::npos || k == "K'" || k == "K''") c.note(k + " = " + v);
}

// ---- criterion 13: vortex probability --------------------------------------
void criterion_vortex_probability(Criterion& c) {
  VortexProbabilityParams p;  // N=5, n=2, beta in {0.6, 0.9}
  auto rep = verify_vortex_probability(p);
  for (auto& chk : rep.checks) c.require(chk.pass, chk.name);
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Criterion&)> run;
  };
  std::vector<Entry> entries = {
      {1, "operator algebra (exact identities, boundary-cell duality)", criterion_operator_algebra},
      {2, "surface builder on 200 random loops in B6", criterion_surfaces},
      {3, "oracle closed form tanh(2 beta)", criterion_oracle_closed_form},
      {4, "sampler matches exact oracles within 4 sigma", criterion_sampler_vs_oracle},
      {5, "resampling identity, both sides within 4 sigma", criterion_resampling},
      {6, "vortex decomposition invariants on 500 samples", criterion_decomposition},
      {7, "irreducible configuration census at M=6,7", criterion_counting},
      {8, "agreement probability bound", criterion_agreement},
      {9, "crucial tuple bound, symmetry, crude estimate", criterion_tuple_bound},
      {10, "theta endpoints, monotonicity, asymptotics", criterion_theta},
      {11, "expectation grows with the box", criterion_monotonicity},
      {12, "closed-form envelope at weak coupling", criterion_envelope},
      {13, "vortex probability bound and decay", criterion_vortex_probability},
  };
  int failed = 0;
  for (auto& e : entries) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    printf("[%s] criterion %2d: %s (%.1fs)\n", c.failures == 0 ? "PASS" : "FAIL", e.id, e.name,
           dt);
    for (auto& n : c.notes)
      if (c.failures > 0 || n.rfind("samples", 0) == 0 || n.find("->") != std::string::npos)
        printf("        %s\n", n.c_str());
    fflush(stdout);
    if (c.failures > 0) ++failed;
  }
  printf("%d/13 criteria passed\n", 13 - failed);
  return failed;
}
