#include "lgt/zn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lgt {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTieTol = 1e-12;
}  // namespace

Representation::Representation(int n_, int m_rep_) : n(n_), m_rep(m_rep_) {
  if (n < 2) throw std::domain_error("modulus must be >= 2");
  if (m_rep < 1 || m_rep >= n || std::gcd(m_rep, n) != 1)
    throw std::domain_error("representation exponent must be in 1..n-1 and coprime to n");
  // Angle table with exact conjugate symmetry: rho(n-g) = conj(rho(g)) bit
  // for bit, so phi(g) = phi(-g) holds exactly.
  std::vector<double> ch(n), sh(n);
  for (int h = 0; 2 * h <= n; ++h) {
    ch[h] = std::cos(2.0 * kPi * h / n);
    sh[h] = (2 * h == n) ? 0.0 : std::sin(2.0 * kPi * h / n);
    if (h > 0 && 2 * h < n) {
      ch[n - h] = ch[h];
      sh[n - h] = -sh[h];
    }
  }
  cos_table.resize(n);
  sin_table.resize(n);
  for (int g = 0; g < n; ++g) {
    int h = int((long long)g * m_rep % n);
    cos_table[g] = ch[h];
    sin_table[g] = sh[h];
  }
}

cplx Representation::rho(int g) const {
  int r = mod(g);
  return {cos_table[r], sin_table[r]};
}

double Representation::phi(int g, double beta) const { return std::exp(beta * re_rho(g)); }

double xi(int n) { return 1.0 - std::cos(2.0 * kPi / n); }

double lambda_activity(const Representation& r, double beta) {
  return std::exp(-beta * xi(r.n));
}

namespace {
// Weights exp(12*beta*(Re rho(g) - 1)), shifted so the g = 0 term is 1.
std::vector<double> plaquette_weights(const Representation& r, double beta) {
  std::vector<double> w(r.n);
  for (int g = 0; g < r.n; ++g) w[g] = std::exp(12.0 * beta * (r.re_rho(g) - 1.0));
  return w;
}
}  // namespace

double theta(const Representation& r, double beta) {
  auto w = plaquette_weights(r, beta);
  cplx num = 0.0;
  double den = 0.0;
  for (int g = 0; g < r.n; ++g) {
    num += r.rho(g) * w[g];
    den += w[g];
  }
  if (std::abs(num.imag()) / den >= 1e-14)
    throw std::logic_error("theta acquired an imaginary part");
  return num.real() / den;
}

double one_minus_theta(const Representation& r, double beta) {
  auto w = plaquette_weights(r, beta);
  double num = 0.0, den = 0.0;
  for (int g = 0; g < r.n; ++g) {
    num += (1.0 - r.re_rho(g)) * w[g];
    den += w[g];
  }
  return num / den;
}

cplx s_beta(const Representation& r, const std::vector<int>& gs, double beta) {
  if (gs.empty()) throw std::domain_error("s_beta needs a non-empty tuple");
  // log weight of g is 2*beta*sum_k Re rho(g+g_k)
  std::vector<double> lw(r.n, 0.0);
  for (int g = 0; g < r.n; ++g)
    for (int gk : gs) lw[g] += 2.0 * beta * r.re_rho(g + gk);
  double mx = *std::max_element(lw.begin(), lw.end());
  cplx num = 0.0;
  double den = 0.0;
  for (int g = 0; g < r.n; ++g) {
    double w = std::exp(lw[g] - mx);
    num += r.rho(g) * w;
    den += w;
  }
  return num / den;
}

std::vector<int> g_zero_set(const Representation& r, const std::vector<int>& gs) {
  cplx s = 0.0;
  for (int gk : gs) s += r.rho(gk);
  std::vector<int> out;
  if (std::abs(s) < kTieTol) {
    for (int g = 0; g < r.n; ++g) out.push_back(g);
    return out;
  }
  std::vector<double> score(r.n);
  for (int g = 0; g < r.n; ++g) score[g] = (r.rho(g) * s).real();
  double mx = *std::max_element(score.begin(), score.end());
  for (int g = 0; g < r.n; ++g)
    if (score[g] >= mx - kTieTol * std::abs(s)) out.push_back(g);
  return out;
}

namespace {
// Residual of the key tuple inequality at a single tuple: the weight mass of
// the non-maximizing group elements relative to a maximizer.
double tuple_residual(const Representation& r, const std::vector<int>& gs, double beta) {
  cplx s = 0.0;
  for (int gk : gs) s += r.rho(gk);
  if (std::abs(s) < kTieTol) return 0.0;  // every g maximizes
  std::vector<double> score(r.n);
  for (int g = 0; g < r.n; ++g) score[g] = (r.rho(g) * s).real();
  double mx = *std::max_element(score.begin(), score.end());
  double acc = 0.0;
  for (int g = 0; g < r.n; ++g) {
    if (score[g] >= mx - kTieTol * std::abs(s)) continue;
    acc += std::exp(2.0 * beta * (score[g] - mx));
  }
  return acc;
}
}  // namespace

AdmissibilityReport beta0_admissible(const Representation& r, double beta0) {
  if (beta0 <= 0) throw std::domain_error("beta0 must be positive");
  AdmissibilityReport rep;
  rep.beta0 = beta0;
  double lam = lambda_activity(r, beta0);

  rep.small_activity = {"5(n-1)lambda(beta0)^2 < 1", 5.0 * (r.n - 1) * lam * lam, 1.0, false};
  rep.small_activity.pass = rep.small_activity.value < rep.small_activity.bound;

  // The residual is decreasing in beta for each tuple, so beta0 is the worst case.
  double worst = 0.0;
  long long total = 1;
  for (int i = 0; i < 6; ++i) total *= r.n;
  if (r.n <= 8) {
    std::vector<int> gs(6, 0);
    for (long long idx = 0; idx < total; ++idx) {
      long long t = idx;
      for (int i = 0; i < 6; ++i) {
        gs[i] = int(t % r.n);
        t /= r.n;
      }
      worst = std::max(worst, tuple_residual(r, gs, beta0));
    }
    rep.exhaustive = true;
  } else {
    std::mt19937_64 rng(0xb0b0);
    std::uniform_int_distribution<int> pick(0, r.n - 1);
    std::vector<int> gs(6);
    for (int it = 0; it < 200000; ++it) {
      for (auto& g : gs) g = pick(rng);
      worst = std::max(worst, tuple_residual(r, gs, beta0));
    }
    rep.exhaustive = false;
  }
  rep.max_residual = {"max tuple residual < xi/8", worst, xi(r.n) / 8.0, false};
  rep.max_residual.pass = rep.max_residual.value < rep.max_residual.bound;

  rep.twelve_power = {"2 lambda(beta0)^12 <= 1", 2.0 * std::pow(lam, 12), 1.0, false};
  rep.twelve_power.pass = rep.twelve_power.value <= rep.twelve_power.bound;

  rep.pass = rep.small_activity.pass && rep.max_residual.pass && rep.twelve_power.pass;
  return rep;
}

double smallest_admissible_beta0(const Representation& r) {
  for (int i = 1; i <= 400; ++i) {
    double b = 0.05 * i;
    if (beta0_admissible(r, b).pass) return b;
  }
  throw std::runtime_error("no admissible beta0 found on the grid");
}

double k0_constant(const Representation& r, int M, double beta) {
  double lam = lambda_activity(r, beta);
  double den = 1.0 - 5.0 * (r.n - 1) * lam * lam;
  if (den <= 0) throw std::domain_error("k0 undefined: 5(n-1)lambda^2 >= 1");
  return std::pow(5.0 * (r.n - 1), M) / den;
}

namespace {

// sup over beta >= beta0 of (1 - theta) * lambda^{-12}, by grid scan with
// local refinement, capped against the analytic beta -> infinity limit.
double k_star_sup(const Representation& r, double beta0) {
  auto f = [&](double b) { return one_minus_theta(r, b) * std::exp(12.0 * b * xi(r.n)); };
  double best = f(beta0), best_b = beta0;
  for (int i = 1; i <= 2000; ++i) {
    double b = beta0 + 0.01 * i;
    double v = f(b);
    if (v > best) {
      best = v;
      best_b = b;
    }
  }
  // golden-section refinement around the grid maximum
  double lo = std::max(beta0, best_b - 0.01), hi = best_b + 0.01;
  const double gr = 0.618033988749895;
  for (int it = 0; it < 80; ++it) {
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    if (f(a) < f(b)) lo = a;
    else hi = b;
  }
  best = std::max(best, f(0.5 * (lo + hi)));
  double limit = (1.0 + (r.n >= 3 ? 1.0 : 0.0)) * xi(r.n);
  return std::max(best, limit);
}

// Exact count of positively oriented plaquettes of Z^4 within L-infinity
// distance `d` of a fixed unit edge, as a product of per-axis counts.
double k1_plaquette_count(int d) {
  double total = 0.0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      double prod = 1.0;
      for (int axis = 1; axis <= 4; ++axis) {
        bool edge_spans = (axis == 1);          // the edge runs along axis 1
        bool plaq_spans = (axis == i || axis == j);
        // count of integer base offsets with per-axis interval gap <= d
        int count;
        if (plaq_spans && edge_spans) count = 2 * d + 3;        // [a,a+1] vs [0,1]
        else if (plaq_spans || edge_spans) count = 2 * d + 2;   // [a,a+1] vs {0}
        else count = 2 * d + 1;                                 // {a} vs {0}
        prod *= count;
      }
      total += prod;
    }
  return total;
}

}  // namespace

TheoryConstants constants_bundle(const Representation& r, double beta0) {
  TheoryConstants c;
  c.n = r.n;
  c.m_rep = r.m_rep;
  c.beta0 = beta0;
  c.admissibility = beta0_admissible(r, beta0);
  if (!c.admissibility.pass) {
    std::string cond = !c.admissibility.small_activity.pass ? c.admissibility.small_activity.name
                       : !c.admissibility.max_residual.pass ? c.admissibility.max_residual.name
                                                            : c.admissibility.twelve_power.name;
    throw std::domain_error("beta0 inadmissible: failed condition: " + cond);
  }
  c.theta0 = {theta(r, beta0), "formula"};
  c.lambda0 = {lambda_activity(r, beta0), "formula"};
  c.xi_v = {xi(r.n), "formula"};
  c.k_lower = {xi(r.n) / 4.0, "formula"};
  c.k_star_sup = {k_star_sup(r, beta0), "numerically-maximized"};
  c.k0_6 = {k0_constant(r, 6, beta0), "formula"};
  c.k0_7 = {k0_constant(r, 7, beta0), "formula"};
  c.k0_25 = {k0_constant(r, 25, beta0), "formula"};
  c.b_width = {24.0, "conservative-bound"};
  c.k1 = {k1_plaquette_count(int(c.b_width.value) + 2), "conservative-bound"};

  double ks = c.k_star_sup.value, kl = c.k_lower.value;
  double ca = 7.0 * c.k0_6.value / (2.0 * ks) + 2.0 * c.k1.value * c.k0_7.value / ks +
              5.0 * c.k0_25.value / (8.0 * ks * ks * ks * ks) + 4.5;
  c.c_a = {ca, "formula"};
  double ratio = 4.0 * ks / kl;
  c.k_dblprime = {1.0 / (1.0 + ratio), "formula"};
  c.k_prime = {std::sqrt(2.0) * std::pow(ca * std::pow(2.0, ratio), 1.0 / (1.0 + ratio)),
               "formula"};
  return c;
}

double predicted_wilson(const Representation& r, double ell, double beta) {
  return std::exp(-ell * one_minus_theta(r, beta));
}

double error_envelope(const TheoryConstants& c, double ell, double ell_c, double beta) {
  Representation r(c.n, c.m_rep);
  if (beta < c.beta0) throw std::domain_error("envelope requires beta >= beta0");
  double lam = lambda_activity(r, beta);
  return c.k_prime.value * std::pow(std::sqrt(ell_c / ell) + lam * lam, c.k_dblprime.value);
}

double large_beta_envelope(const Representation& r, double ell, double ell_c, double beta) {
  double lam = lambda_activity(r, beta);
  return std::exp(-(xi(r.n) / 4.0) * (ell - ell_c) * std::pow(lam, 12));
}

double small_ell_lambda_bound(const TheoryConstants& c, double ell, double ell_c, double beta) {
  Representation r(c.n, c.m_rep);
  double lam = lambda_activity(r, beta);
  double ks = c.k_star_sup.value;
  double pre = (c.k0_6.value + 2.0 * ks) * std::exp(ks) + 4.0 * c.k1.value * c.k0_7.value +
               2.0 * c.k0_6.value + 2.0 * c.k0_25.value;
  return pre * (std::sqrt(ell_c / ell) + lam * lam) * ell * std::pow(lam, 12);
}

namespace {
std::string num17(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cv_json(const char* name, const ConstantValue& v) {
  return std::string("    \"") + name + "\": {\"value\": " + num17(v.value) +
         ", \"provenance\": \"" + v.provenance + "\"}";
}
}  // namespace

std::string TheoryConstants::to_json() const {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << n << ",\n  \"m_rep\": " << m_rep << ",\n  \"beta0\": " << num17(beta0)
     << ",\n";
  os << "  \"admissible\": " << (admissibility.pass ? "true" : "false") << ",\n";
  os << "  \"admissibility\": {\n";
  auto chk = [&](const AdmissibilityCheck& c, bool last) {
    os << "    {\"name\": \"" << c.name << "\", \"value\": " << num17(c.value)
       << ", \"bound\": " << num17(c.bound) << ", \"pass\": " << (c.pass ? "true" : "false")
       << "}" << (last ? "\n" : ",\n");
  };
  os << "    \"checks\": [\n";
  os << "  ";
  chk(admissibility.small_activity, false);
  os << "  ";
  chk(admissibility.max_residual, false);
  os << "  ";
  chk(admissibility.twelve_power, true);
  os << "    ],\n    \"exhaustive\": " << (admissibility.exhaustive ? "true" : "false")
     << "\n  },\n";
  os << "  \"constants\": {\n";
  os << cv_json("theta_beta0", theta0) << ",\n";
  os << cv_json("lambda_beta0", lambda0) << ",\n";
  os << cv_json("xi", xi_v) << ",\n";
  os << cv_json("k_star_sup", k_star_sup) << ",\n";
  os << cv_json("k_lower", k_lower) << ",\n";
  os << cv_json("k0_6", k0_6) << ",\n";
  os << cv_json("k0_7", k0_7) << ",\n";
  os << cv_json("k0_25", k0_25) << ",\n";
  os << cv_json("k1", k1) << ",\n";
  os << cv_json("b_width", b_width) << ",\n";
  os << cv_json("c_a", c_a) << ",\n";
  os << cv_json("k_prime", k_prime) << ",\n";
  os << cv_json("k_dblprime", k_dblprime) << "\n";
  os << "  }\n}\n";
  return os.str();
}

}  // namespace lgt
