// The group Z_n with a faithful one-dimensional representation, the scalar
// functions of the inverse coupling beta, and the constants entering the
// Wilson-loop prediction and its error envelope.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lgt {

using cplx = std::complex<double>;

// rho(k) = exp(2*pi*i*k*m_rep/n) with gcd(m_rep, n) = 1.
struct Representation {
  int n;
  int m_rep;
  Representation(int n_, int m_rep_ = 1);

  cplx rho(int g) const;
  double re_rho(int g) const { return cos_table[mod(g)]; }
  double phi(int g, double beta) const;  // exp(beta * Re rho(g))
  int mod(long long g) const {
    int r = int(g % n);
    return r < 0 ? r + n : r;
  }
  int neg(int g) const { return g == 0 ? 0 : n - g; }

  std::vector<double> cos_table, sin_table;
};

double xi(int n);                                  // 1 - cos(2*pi/n)
double lambda_activity(const Representation& r, double beta);  // exp(-beta*xi)
double theta(const Representation& r, double beta);
double one_minus_theta(const Representation& r, double beta);  // cancellation-free

// S_beta((g_k)) = sum_g rho(g) prod_k phi(g+g_k)^2 / sum_g prod_k phi(g+g_k)^2,
// evaluated with a max-exponent shift.
cplx s_beta(const Representation& r, const std::vector<int>& gs, double beta);

// argmax_g prod_k phi(g+g_k); independent of beta.  Ties resolved with an
// absolute tolerance of 1e-12 after scaling by |sum_k rho(g_k)|; a vanishing
// sum makes every g a maximizer.
std::vector<int> g_zero_set(const Representation& r, const std::vector<int>& gs);

struct AdmissibilityCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct AdmissibilityReport {
  double beta0 = 0.0;
  AdmissibilityCheck small_activity;   // 5(n-1)lambda^2 < 1
  AdmissibilityCheck max_residual;     // exhaustive (or sampled) tuple residual < xi/8
  AdmissibilityCheck twelve_power;     // 2 lambda^12 <= 1
  bool exhaustive = true;              // false => randomized tuple search was used
  bool pass = false;
};

// Checks the three conditions that make beta0 an admissible threshold; the
// residual check maximizes over all n^6 tuples (g_1..g_6) when n <= 8.
AdmissibilityReport beta0_admissible(const Representation& r, double beta0);

// Smallest admissible beta0 on a 0.05 grid.
double smallest_admissible_beta0(const Representation& r);

// K0^(M) = 5^M (n-1)^M / (1 - 5(n-1) lambda(beta)^2).
double k0_constant(const Representation& r, int M, double beta);

struct ConstantValue {
  double value = 0.0;
  std::string provenance;  // "formula", "conservative-bound", "numerically-maximized"
};

struct TheoryConstants {
  int n = 0, m_rep = 0;
  double beta0 = 0.0;
  ConstantValue theta0;        // theta(beta0)
  ConstantValue lambda0;       // lambda(beta0)
  ConstantValue xi_v;
  ConstantValue k_star_sup;    // sup_{beta>=beta0} (1-theta) lambda^{-12}
  ConstantValue k_lower;       // (1-cos(2pi/n))/4
  ConstantValue k0_6, k0_7, k0_25;  // at beta0
  ConstantValue k1;            // plaquettes near an edge, width bound b+2
  ConstantValue b_width;       // support-width bound for small irreducibles
  ConstantValue c_a;
  ConstantValue k_prime, k_dblprime;
  AdmissibilityReport admissibility;

  std::string to_json() const;
};

TheoryConstants constants_bundle(const Representation& r, double beta0);

double predicted_wilson(const Representation& r, double ell, double beta);
double error_envelope(const TheoryConstants& c, double ell, double ell_c, double beta);
double large_beta_envelope(const Representation& r, double ell, double ell_c, double beta);
// Sharper bound on |E[W] - theta^ell| valid when ell*lambda^12 < 1; reported
// as an informational line only.
double small_ell_lambda_bound(const TheoryConstants& c, double ell, double ell_c, double beta);

}  // namespace lgt
