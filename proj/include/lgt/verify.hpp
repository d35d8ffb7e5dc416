// Verification suites: exact reference checks and Monte Carlo comparisons
// against the closed-form predictions, emitted as structured reports.

#pragma once

#include <string>
#include <vector>

#include "lgt/oracle.hpp"
#include "lgt/vortex.hpp"

namespace lgt {

struct CheckRow {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;       // bound - measured (>= 0 when passing)
  double sigma = -1.0;       // statistical error; < 0 for exact checks
  std::string provenance;    // "exact" or "statistical"
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRow> checks;
  std::vector<std::pair<std::string, std::string>> info;

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add_exact(const std::string& name, double measured, double bound, bool ok);
  void add_stat(const std::string& name, double measured, double bound, double sigma, bool ok);
  std::string table() const;
  std::string to_json() const;
};

inline constexpr double kStatSigmas = 4.0;   // statistical acceptance threshold
inline constexpr double kExactTol = 1e-12;   // float tolerance for exact checks

// E[Re W_gamma] is nondecreasing along a nested box sequence (exact
// enumerations).
VerificationReport verify_monotonicity(const LatticeGeometry& g,
                                       const std::vector<Box>& nested,
                                       const Representation& rep, double beta,
                                       const GeneralizedLoop& loop);

// Exact agreement probabilities against prod phi(nu(p))/phi(0) for random
// closed 2-forms on a small box.
struct AgreementParams {
  int n = 2;
  int m_rep = 1;
  std::vector<double> betas{0.5, 1.0};
  int samples = 50;
  uint64_t seed = 2024;
};
VerificationReport verify_agreement_bound(const AgreementParams& p);

// Two-sided Monte Carlo estimate of the resampling identity
// E[W'] = theta^{|gamma_1|} E[theta^{-|gamma'|}], averaged over disjoint
// translates of each pinned loop for event statistics.
struct ResamplingParams {
  int n = 2;
  int m_rep = 1;
  int half_width = 5;
  double beta = 0.6;
  std::vector<std::pair<int, int>> loop_sizes{{2, 2}, {3, 3}};
  int sweeps = 20000;  // per chain
  int thermalization = 200;
  int chains = 2;
  uint64_t seed = 11;
};
VerificationReport verify_resampling(const ResamplingParams& p);

// |E_MC[W] - e^{-ell(1-theta)}| <= min(2, envelope) + 4 sigma, plus the
// deep-weak-coupling sanity |E_MC[W] - 1| <= 0.05.
struct EnvelopeParams {
  int n = 2;
  int m_rep = 1;
  int half_width = 5;
  double beta = 0.6;
  double beta0 = 0.45;
  std::vector<std::pair<int, int>> loop_sizes{{2, 2}, {3, 3}, {4, 4}};
  int sweeps = 2000;
  int thermalization = 200;
  int chains = 2;
  uint64_t seed = 7;
};
VerificationReport verify_theorem_envelope(const EnvelopeParams& p);

// Frequency that a fixed interior plaquette lies in a vortex component of
// oriented support >= 12, against K0^(6) lambda^12, and its decrease in beta.
struct VortexProbabilityParams {
  int n = 2;
  int m_rep = 1;
  int half_width = 5;
  std::vector<double> betas{0.6, 0.9};
  int samples = 500;
  int stride = 4;
  int thermalization = 200;
  int chains = 2;
  uint64_t seed = 5;
  double beta0 = 0.45;
};
VerificationReport verify_vortex_probability(const VortexProbabilityParams& p);

}  // namespace lgt
