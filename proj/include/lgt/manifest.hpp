// Run manifests (JSON), loop specifications, and the CSV outputs.

#pragma once

#include <string>
#include <vector>

#include "lgt/sampler.hpp"
#include "lgt/vortex.hpp"

namespace lgt {

struct LoopSpec {
  enum class Kind { kRect, kEdges } kind = Kind::kRect;
  // rect
  int axis1 = 1, axis2 = 2, r = 1, t = 1;
  Coord corner{};
  // edges
  struct EdgeSpec {
    Coord base{};
    int axis = 1;
    int coef = 1;
  };
  std::vector<EdgeSpec> edges;

  GeneralizedLoop build(const LatticeGeometry& g) const;
  std::string label() const;
};

struct RunManifest {
  int n = 2;
  int m_rep = 1;
  int dim = 4;
  int half_width = 5;  // box [-N, N]^dim
  std::vector<double> betas;
  std::vector<LoopSpec> loops;
  uint64_t seed = 1;
  int thermalization = 100;
  int sweeps = 1000;
  int stride = 1;
  Schedule schedule = Schedule::kSequential;
  int chains = 1;

  LatticeGeometry geometry() const { return LatticeGeometry(dim); }
  Box box() const;
  SamplerConfig sampler_config() const;
};

// Parses and validates a manifest; error messages carry the line number.
RunManifest parse_manifest(const std::string& json_text);
RunManifest load_manifest(const std::string& path);

// Sample log CSV: sweep, re_w, im_w, action, n_components, n_minimal.
struct SampleRow {
  int sweep = 0;
  cplx w{};
  double action = 0.0;
  int n_components = 0;
  int n_minimal = 0;
};
std::string samples_csv(const std::vector<SampleRow>& rows);
std::string census_csv(const std::vector<CensusRow>& rows);

std::string format_g17(double v);

}  // namespace lgt
