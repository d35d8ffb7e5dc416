#include "lgt/manifest.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lgt {

using nlohmann::json;

GeneralizedLoop LoopSpec::build(const LatticeGeometry& g) const {
  if (kind == Kind::kRect) return rectangle_loop(g, axis1, axis2, r, t, corner);
  Chain gamma(1);
  for (auto& e : edges) gamma.add(make_cell(g, e.base, {e.axis}), e.coef);
  return validate_loop(g, gamma);
}

std::string LoopSpec::label() const {
  std::ostringstream os;
  if (kind == Kind::kRect) os << "rect" << r << "x" << t << "_ax" << axis1 << axis2;
  else os << "edges" << edges.size();
  return os.str();
}

Box RunManifest::box() const {
  Coord lo{}, hi{};
  for (int i = 0; i < dim; ++i) {
    lo[i] = -half_width;
    hi[i] = half_width;
  }
  return Box(geometry(), lo, hi);
}

SamplerConfig RunManifest::sampler_config() const {
  SamplerConfig c;
  c.seed = seed;
  c.thermalization = thermalization;
  c.sweeps = sweeps;
  c.stride = stride;
  c.schedule = schedule;
  c.chains = chains;
  return c;
}

namespace {
[[noreturn]] void fail_at(const std::string& text, size_t byte, const std::string& msg) {
  size_t line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  throw std::invalid_argument("manifest line " + std::to_string(line) + ": " + msg);
}

Coord coord_from(const json& arr, int dim) {
  if (!arr.is_array() || int(arr.size()) != dim)
    throw std::invalid_argument("coordinate array must have length dim");
  Coord c{};
  for (int i = 0; i < dim; ++i) c[i] = arr[i].get<int>();
  return c;
}
}  // namespace

RunManifest parse_manifest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(text, e.byte, e.what());
  }
  RunManifest m;
  try {
    m.n = j.at("n").get<int>();
    m.m_rep = j.value("m_rep", 1);
    m.dim = j.value("dim", 4);
    m.half_width = j.at("N").get<int>();
    for (auto& b : j.at("beta")) m.betas.push_back(b.get<double>());
    m.seed = j.value("seed", uint64_t(1));
    m.thermalization = j.value("thermalization", 100);
    m.sweeps = j.at("sweeps").get<int>();
    m.stride = j.value("stride", 1);
    m.chains = j.value("chains", 1);
    std::string sched = j.value("schedule", std::string("sequential"));
    if (sched == "sequential") m.schedule = Schedule::kSequential;
    else if (sched == "colored") m.schedule = Schedule::kColored;
    else throw std::invalid_argument("schedule must be 'sequential' or 'colored'");
    if (j.count("loops"))
      for (auto& l : j.at("loops")) {
        LoopSpec spec;
        std::string type = l.value("type", std::string("rect"));
        if (type == "rect") {
          spec.kind = LoopSpec::Kind::kRect;
          spec.axis1 = l.at("plane")[0].get<int>();
          spec.axis2 = l.at("plane")[1].get<int>();
          spec.r = l.at("size")[0].get<int>();
          spec.t = l.at("size")[1].get<int>();
          spec.corner = coord_from(l.at("corner"), m.dim);
        } else if (type == "edges") {
          spec.kind = LoopSpec::Kind::kEdges;
          for (auto& e : l.at("edges")) {
            LoopSpec::EdgeSpec es;
            es.base = coord_from(e.at("base"), m.dim);
            es.axis = e.at("axis").get<int>();
            es.coef = e.at("coef").get<int>();
            spec.edges.push_back(es);
          }
        } else {
          throw std::invalid_argument("loop type must be 'rect' or 'edges'");
        }
        m.loops.push_back(spec);
      }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  if (m.n < 2) throw std::invalid_argument("manifest: n must be >= 2");
  if (m.betas.empty()) throw std::invalid_argument("manifest: beta list must be non-empty");
  if (m.sweeps <= 0) throw std::invalid_argument("manifest: sweeps must be positive");
  if (m.stride < 1) throw std::invalid_argument("manifest: stride must be >= 1");
  if (m.half_width < 1) throw std::invalid_argument("manifest: N must be >= 1");
  return m;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open manifest: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string format_g17(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string samples_csv(const std::vector<SampleRow>& rows) {
  std::ostringstream os;
  os << "# lgt-csv v1 samples\n";
  os << "sweep,re_w,im_w,action,n_components,n_minimal\n";
  for (auto& r : rows)
    os << r.sweep << "," << format_g17(r.w.real()) << "," << format_g17(r.w.imag()) << ","
       << format_g17(r.action) << "," << r.n_components << "," << r.n_minimal << "\n";
  return os.str();
}

std::string census_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "# lgt-csv v1 census\n";
  os << "sample,n_components,n_minimal,n_size_le_24,n_size_gt_24,minimal_on_loop,"
        "minimal_off_loop\n";
  for (auto& r : rows)
    os << r.sample << "," << r.components << "," << r.minimal << "," << r.size_le_24 << ","
       << r.size_gt_24 << "," << r.minimal_on_loop << "," << r.minimal_off_loop << "\n";
  return os.str();
}

}  // namespace lgt
