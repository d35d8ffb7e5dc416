// Command line front end: simulation runs, verification suites, constants
// dumps, vortex censuses, and exact oracle evaluations.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lgt/manifest.hpp"
#include "lgt/oracle.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

namespace {

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_simulate(const std::string& manifest_path, const std::string& out_csv,
                 const std::string& census_path) {
  RunManifest m = load_manifest(manifest_path);
  LatticeGeometry g = m.geometry();
  Box box = m.box();
  Representation rep(m.n, m.m_rep);
  BoxLattice lat(g, box);
  std::optional<GeneralizedLoop> loop;
  std::optional<LoopMeasurement> meas;
  if (!m.loops.empty()) {
    loop = m.loops.front().build(g);
    meas = bind_loop(lat, *loop);
  }
  for (double beta : m.betas) {
    SamplerConfig cfg = m.sampler_config();
    std::vector<std::vector<SampleRow>> rows(cfg.chains);
    std::vector<std::vector<CensusRow>> census(cfg.chains);
    run_chains(g, box, rep, beta, cfg, [&](int chain, int i, const SpinConfiguration& s) {
      SampleRow r;
      r.sweep = (i + 1) * cfg.stride;
      r.w = meas ? wilson_loop(s, *meas) : cplx(0.0);
      r.action = s.action(beta);
      CensusRow c = census_sample(g, s, loop ? &*loop : nullptr, i);
      r.n_components = c.components;
      r.n_minimal = c.minimal;
      rows[chain].push_back(r);
      census[chain].push_back(c);
    });
    std::vector<SampleRow> all;
    std::vector<CensusRow> all_census;
    for (int c = 0; c < cfg.chains; ++c) {
      all.insert(all.end(), rows[c].begin(), rows[c].end());
      all_census.insert(all_census.end(), census[c].begin(), census[c].end());
    }
    std::string suffix = m.betas.size() > 1 ? "_beta" + format_g17(beta) : "";
    write_file(out_csv.empty() ? "" : out_csv + suffix, samples_csv(all));
    if (!census_path.empty()) write_file(census_path + suffix, census_csv(all_census));
  }
  return 0;
}

int run_verify(const std::string& suite, const std::string& json_out) {
  std::vector<VerificationReport> reports;
  auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
  if (want("agreement")) reports.push_back(verify_agreement_bound(AgreementParams{}));
  if (want("monotonicity")) {
    LatticeGeometry g(3);
    std::vector<Box> nested{Box(g, Coord{0, 0, 0}, Coord{1, 1, 1}),
                            Box(g, Coord{0, 0, 0}, Coord{2, 1, 1}),
                            Box(g, Coord{0, 0, 0}, Coord{2, 2, 1})};
    auto loop = rectangle_loop(g, 1, 2, 1, 1, Coord{});
    for (int n : {2, 3})
      reports.push_back(verify_monotonicity(g, nested, Representation(n), 0.4, loop));
  }
  if (want("resampling")) {
    for (int n : {2, 3}) {
      ResamplingParams p;
      p.n = n;
      p.sweeps = n == 2 ? 30000 : 4000;
      reports.push_back(verify_resampling(p));
    }
  }
  if (want("envelope")) reports.push_back(verify_theorem_envelope(EnvelopeParams{}));
  if (want("vortex-probability"))
    reports.push_back(verify_vortex_probability(VortexProbabilityParams{}));
  if (reports.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  bool all_pass = true;
  std::string json = "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    std::cout << reports[i].table() << "\n";
    all_pass = all_pass && reports[i].pass();
    json += reports[i].to_json();
    if (i + 1 < reports.size()) json += ",";
  }
  json += "]\n";
  if (!json_out.empty()) write_file(json_out, json);
  return all_pass ? 0 : 1;
}

int run_census(const std::string& manifest_path, const std::string& out_csv) {
  RunManifest m = load_manifest(manifest_path);
  LatticeGeometry g = m.geometry();
  Box box = m.box();
  Representation rep(m.n, m.m_rep);
  std::optional<GeneralizedLoop> loop;
  if (!m.loops.empty()) loop = m.loops.front().build(g);
  SamplerConfig cfg = m.sampler_config();
  std::vector<std::vector<CensusRow>> census(cfg.chains);
  run_chains(g, box, rep, m.betas.front(), cfg,
             [&](int chain, int i, const SpinConfiguration& s) {
               census[chain].push_back(census_sample(g, s, loop ? &*loop : nullptr, i));
             });
  std::vector<CensusRow> all;
  for (auto& c : census) all.insert(all.end(), c.begin(), c.end());
  write_file(out_csv, census_csv(all));
  return 0;
}

int run_oracle(const std::string& manifest_path, const std::string& out_csv) {
  RunManifest m = load_manifest(manifest_path);
  LatticeGeometry g = m.geometry();
  Box box = m.box();
  Representation rep(m.n, m.m_rep);
  std::ostringstream os;
  os << "# lgt-csv v1 oracle\nbeta,loop,re_w,im_w\n";
  for (double beta : m.betas) {
    OracleSpec spec(g, box, rep, beta);
    for (auto& ls : m.loops) {
      cplx w = exact_wilson(spec, ls.build(g));
      os << format_g17(beta) << "," << ls.label() << "," << format_g17(w.real()) << ","
         << format_g17(w.imag()) << "\n";
    }
  }
  write_file(out_csv, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z_n lattice gauge theory: sampling, exact oracles, verification"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo chain from a manifest");
  std::string manifest, out_csv, census_out, json_out, suite = "all";
  sim->add_option("--manifest", manifest, "run manifest (JSON)")->required();
  sim->add_option("--out", out_csv, "sample CSV path (default: stdout)");
  sim->add_option("--census", census_out, "also write a vortex census CSV");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite,
                  "agreement | monotonicity | resampling | envelope | vortex-probability | all");
  ver->add_option("--json", json_out, "write the reports as JSON");

  auto* con = app.add_subcommand("constants", "dump the theory constants as JSON");
  int n = 2, m_rep = 1;
  double beta0 = 1.0;
  std::string con_out;
  con->add_option("--n", n, "group order")->required();
  con->add_option("--m-rep", m_rep, "representation exponent");
  con->add_option("--beta0", beta0, "coupling threshold")->required();
  con->add_option("--out", con_out, "output path (default: stdout)");

  auto* cen = app.add_subcommand("census", "vortex census of Monte Carlo samples");
  cen->add_option("--manifest", manifest, "run manifest (JSON)")->required();
  cen->add_option("--out", census_out, "census CSV path (default: stdout)");

  auto* ora = app.add_subcommand("oracle", "exact expectations for manifest loops");
  ora->add_option("--manifest", manifest, "oracle manifest (JSON)")->required();
  ora->add_option("--out", out_csv, "values CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (sim->parsed()) return run_simulate(manifest, out_csv, census_out);
    if (ver->parsed()) return run_verify(suite, json_out);
    if (con->parsed()) {
      write_file(con_out, constants_bundle(Representation(n, m_rep), beta0).to_json());
      return 0;
    }
    if (cen->parsed()) return run_census(manifest, census_out);
    if (ora->parsed()) return run_oracle(manifest, out_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
