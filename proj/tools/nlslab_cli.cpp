// nlslab: command-line driver for every experiment of the library.

#include "nlslab/config.hpp"
#include "nlslab/diophantine.hpp"
#include "nlslab/error.hpp"
#include "nlslab/lambda_set.hpp"
#include "nlslab/nls_sim.hpp"
#include "nlslab/normal_form.hpp"
#include "nlslab/params.hpp"
#include "nlslab/resonance.hpp"
#include "nlslab/toy_model.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nlslab;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Run {
  ExperimentConfig cfg;
  std::string command;  // e.g. "lambda verify"
  std::string hash;
  ojson artifacts = ojson::array();
  ojson extra = ojson::object();  // timings and other non-reproducible facts

  fs::path path(const std::string& name) const { return fs::path(cfg.output) / name; }

  void write_text(const std::string& name, const std::string& text) {
    fs::create_directories(cfg.output);
    std::ofstream out(path(name));
    if (!out) fail(ErrorKind::config, "cannot write " + path(name).string());
    out << text;
    artifacts.push_back(name);
  }
  void write_json(const std::string& name, ojson j) {
    j["config_hash"] = hash;
    write_text(name, j.dump(2) + "\n");
  }
  void write_json(const std::string& name, const std::string& text) {
    write_json(name, ojson::parse(text));
  }
  // CSV with the config hash on a leading comment line
  void write_csv(const std::string& name, const std::string& body) {
    write_text(name, "# config_hash=" + hash + "\n" + body);
  }
};

LambdaSet acquire_set(const ExperimentConfig& c) {
  if (c.set) return load_lambda_set(*c.set);
  BuildOptions o;
  o.seed = c.seed;
  o.box = c.box;
  return scale_set(build_base_set(c.N, o), c.p, c.q);
}

CVec default_datum(std::size_t N) {
  CVec b;
  for (std::size_t i = 0; i < N; ++i)
    b.push_back(std::polar(1.0 / std::sqrt(static_cast<double>(N)), static_cast<double>(i)));
  return b;
}

// shortest decimal that reads back as x, taken as an exact rational
Rational exact_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  return parse_rational(std::string(buf, res.ptr));
}

std::string str(const Real& x, int digits = 20) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

// --- subcommands ---------------------------------------------------------------

int cmd_cf(Run& r) {
  const auto& c = r.cfg;
  auto omega = OmegaSpec::parse(c.omega);
  auto profile = ApproxProfile::parse(c.profile);
  auto cf = expand_continued_fraction(omega, c.depth);
  auto conv = convergents(omega, c.depth);
  std::ostringstream csv;
  csv << "index,p,q,err_lo,err_hi,psi_convergent\n";
  ojson list = ojson::array();
  for (const auto& x : conv) {
    bool psi = false;
    try {
      psi = is_psi_convergent(omega, x.p, x.q, profile).holds;
    } catch (const Error&) {
      psi = false;
    }
    csv << x.index << "," << x.p << "," << x.q << "," << to_string(x.err_lo) << "," << to_string(x.err_hi)
        << "," << (psi ? 1 : 0) << "\n";
    list.push_back({{"index", x.index}, {"p", x.p.str()}, {"q", x.q.str()}, {"psi_convergent", psi}});
  }
  r.write_csv("convergents.csv", csv.str());
  ojson j;
  j["omega"] = omega.to_string();
  j["profile"] = profile.to_string();
  j["quotients"] = ojson::array();
  for (const auto& a : cf.quotients) j["quotients"].push_back(a.str());
  j["terminated"] = cf.terminated;
  j["convergents"] = list;
  r.write_json("cf.json", j);
  std::cout << "cf: " << conv.size() << " convergents of " << omega.to_string() << "\n";
  return 0;
}

ojson lambda_json(const LambdaSet& set) { return ojson::parse(to_json(set)); }

int cmd_lambda_build(Run& r) {
  auto set = acquire_set(r.cfg);
  r.write_json("lambda.json", lambda_json(set));
  std::cout << "lambda build: N = " << set.num_generations() << ", |Lambda| = " << set.size()
            << ", scale (" << set.p() << ", " << set.q() << ")\n";
  return 0;
}

int cmd_lambda_scale(Run& r) {
  auto set = acquire_set(r.cfg);
  auto scaled = scale_set(set.base(), r.cfg.p, r.cfg.q);
  r.write_json("lambda.json", lambda_json(scaled));
  std::cout << "lambda scale: (" << scaled.p() << ", " << scaled.q() << ")\n";
  return 0;
}

int cmd_lambda_verify(Run& r) {
  auto set = acquire_set(r.cfg);
  auto rep = verify_properties(set);
  ojson j;
  j["all_passed"] = rep.all_passed();
  j["triples_scanned"] = rep.triples_scanned;
  j["families_found"] = rep.families_found;
  for (const auto* chk : rep.checks()) {
    ojson w = ojson::array();
    for (const auto& q : chk->witnesses) w.push_back(q.to_string());
    j["checks"].push_back({{"name", chk->name}, {"passed", chk->passed}, {"witnesses", w}, {"notes", chk->notes}});
  }
  r.write_json("verify.json", j);
  std::cout << rep.summary();
  return rep.all_passed() ? 0 : 1;
}

int cmd_toy_run(Run& r) {
  const auto& c = r.cfg;
  CVec b0 = c.b0.empty() ? default_datum(static_cast<std::size_t>(c.N)) : c.b0;
  auto traj = integrate_toy(b0, c.t_end, c.tolerances, c.samples);
  std::ostringstream csv;
  write_toy_csv(csv, traj, c.stride);
  r.write_csv("toy.csv", csv.str());
  auto i0 = toy_invariants(traj.b.front()), i1 = toy_invariants(traj.b.back());
  std::cout << "toy run: mass drift " << std::abs(i1.mass - i0.mass) << ", energy drift "
            << std::abs(i1.energy - i0.energy) << "\n";
  return 0;
}

ojson cvec_json(const CVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back({x.real(), x.imag()});
  return a;
}

int cmd_toy_transfer(Run& r) {
  const auto& c = r.cfg;
  TransferSearchConfig tc;
  tc.integrator = c.tolerances;
  auto res = find_transfer_orbit(c.N, c.delta, tc);
  ojson j;
  j["N"] = c.N;
  j["delta"] = c.delta;
  j["b0"] = cvec_json(res.b0);
  j["T0"] = res.T0;
  j["concentration"] = res.concentration;
  j["peak"] = res.peak;
  j["handoff_times"] = res.handoff_times;
  j["integrations"] = res.integrations;
  r.write_json("transfer.json", j);
  auto traj = integrate_toy(res.b0, res.T0, c.tolerances, std::max<std::size_t>(c.samples, 2));
  std::ostringstream csv;
  write_toy_csv(csv, traj, c.stride);
  r.write_csv("transfer.csv", csv.str());
  std::cout << "toy transfer: T0 = " << res.T0 << ", concentration " << res.concentration << "\n";
  return 0;
}

int cmd_nf_build(Run& r) {
  auto set = acquire_set(r.cfg);
  auto omega = OmegaSpec::parse(r.cfg.omega);
  auto F = build_F(set, omega);
  std::ostringstream csv;
  write_F_csv(csv, F);
  r.write_csv("F.csv", csv.str());
  const Scalar w2 = omega.squared();
  ojson j;
  j["terms"] = F.terms().size();
  j["support"] = F.support().size();
  j["exact"] = F.is_exact();
  if (!F.empty()) {
    auto L1 = compute_L1(set, w2);
    j["L1"] = L1.value.to_string();
    j["L1_witness"] = L1.witness.to_string();
    j["eta"] = default_eta(L1.value);
  }
  auto U0 = compute_U0(set, w2);
  j["U0"] = U0.value.to_string();
  auto hyp = check_L1_hypothesis(set, omega);
  j["hypothesis"] = {{"holds", hyp.holds}, {"lhs_upper", to_string(hyp.lhs_upper)}};
  r.write_json("nf.json", j);
  std::cout << "nf build: " << F.terms().size() << " terms on " << F.support().size() << " modes\n";
  return 0;
}

int cmd_nf_check(Run& r) {
  auto set = acquire_set(r.cfg);
  auto omega = OmegaSpec::parse(r.cfg.omega);
  auto F = build_F(set, omega);
  auto rep = homological_residual(F, set, omega, true);
  ojson j;
  j["max_abs"] = rep.max_abs;
  j["exact"] = rep.exact;
  j["exactly_zero"] = rep.exactly_zero;
  j["monomials"] = rep.monomials;
  j["residual_terms"] = rep.residual_terms;
  r.write_json("residual.json", j);
  std::cout << "nf check: residual " << (rep.exact ? (rep.exactly_zero ? "exactly 0" : "nonzero") : "")
            << " max " << rep.max_abs << "\n";
  return rep.exact ? (rep.exactly_zero ? 0 : 3) : (rep.max_abs <= 1e-13 ? 0 : 3);
}

TruncationRegion make_region(const std::string& text, const LambdaSet& set) {
  auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "box") {
    std::int64_t M = arg.empty() ? 3 * set.base().max_abs_coordinate() * std::max(set.p(), set.q())
                                 : std::stoll(arg);
    return TruncationRegion::box(M);
  }
  if (kind == "lambda_closure") return TruncationRegion::lambda_closure(set, arg.empty() ? 1 : std::stoi(arg));
  fail(ErrorKind::config, "unknown truncation '" + text + "'");
}

int cmd_nls_run(Run& r) {
  const auto& c = r.cfg;
  auto set = acquire_set(c);
  auto omega = OmegaSpec::parse(c.omega);
  NlsModel model(make_region(c.truncation, set), omega, NlsOptions{c.nonlinear, true});
  const double lam = c.ladder.empty() ? 1.0 : c.ladder.front();
  CVec b0 = c.b0.empty() ? default_datum(set.num_generations()) : c.b0;
  for (auto& x : b0) x /= lam;
  auto tab = spouse_tables(set);
  SparseFourierState s0(set.modes(), lift_to_lambda(tab, b0));
  IntegrationStats st;
  auto out = integrate_nls(model, SparseFourierState(model.region().modes(), model.gather(s0)),
                           linspace(0, c.t_end, std::max<std::size_t>(c.samples, 2)), c.tolerances, &st);
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,mass,hamiltonian,l1,outside_lambda\n";
  const auto& modes = model.region().modes();
  for (std::size_t k = 0; k < out.t.size(); k += std::max<std::size_t>(c.stride, 1)) {
    auto g = rotate_frame(SparseFourierState(modes, out.y[k], Frame::rotating, out.t[k]), Frame::gauged,
                          model.omega2());
    double outside = 0;
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (!set.contains(modes[i])) outside += std::abs(g.amp[i]);
    csv << out.t[k] << "," << mass(g) << "," << model.hamiltonian(g.amp) << "," << ell1_norm(g) << ","
        << outside << "\n";
  }
  r.write_csv("nls.csv", csv.str());
  r.extra["steps"] = st.accepted;
  std::cout << "nls run: " << model.region().describe() << ", " << model.size() << " modes, "
            << model.table().entries.size() << " interactions, " << st.accepted << " steps\n";
  return 0;
}

int cmd_shadow(Run& r) {
  const auto& c = r.cfg;
  auto set = acquire_set(c);
  auto omega = OmegaSpec::parse(c.omega);
  ShadowConfig sc;
  sc.ladder = c.ladder;
  sc.b0 = c.b0;
  sc.T0 = c.T0;
  sc.nonlinear = c.nonlinear;
  sc.conjugate = c.conjugate;
  sc.samples = c.samples;
  auto colon = c.truncation.find(':');
  if (c.truncation.substr(0, colon) != "lambda_closure")
    fail(ErrorKind::config, "shadowing runs on a lambda_closure truncation");
  if (colon != std::string::npos) sc.max_outsiders = std::stoi(c.truncation.substr(colon + 1));
  auto rep = shadowing_experiment(set, omega, sc);
  r.write_json("shadow.json", to_json(rep));
  std::ostringstream csv;
  csv.precision(17);
  csv << "lambda,t,error\n";
  for (const auto& run : rep.runs)
    for (std::size_t k = 0; k < run.t.size(); k += std::max<std::size_t>(c.stride, 1))
      csv << run.lambda << "," << run.t[k] << "," << run.error[k] << "\n";
  r.write_csv("shadow.csv", csv.str());
  for (const auto& run : rep.runs) {
    r.extra["seconds"].push_back(run.seconds);
    std::cout << "lambda " << run.lambda << ": sup error " << run.sup_error << ", lambda * error "
              << run.scaled_error << ", leak " << run.leak << "\n";
  }
  std::cout << "slope " << rep.slope << (rep.strictly_decreasing ? ", strictly decreasing\n" : "\n");
  return 0;
}

int cmd_growth(Run& r) {
  const auto& c = r.cfg;
  auto set = acquire_set(c);
  TransferSearchConfig tc;
  tc.integrator = c.tolerances;
  const int N = static_cast<int>(set.num_generations());
  auto orbit = find_transfer_orbit(N, c.delta, tc);
  auto traj = integrate_toy(orbit.b0, orbit.T0, c.tolerances, std::max<std::size_t>(c.samples, 2));
  auto g = growth_diagnostic(set, traj, c.s, tc.start, N - 2);
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,norm2";
  for (int i = 0; i < N; ++i) csv << ",mass_gen" << i + 1;
  csv << "\n";
  for (std::size_t k = 0; k < g.t.size(); k += std::max<std::size_t>(c.stride, 1)) {
    csv << g.t[k] << "," << g.norm2[k];
    for (double m : g.generation_mass[k]) csv << "," << m;
    csv << "\n";
  }
  r.write_csv("growth.csv", csv.str());
  ojson j;
  j["s"] = g.s;
  j["start"] = g.start;
  j["target"] = g.target;
  j["T0"] = orbit.T0;
  j["concentration"] = orbit.concentration;
  j["ratio"] = g.ratio;
  j["weight_ratio"] = g.weight_ratio;
  j["ratio_over_weights"] = g.ratio / g.weight_ratio;
  r.write_json("growth.json", j);
  std::cout << "growth: ratio " << g.ratio << ", S_target / S_start " << g.weight_ratio << "\n";
  return 0;
}

int cmd_params(Run& r) {
  const auto& c = r.cfg;
  PaperScaleInput in;
  in.C = parse_bigint(c.C, "C");
  in.mu = parse_rational(c.mu);
  in.s = exact_decimal(c.s);
  in.profile = ApproxProfile::parse(c.profile);
  in.epsilon = parse_rational(c.epsilon);
  in.constants.alpha = parse_rational(c.alpha);
  in.constants.K = parse_rational(c.K);
  in.constants.eta_tilde = parse_rational(c.eta_tilde);
  in.constants.sigma = parse_rational(c.sigma);
  if (c.gamma) in.constants.gamma = parse_rational(*c.gamma);
  auto rep = paper_scale_params(in);
  r.write_json("params.json", to_json(rep, in));
  std::cout << "params: N = " << rep.N << ", log lambda = 5^" << rep.N << " = " << rep.log_lambda
            << ", log10 T = " << str(rep.log10_T, 12) << "\n";
  return 0;
}

void write_manifest(Run& r, int code, const std::string& error) {
  ojson m;
  m["schema"] = "nlslab.manifest.v1";
  m["tool"] = "nlslab";
  m["version"] = kVersion;
  m["command"] = r.command;
  m["config"] = to_json(r.cfg);
  m["config_hash"] = r.hash;
  m["seeds"] = {{"seed", r.cfg.seed}};
  m["artifacts"] = r.artifacts;
  m["exit_code"] = code;
  if (!error.empty()) m["error"] = error;
  if (!r.extra.empty()) m["run"] = r.extra;
  fs::create_directories(r.cfg.output);
  std::ofstream(r.path("manifest.json")) << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: energy cascades for cubic NLS on irrational tori"};
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  std::vector<std::string> defines;
  app.add_option("-c,--config", config_path, "JSON config file");
  app.add_option("-D,--define", defines, "Override a config key: key=value");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_subcommand("cf", "Continued fractions and psi-convergents");
  auto* lambda = app.add_subcommand("lambda", "Resonant set construction");
  lambda->add_subcommand("build", "Build and scale a base set");
  lambda->add_subcommand("verify", "Check the closure and nondegeneracy properties");
  lambda->add_subcommand("scale", "Rescale a stored set by (p, q)");
  lambda->require_subcommand(1);
  auto* toy = app.add_subcommand("toy", "Toy model");
  toy->add_subcommand("run", "Integrate from b0");
  toy->add_subcommand("transfer", "Search a transfer orbit");
  toy->require_subcommand(1);
  auto* nf = app.add_subcommand("nf", "Weak Birkhoff normal form");
  nf->add_subcommand("build", "Generating function F");
  nf->add_subcommand("check", "Homological identity residual");
  nf->require_subcommand(1);
  auto* nls = app.add_subcommand("nls", "Truncated NLS");
  nls->add_subcommand("run", "Integrate the lifted toy datum");
  nls->require_subcommand(1);
  app.add_subcommand("shadow", "Lambda-ladder shadowing experiment");
  app.add_subcommand("growth", "Sobolev growth along a lifted transfer orbit");
  app.add_subcommand("params", "Parameters at the true scale, in log form");
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Run run;
  int code = 0;
  std::string error;
  try {
    if (replay->parsed()) {
      std::ifstream in(manifest_path);
      if (!in) fail(ErrorKind::config, "cannot open manifest '" + manifest_path + "'");
      auto m = nlohmann::json::parse(in, nullptr, false);
      if (m.is_discarded() || !m.contains("config") || !m.contains("command"))
        fail(ErrorKind::config, "not a manifest: " + manifest_path);
      run.cfg = parse_config(m["config"].dump());
      run.command = m["command"].get<std::string>();
    } else {
      if (!config_path.empty()) run.cfg = load_config(config_path);
      for (const auto* sub : app.get_subcommands()) {
        run.command = sub->get_name();
        for (const auto* leaf : sub->get_subcommands()) run.command += " " + leaf->get_name();
      }
    }
    for (const auto& d : defines) apply_override(run.cfg, d);
    apply_environment(run.cfg);
    if (run.cfg.threads > 0) omp_set_num_threads(run.cfg.threads);
    run.hash = config_hash(run.cfg);

    const std::string& cmd = run.command;
    if (cmd == "cf") code = cmd_cf(run);
    else if (cmd == "lambda build") code = cmd_lambda_build(run);
    else if (cmd == "lambda verify") code = cmd_lambda_verify(run);
    else if (cmd == "lambda scale") code = cmd_lambda_scale(run);
    else if (cmd == "toy run") code = cmd_toy_run(run);
    else if (cmd == "toy transfer") code = cmd_toy_transfer(run);
    else if (cmd == "nf build") code = cmd_nf_build(run);
    else if (cmd == "nf check") code = cmd_nf_check(run);
    else if (cmd == "nls run") code = cmd_nls_run(run);
    else if (cmd == "shadow") code = cmd_shadow(run);
    else if (cmd == "growth") code = cmd_growth(run);
    else if (cmd == "params") code = cmd_params(run);
    else fail(ErrorKind::config, "unknown command '" + cmd + "'");
  } catch (const Error& e) {
    code = exit_code(e.kind());
    error = std::string(to_string(e.kind())) + ": " + e.what();
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = 1;
    error = e.what();
    std::cerr << "error: " << e.what() << "\n";
  }
  try {
    if (!run.cfg.output.empty()) write_manifest(run, code, error);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write manifest: " << e.what() << "\n";
    if (code == 0) code = 1;
  }
  return code;
}
