// Experiment runner for the spherical NLS toolkit. Every command takes a
// seed, writes <out>.manifest.json (config echo + wall time),
// <out>.results.json (deterministic results) and <out>.series.csv, and can be
// replayed byte-identically from its manifest.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nls/io.hpp"
#include "nls/samplers.hpp"

namespace {

using nls::Json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

struct Outputs {
  std::string base = "experiment";
  Json parameters;
  Json results;
  std::string series;

  void write(const std::string& command, double wall_seconds) const {
    Json manifest{{"command", command},
                  {"parameters", parameters},
                  {"versions", Json{{"compiler", __VERSION__},
                                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                  std::to_string(EIGEN_MINOR_VERSION)}}},
                  {"wall_time_s", wall_seconds}};
    std::ofstream(base + ".manifest.json") << manifest.dump(2) << "\n";
    std::ofstream(base + ".results.json") << results.dump(2) << "\n";
    std::ofstream(base + ".series.csv") << series;
  }
};

struct EvolveParams {
  int K = 16;
  double dt = 1e-3, T = 0.5, delta = 0.1, s = 0.25, amp = 0.5;
  int stride = 10, sign = 1;
  bool plain_cubic = false, diagnostics = true;
  std::uint64_t seed = 1;

  Json to_json() const {
    return Json{{"K", K},         {"dt", dt},     {"T", T},
                {"delta", delta}, {"s", s},       {"amp", amp},
                {"stride", stride}, {"sign", sign}, {"plain_cubic", plain_cubic},
                {"diagnostics", diagnostics}, {"seed", seed}};
  }
  static EvolveParams from_json(const Json& j) {
    EvolveParams p;
    p.K = j.at("K");
    p.dt = j.at("dt");
    p.T = j.at("T");
    p.delta = j.at("delta");
    p.s = j.at("s");
    p.amp = j.at("amp");
    p.stride = j.at("stride");
    p.sign = j.at("sign");
    p.plain_cubic = j.at("plain_cubic");
    p.diagnostics = j.at("diagnostics");
    p.seed = j.at("seed");
    return p;
  }
};

int run_evolve(const EvolveParams& p, Outputs& out) {
  nls::Rng rng(p.seed);
  const nls::SpectralField u0 = nls::random_b14_field(p.K, p.amp, rng);
  nls::EvolutionConfig cfg;
  cfg.K = p.K;
  cfg.dt = p.dt;
  cfg.T = p.T;
  cfg.delta = p.delta;
  cfg.s = p.s;
  cfg.sample_stride = p.stride;
  cfg.sign = p.sign;
  cfg.nl = p.plain_cubic ? nls::Nonlinearity::PlainCubic : nls::Nonlinearity::GaugeCubic;
  const nls::RunRecord rec = nls::evolve(u0, cfg);

  out.results = Json{{"run", nls::to_json(rec)}};
  nls::AprioriReport diag;
  const bool with_diag = p.diagnostics && p.K <= 24 && !rec.guard_tripped;
  if (with_diag) {
    diag = nls::apriori_diagnostics(rec, {p.delta, 0.1});
    out.results["apriori"] = nls::to_json(diag);
    out.results["continuity"] = nls::to_json(nls::continuity_modulus(rec, p.s));
  }
  std::ostringstream csv;
  nls::write_run_csv(csv, rec, with_diag ? &diag : nullptr);
  out.series = csv.str();

  if (rec.guard_tripped) {
    std::cerr << "numerical guard tripped at t = " << rec.guard_time << ": " << rec.guard_reason << "\n";
    return kExitGuard;
  }
  return kExitOk;
}

struct HomsubParams {
  int K = 8, K_keep = 8;
  double dt = 1e-3, T = 0.5, amp = 0.5, b = 0.51;
  std::uint64_t seed = 1;

  Json to_json() const {
    return Json{{"K", K}, {"K_keep", K_keep}, {"dt", dt}, {"T", T}, {"amp", amp}, {"b", b}, {"seed", seed}};
  }
  static HomsubParams from_json(const Json& j) {
    HomsubParams p;
    p.K = j.at("K");
    p.K_keep = j.at("K_keep");
    p.dt = j.at("dt");
    p.T = j.at("T");
    p.amp = j.at("amp");
    p.b = j.at("b");
    p.seed = j.at("seed");
    return p;
  }
};

int run_homsub(const HomsubParams& p, Outputs& out) {
  nls::Rng rng(p.seed);
  const nls::HomState u0 = nls::random_hom_state(p.K, p.amp, rng);
  nls::HomTrajectory traj;
  try {
    traj = nls::hom_evolve(u0, p.T, p.dt, p.K_keep);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitGuard;
  }

  const int n = traj.n_times();
  std::ostringstream csv;
  csv << "t,l2,h_quarter\n";
  Json l2 = Json::array();
  for (int i = 0; i < n; ++i) {
    nls::HomState s{traj.a.col(i)};
    const double nl2 = nls::hom_l2_norm(s);
    l2.push_back(nl2);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", traj.time(i), nl2, nls::hom_sobolev_norm(s, 0.25));
    csv << buf;
  }
  out.series = csv.str();
  out.results = Json{{"K", p.K},
                     {"K_keep", p.K_keep},
                     {"l2_series", l2},
                     {"xsb_quarter", nls::xsb_norm(traj, 0.25, p.b)},
                     {"final_h_quarter", nls::hom_sobolev_norm(nls::HomState{traj.a.col(n - 1)}, 0.25)}};
  return kExitOk;
}

struct PicardParams {
  int K = 8, max_iter = 12;
  double r = 0.1, T = 0.1, b = 0.51, dt = 1e-3;
  std::uint64_t seed = 1;

  Json to_json() const {
    return Json{{"K", K}, {"max_iter", max_iter}, {"r", r}, {"T", T}, {"b", b}, {"dt", dt}, {"seed", seed}};
  }
  static PicardParams from_json(const Json& j) {
    PicardParams p;
    p.K = j.at("K");
    p.max_iter = j.at("max_iter");
    p.r = j.at("r");
    p.T = j.at("T");
    p.b = j.at("b");
    p.dt = j.at("dt");
    p.seed = j.at("seed");
    return p;
  }
};

int run_picard(const PicardParams& p, Outputs& out) {
  nls::Rng rng(p.seed);
  const nls::HomState u0 = nls::random_hom_state(p.K, p.r, rng);
  const nls::PicardResult res = nls::picard_solve(u0, p.T, p.b, p.max_iter, p.dt);

  // cross-check the fixed point against the time stepper
  const nls::HomTrajectory direct = nls::hom_evolve(u0, p.T, p.dt, p.K);
  double worst = 0.0;
  for (int i = 0; i < direct.n_times(); ++i) {
    nls::HomState d{(direct.a.col(i) - res.trajectory.a.col(i)).eval()};
    worst = std::max(worst, nls::hom_sobolev_norm(d, 0.25));
  }
  out.results = Json{{"picard", nls::to_json(res)}, {"stepper_discrepancy_h_quarter", worst}};
  std::ostringstream csv;
  csv << "iteration,diff_xsb\n";
  for (size_t i = 0; i < res.diffs.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, res.diffs[i]);
    csv << buf;
  }
  out.series = csv.str();
  if (!res.contracted) {
    std::cerr << "picard iteration did not contract (T too large for the data size)\n";
    return kExitGuard;
  }
  return kExitOk;
}

struct VerifyParams {
  std::string which = "all";
  int trials = 16;
  std::uint64_t seed = 1;

  Json to_json() const { return Json{{"which", which}, {"trials", trials}, {"seed", seed}}; }
  static VerifyParams from_json(const Json& j) {
    VerifyParams p;
    p.which = j.at("which");
    p.trials = j.at("trials");
    p.seed = j.at("seed");
    return p;
  }
};

int run_verify(const VerifyParams& p, Outputs& out) {
  const std::vector<int> ks = {8, 11, 16, 23, 32, 45, 64};
  std::vector<nls::RatioEntry> all_rows;
  auto add_rows = [&](const std::vector<nls::RatioEntry>& rows) {
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  };

  const bool all = p.which == "all";
  if (all || p.which == "sogge6") {
    const auto res = nls::measure_sogge(6.0, ks, p.trials, p.seed);
    out.results["sogge6"] = nls::to_json(res);
    add_rows(res.table);
  }
  if (all || p.which == "sogge-inf") {
    const auto res = nls::measure_sogge(std::numeric_limits<double>::infinity(), ks, std::min(p.trials, 8),
                                        p.seed + 1);
    out.results["sogge_inf"] = nls::to_json(res);
    add_rows(res.table);
  }
  if (all || p.which == "bilinear") {
    std::vector<std::pair<int, int>> pairs;
    for (const int k : {8, 12, 16, 24, 32, 48}) pairs.emplace_back(k, k);
    for (const int k2 : {8, 16, 32, 64}) pairs.emplace_back(4, k2);
    const auto res = nls::measure_bilinear(pairs, p.trials, p.seed + 2);
    out.results["bilinear"] = nls::to_json(res);
    add_rows(res.table);
  }
  if (all || p.which == "restriction") {
    const auto res = nls::restriction_counterexample({4, 6, 8, 11, 16, 23, 32, 45, 64});
    out.results["restriction"] = nls::to_json(res);
  }
  if (all || p.which == "xsb-bilinear") {
    const auto r16 = nls::verify_bilinear_xsb(p.trials, 16, 0.51, p.seed + 3);
    const auto r32 = nls::verify_bilinear_xsb(p.trials, 32, 0.51, p.seed + 3);
    Json rep = nls::to_json(r32);
    rep["ratio_by_K"] = Json{{"16", r16.max_ratio}, {"32", r32.max_ratio}};
    out.results["xsb_bilinear"] = rep;
  }
  if (all || p.which == "xsb-trilinear") {
    const auto r16 = nls::verify_trilinear(p.trials, 16, 0.51, 0.6, p.seed + 4);
    const auto r32 = nls::verify_trilinear(p.trials, 32, 0.51, 0.6, p.seed + 4);
    Json rep = nls::to_json(r32);
    rep["ratio_by_K"] = Json{{"16", r16.max_ratio}, {"32", r32.max_ratio}};
    out.results["xsb_trilinear"] = rep;
  }
  if (all || p.which == "compute-m") {
    out.results["compute_M"] = Json{{"b_half_m64", nls::compute_M({}, 64, 0.5)},
                                    {"b_half_m128", nls::compute_M({}, 128, 0.5)}};
  }
  if (out.results.empty()) {
    std::cerr << "unknown verifier: " << p.which << "\n";
    return kExitConfig;
  }
  std::ostringstream csv;
  nls::write_fit_csv(csv, all_rows);
  out.series = csv.str();
  return kExitOk;
}

struct AuditParams {
  int K = 32;
  double delta = 0.1, eps = 0.1;

  Json to_json() const { return Json{{"K", K}, {"delta", delta}, {"eps", eps}}; }
  static AuditParams from_json(const Json& j) {
    AuditParams p;
    p.K = j.at("K");
    p.delta = j.at("delta");
    p.eps = j.at("eps");
    return p;
  }
};

int run_audit(const AuditParams& p, Outputs& out) {
  const nls::ResonanceParams rp{p.delta, p.eps};
  const auto disjoint = nls::audit_disjointness(p.K, rp);
  const auto phase = nls::audit_nonvanishing_phase(p.K, rp);

  // a sample of quadruple records around the resonance boundary
  Json samples = Json::array();
  for (int k = 0; k <= p.K; k += std::max(1, p.K / 8))
    for (int k1 = 0; k1 <= p.K; k1 += std::max(1, p.K / 4))
      samples.push_back(nls::to_json(nls::make_record({k, k1, k1 / 2, k / 2 + 1}, rp)));

  out.results = Json{{"disjointness", nls::to_json(disjoint)},
                     {"nonvanishing_phase", nls::to_json(phase)},
                     {"samples", samples}};
  std::ostringstream csv;
  csv << "k,k1,k2,k3,phase,member,weight\n";
  for (const auto& s : samples) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%d,%.17g\n", s["k"].get<int>(), s["k1"].get<int>(),
                  s["k2"].get<int>(), s["k3"].get<int>(), s["phase"].get<double>(),
                  s["member"].get<bool>() ? 1 : 0, s["weight"].get<double>());
    csv << buf;
  }
  out.series = csv.str();
  const bool clean = disjoint.violations.empty() && phase.violations.empty();
  if (!clean) std::cerr << "audit found violations\n";
  return clean ? kExitOk : kExitGuard;
}

struct InstabilityParams {
  std::vector<int> degrees = {8, 16, 32};
  double s = 0.15, T = 0.2, dt = 5e-4, perturb = 1e-3;
  int K_cap = 64, stride = 20;

  Json to_json() const {
    return Json{{"degrees", degrees}, {"s", s},         {"T", T},          {"dt", dt},
                {"perturb", perturb}, {"K_cap", K_cap}, {"stride", stride}};
  }
  static InstabilityParams from_json(const Json& j) {
    InstabilityParams p;
    p.degrees = j.at("degrees").get<std::vector<int>>();
    p.s = j.at("s");
    p.T = j.at("T");
    p.dt = j.at("dt");
    p.perturb = j.at("perturb");
    p.K_cap = j.at("K_cap");
    p.stride = j.at("stride");
    return p;
  }
};

int run_instability(const InstabilityParams& p, Outputs& out) {
  // Evolves the weighted highest-harmonic pair psi_k and (1 + perturb) psi_k
  // and tracks their H^s separation; the decoherence rate increases with k.
  std::ostringstream csv;
  csv << "k,t,separation,amplification,phase_gap\n";
  Json per_k = Json::array();
  for (const int k : p.degrees) {
    const int K = std::min(3 * k, p.K_cap);
    nls::SpectralField u0 = nls::raw_highest_harmonic(k).with_band_limit(K);
    u0.coeffs() *= std::pow(static_cast<double>(k), 0.25 - p.s);
    nls::SpectralField v0 = u0;
    v0.coeffs() *= (1.0 + p.perturb);

    nls::EvolutionConfig cfg;
    cfg.K = K;
    cfg.dt = p.dt;
    cfg.T = p.T;
    cfg.sample_stride = p.stride;
    const nls::RunRecord ra = nls::evolve(u0, cfg);
    const nls::RunRecord rb = nls::evolve(v0, cfg);
    if (ra.guard_tripped || rb.guard_tripped) {
      std::cerr << "numerical guard tripped during instability run k=" << k << "\n";
      return kExitGuard;
    }

    const double sep0 = p.perturb * nls::sobolev_norm(u0, p.s);
    Json sep_series = Json::array();
    double final_amp = 0.0;
    for (size_t i = 0; i < ra.times.size(); ++i) {
      nls::SpectralField d(K);
      d.coeffs() = ra.snapshots[i] - rb.snapshots[i];
      const double sep = nls::sobolev_norm(d, p.s);
      // interaction-picture phase gap of the seeded mode
      const Eigen::Index idx = nls::SpectralField::index(k, k);
      const double gap =
          std::abs(std::arg(ra.snapshots[i][idx] * std::conj(rb.snapshots[i][idx])));
      const double amp = sep / sep0;
      final_amp = amp;
      sep_series.push_back(Json{{"t", ra.times[i]}, {"separation", sep}, {"amplification", amp}});
      char buf[160];
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", k, ra.times[i], sep, amp, gap);
      csv << buf;
    }
    per_k.push_back(Json{{"k", k}, {"K", K}, {"initial_separation", sep0},
                         {"final_amplification", final_amp}, {"series", sep_series}});
  }
  out.results = Json{{"per_k", per_k}};
  out.series = csv.str();
  return kExitOk;
}

void print_registry() {
  std::cout <<
      "available experiments:\n"
      "  evolve           truncated cubic NLS run on S^2 with conservation series and\n"
      "                   the resonance-decomposition diagnostics J1..J5\n"
      "                   --K 16 --dt 1e-3 --T 0.5 --delta 0.1 --s 0.25 --amp 0.5\n"
      "                   --stride 10 --sign 1 [--plain-cubic] [--no-diagnostics] --seed 1\n"
      "  homsub           closed evolution in the homogeneous-harmonic algebra\n"
      "                   --K 8 --K-keep 8 --dt 1e-3 --T 0.5 --amp 0.5 --b 0.51 --seed 1\n"
      "  picard           contraction-map solver for u^3 on homogeneous data, checked\n"
      "                   against the time stepper\n"
      "                   --K 8 --r 0.1 --T 0.1 --b 0.51 --dt 1e-3 --max-iter 12 --seed 1\n"
      "  verify-estimates eigenfunction L^p growth, bilinear products, highest-harmonic\n"
      "                   family and the discrete time-frequency inequalities\n"
      "                   --which sogge6|sogge-inf|bilinear|restriction|xsb-bilinear|\n"
      "                           xsb-trilinear|compute-m|all  --trials 16 --seed 1\n"
      "  resonance-audit  exhaustive disjointness and nonvanishing-phase audits of the\n"
      "                   resonant sets  --K 32 --delta 0.1 --eps 0.1\n"
      "  instability      separation growth of perturbed weighted highest harmonics\n"
      "                   --k 8,16,32 --s 0.15 --T 0.2 --dt 5e-4 --perturb 1e-3 --K-cap 64\n"
      "  from-manifest    replay any experiment from its manifest file\n"
      "\ncommon options: --out <basename> (default \"experiment\") writes\n"
      "<out>.manifest.json, <out>.results.json, <out>.series.csv.\n"
      "Exit codes: 0 ok, 2 config error, 3 numerical guard.\n";
}

int dispatch(const std::string& command, const Json& params, Outputs& out) {
  const auto start = std::chrono::steady_clock::now();
  int code = kExitConfig;
  if (command == "evolve")
    code = run_evolve(EvolveParams::from_json(params), out);
  else if (command == "homsub")
    code = run_homsub(HomsubParams::from_json(params), out);
  else if (command == "picard")
    code = run_picard(PicardParams::from_json(params), out);
  else if (command == "verify-estimates")
    code = run_verify(VerifyParams::from_json(params), out);
  else if (command == "resonance-audit")
    code = run_audit(AuditParams::from_json(params), out);
  else if (command == "instability")
    code = run_instability(InstabilityParams::from_json(params), out);
  else {
    std::cerr << "unknown command in manifest: " << command << "\n";
    return kExitConfig;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.parameters = params;
  out.write(command, wall);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical cubic NLS spectral simulator and estimate verifier"};
  app.require_subcommand(0, 1);

  EvolveParams ep;
  HomsubParams hp;
  PicardParams pp;
  VerifyParams vp;
  AuditParams ap;
  InstabilityParams ip;
  std::string out_base = "experiment";
  std::string manifest_path;

  auto* evolve_cmd = app.add_subcommand("evolve", "run the truncated flow with diagnostics");
  evolve_cmd->add_option("--K", ep.K);
  evolve_cmd->add_option("--dt", ep.dt);
  evolve_cmd->add_option("--T", ep.T);
  evolve_cmd->add_option("--delta", ep.delta);
  evolve_cmd->add_option("--s", ep.s);
  evolve_cmd->add_option("--amp", ep.amp);
  evolve_cmd->add_option("--stride", ep.stride);
  evolve_cmd->add_option("--sign", ep.sign)->check(CLI::IsMember({-1, 1}));
  evolve_cmd->add_flag("--plain-cubic", ep.plain_cubic);
  evolve_cmd->add_flag("!--no-diagnostics", ep.diagnostics);
  evolve_cmd->add_option("--seed", ep.seed);
  evolve_cmd->add_option("--out", out_base);

  auto* homsub_cmd = app.add_subcommand("homsub", "evolve in the homogeneous-harmonic algebra");
  homsub_cmd->add_option("--K", hp.K);
  homsub_cmd->add_option("--K-keep", hp.K_keep);
  homsub_cmd->add_option("--dt", hp.dt);
  homsub_cmd->add_option("--T", hp.T);
  homsub_cmd->add_option("--amp", hp.amp);
  homsub_cmd->add_option("--b", hp.b);
  homsub_cmd->add_option("--seed", hp.seed);
  homsub_cmd->add_option("--out", out_base);

  auto* picard_cmd = app.add_subcommand("picard", "contraction-map solver");
  picard_cmd->add_option("--K", pp.K);
  picard_cmd->add_option("--r", pp.r);
  picard_cmd->add_option("--T", pp.T);
  picard_cmd->add_option("--b", pp.b);
  picard_cmd->add_option("--dt", pp.dt);
  picard_cmd->add_option("--max-iter", pp.max_iter);
  picard_cmd->add_option("--seed", pp.seed);
  picard_cmd->add_option("--out", out_base);

  auto* verify_cmd = app.add_subcommand("verify-estimates", "measure estimate constants and exponents");
  verify_cmd->add_option("--which", vp.which);
  verify_cmd->add_option("--trials", vp.trials);
  verify_cmd->add_option("--seed", vp.seed);
  verify_cmd->add_option("--out", out_base);

  auto* audit_cmd = app.add_subcommand("resonance-audit", "exhaustive resonant-set audits");
  audit_cmd->add_option("--K", ap.K);
  audit_cmd->add_option("--delta", ap.delta);
  audit_cmd->add_option("--eps", ap.eps);
  audit_cmd->add_option("--out", out_base);

  auto* inst_cmd = app.add_subcommand("instability", "perturbed highest-harmonic separation curves");
  inst_cmd->add_option("--k", ip.degrees)->delimiter(',');
  inst_cmd->add_option("--s", ip.s);
  inst_cmd->add_option("--T", ip.T);
  inst_cmd->add_option("--dt", ip.dt);
  inst_cmd->add_option("--perturb", ip.perturb);
  inst_cmd->add_option("--K-cap", ip.K_cap);
  inst_cmd->add_option("--stride", ip.stride);
  inst_cmd->add_option("--out", out_base);

  auto* list_cmd = app.add_subcommand("list", "list experiments, parameters and defaults");

  auto* replay_cmd = app.add_subcommand("from-manifest", "replay an experiment from a manifest");
  replay_cmd->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", out_base);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  if (app.get_subcommands().empty() || list_cmd->parsed()) {
    print_registry();
    return kExitOk;
  }

  try {
    Outputs out;
    out.base = out_base;
    if (replay_cmd->parsed()) {
      Json manifest;
      std::ifstream(manifest_path) >> manifest;
      return dispatch(manifest.at("command"), manifest.at("parameters"), out);
    }
    if (evolve_cmd->parsed()) return dispatch("evolve", ep.to_json(), out);
    if (homsub_cmd->parsed()) return dispatch("homsub", hp.to_json(), out);
    if (picard_cmd->parsed()) return dispatch("picard", pp.to_json(), out);
    if (verify_cmd->parsed()) return dispatch("verify-estimates", vp.to_json(), out);
    if (audit_cmd->parsed()) return dispatch("resonance-audit", ap.to_json(), out);
    if (inst_cmd->parsed()) return dispatch("instability", ip.to_json(), out);
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitGuard;
  }
  print_registry();
  return kExitConfig;
}
