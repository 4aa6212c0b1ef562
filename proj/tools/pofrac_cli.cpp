// Batch driver wiring parameter files and run configs to the solvers,
// the Lipschitz/Gronwall analysis and the well-posedness certificates.
//
// Exit codes: 0 success, 1 invalid config or domain error, 2 numerical
// failure, 3 invariant violation or failed certificate.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pofrac/analysis.hpp"
#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/gronwall.hpp"
#include "pofrac/mittag_leffler.hpp"
#include "pofrac/model.hpp"
#include "pofrac/model_io.hpp"
#include "pofrac/solver.hpp"
#include "pofrac/trajectory_io.hpp"
#include "pofrac/version.hpp"
#include "pofrac/wellposed.hpp"
#include "pofrac/zeta_density.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pofrac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitInvariant = 3;

struct RunConfig {
  ModelParams params;
  Vec3 x0{0.0, 0.0, 0.0};
  SolverConfig solver{FractionalOrder(1.0)};
  std::optional<StateBox> box;
  std::vector<double> epsilons;
  double uniqueness_tol = 1e-3;
  int uniqueness_n_steps_abm = 0;  // 0: same grid for both backends
  std::uint64_t seed = 0;
  json resolved;  // canonical echo used for fingerprinting
};

const json& require_key(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw std::invalid_argument("run config: missing required key '" + key + "'");
  return *it;
}

double number_or_throw(const json& v, const std::string& what) {
  if (!v.is_number())
    throw std::invalid_argument("run config: '" + what + "' must be a number");
  return v.get<double>();
}

Vec3 triple_or_throw(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 3)
    throw std::invalid_argument("run config: '" + what +
                                "' must be an array of 3 numbers");
  return {number_or_throw(v[0], what), number_or_throw(v[1], what),
          number_or_throw(v[2], what)};
}

void reject_unknown_keys(const json& doc,
                         const std::vector<std::string>& known,
                         const std::string& where) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("run config: invalid JSON: ") +
                                e.what());
  }
  reject_unknown_keys(doc,
                      {"params_file", "x0", "solver", "box", "epsilons",
                       "uniqueness", "seed"},
                      "run config");

  RunConfig cfg;
  const std::string params_file = require_key(doc, "params_file").get<std::string>();
  fs::path params_path(params_file);
  if (params_path.is_relative())
    params_path = fs::path(path).parent_path() / params_path;
  cfg.params = load_params_file(params_path.string());

  cfg.x0 = triple_or_throw(require_key(doc, "x0"), "x0");

  const json& sv = require_key(doc, "solver");
  reject_unknown_keys(sv,
                      {"alpha", "T", "n_steps", "method", "picard_max_iter",
                       "picard_tol", "envelope_constant_K"},
                      "run config: solver");
  SolverConfig solver{FractionalOrder(number_or_throw(require_key(sv, "alpha"), "alpha"))};
  solver.horizon = number_or_throw(require_key(sv, "T"), "T");
  solver.n_steps = static_cast<int>(number_or_throw(require_key(sv, "n_steps"), "n_steps"));
  solver.method = solver_method_from_string(require_key(sv, "method").get<std::string>());
  if (sv.contains("picard_max_iter"))
    solver.picard_max_iter = static_cast<int>(number_or_throw(sv["picard_max_iter"], "picard_max_iter"));
  if (sv.contains("picard_tol"))
    solver.picard_tol = number_or_throw(sv["picard_tol"], "picard_tol");
  if (sv.contains("envelope_constant_K"))
    solver.envelope_constant_K = number_or_throw(sv["envelope_constant_K"], "envelope_constant_K");
  solver.validate();
  cfg.solver = solver;

  if (doc.contains("box")) {
    const Vec3 b = triple_or_throw(doc["box"], "box");
    cfg.box = StateBox{b[0], b[1], b[2]};
    cfg.box->validate();
  }
  if (doc.contains("epsilons")) {
    if (!doc["epsilons"].is_array())
      throw std::invalid_argument("run config: 'epsilons' must be an array");
    for (const auto& e : doc["epsilons"])
      cfg.epsilons.push_back(number_or_throw(e, "epsilons"));
  }
  if (doc.contains("uniqueness")) {
    const json& u = doc["uniqueness"];
    reject_unknown_keys(u, {"tol", "n_steps_abm"}, "run config: uniqueness");
    if (u.contains("tol")) cfg.uniqueness_tol = number_or_throw(u["tol"], "uniqueness.tol");
    if (u.contains("n_steps_abm"))
      cfg.uniqueness_n_steps_abm =
          static_cast<int>(number_or_throw(u["n_steps_abm"], "uniqueness.n_steps_abm"));
  }
  if (doc.contains("seed"))
    cfg.seed = static_cast<std::uint64_t>(number_or_throw(doc["seed"], "seed"));

  // Canonical resolved echo (params inlined) for fingerprinting.
  json resolved;
  resolved["params"] = json::parse(params_to_json(cfg.params));
  resolved["x0"] = {cfg.x0[0], cfg.x0[1], cfg.x0[2]};
  resolved["solver"] = {
      {"alpha", cfg.solver.order.value()},
      {"T", cfg.solver.horizon},
      {"n_steps", cfg.solver.n_steps},
      {"method", to_string(cfg.solver.method)},
      {"picard_max_iter", cfg.solver.picard_max_iter},
      {"picard_tol", cfg.solver.picard_tol},
  };
  if (cfg.solver.envelope_constant_K)
    resolved["solver"]["envelope_constant_K"] = *cfg.solver.envelope_constant_K;
  if (cfg.box) resolved["box"] = {cfg.box->M1, cfg.box->M2, cfg.box->M3};
  if (!cfg.epsilons.empty()) resolved["epsilons"] = cfg.epsilons;
  resolved["uniqueness"] = {{"tol", cfg.uniqueness_tol},
                            {"n_steps_abm", cfg.uniqueness_n_steps_abm}};
  resolved["seed"] = cfg.seed;
  cfg.resolved = resolved;
  return cfg;
}

std::string config_fingerprint(const RunConfig& cfg) {
  return fingerprint_hex(cfg.resolved.dump());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
}

json stamp(const RunConfig& cfg) {
  return json{{"version", std::string(version_string())},
              {"config_fingerprint", config_fingerprint(cfg)}};
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  RunConfig cfg = load_run_config(config_path);
  fs::create_directories(out_dir);
  const State x0(cfg.x0);

  Trajectory traj;
  json picard_info;
  if (cfg.solver.method == SolverMethod::mild_picard) {
    auto [t, diag] = solve_mild_picard(cfg.params, x0, cfg.solver);
    traj = std::move(t);
    picard_info = {{"converged", diag.converged},
                   {"iterations_used", diag.iterations_used}};
  } else if (cfg.solver.method == SolverMethod::abm) {
    traj = solve_abm(cfg.params, x0, cfg.solver);
  } else {
    traj = solve_rk4_classical(cfg.params, x0, cfg.solver);
  }

  write_trajectory_csv(traj, (fs::path(out_dir) / "trajectory.csv").string());

  json meta = stamp(cfg);
  meta["trajectory_file"] = "trajectory.csv";
  meta["method"] = traj.method;
  meta["alpha"] = traj.alpha;
  meta["T"] = cfg.solver.horizon;
  meta["n_steps"] = cfg.solver.n_steps;
  meta["x0"] = {cfg.x0[0], cfg.x0[1], cfg.x0[2]};
  meta["params"] = json::parse(params_to_json(cfg.params));
  meta["params_fingerprint"] = traj.params_fingerprint;
  if (!picard_info.is_null()) meta["picard"] = picard_info;
  write_text(fs::path(out_dir) / "run_meta.json", meta.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- lipschitz

int cmd_lipschitz(const std::string& config_path, const std::string& out_dir,
                  int empirical_samples, std::uint64_t seed, bool variant_constants) {
  RunConfig cfg = load_run_config(config_path);
  if (!cfg.box)
    throw std::invalid_argument("lipschitz: run config must provide 'box'");
  fs::create_directories(out_dir);

  LipschitzOptions opts;
  opts.variant_k8 = variant_constants;
  opts.variant_k11 = variant_constants;
  LipschitzReport report = lipschitz_constants(cfg.params, *cfg.box, opts);

  std::string doc;
  if (empirical_samples > 0) {
    EmpiricalCertificate cert;
    cert.n_samples = empirical_samples;
    cert.seed = seed;
    cert.value = empirical_lipschitz(cfg.params, *cfg.box, empirical_samples, seed);
    doc = lipschitz_report_json(report, cfg.params, *cfg.box, &cert);
  } else {
    doc = lipschitz_report_json(report, cfg.params, *cfg.box, nullptr);
  }
  // Re-stamp with the config fingerprint.
  json j = json::parse(doc);
  j["config_fingerprint"] = config_fingerprint(cfg);
  write_text(fs::path(out_dir) / "lipschitz_report.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- gronwall

int cmd_gronwall(double beta, double b, double h0, double t, double horizon,
                 int n_terms, double tol, const std::string& out_dir) {
  GronwallProblem problem{h0, b, beta, horizon};
  GronwallSeriesInfo info;
  const double series = gronwall_bound_constant_q(problem, t, n_terms, tol, &info);
  const double ml = gronwall_bound_ml(h0, b, beta, t);
  json doc;
  doc["version"] = std::string(version_string());
  doc["beta"] = beta;
  doc["b"] = b;
  doc["h0"] = h0;
  doc["t"] = t;
  doc["T"] = horizon;
  doc["n_terms"] = n_terms;
  doc["series_value"] = series;
  doc["series_remainder"] = info.remainder;
  doc["terms_used"] = info.terms_used;
  doc["ml_bound"] = ml;
  doc["config_fingerprint"] = fingerprint_hex(doc.dump());
  std::cout << doc.dump(2) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "gronwall.json", doc.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- wellposed

json uniqueness_to_json(const UniquenessReport& r) {
  return json{{"distance", r.distance},
              {"tol", r.tol},
              {"status", r.pass ? "pass" : "fail"},
              {"n_steps_picard", r.n_steps_picard},
              {"n_steps_abm", r.n_steps_abm},
              {"alpha", r.alpha},
              {"picard_converged", r.picard_converged}};
}

json envelope_to_json(const EnvelopeReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"n", e.n},
                           {"difference", e.difference},
                           {"envelope", e.envelope},
                           {"margin", e.margin}});
  return json{{"entries", entries},
              {"M", r.M},
              {"K_used", r.K_used},
              {"converged", r.converged},
              {"status", r.pass ? "pass" : "fail"}};
}

json box_to_json(const BoxCheckReport& r) {
  json out{{"status", r.pass ? "pass" : "fail"},
           {"flagged_tiny_negatives", r.flagged_tiny_negatives}};
  if (!r.pass)
    out["first_violation"] = json{{"index", r.first_violation.index},
                                  {"component", r.first_violation.component},
                                  {"value", r.first_violation.value},
                                  {"kind", r.first_violation.kind}};
  return out;
}

json dependence_to_json(const DependenceReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"eps", e.eps},
                           {"deviation", e.deviation},
                           {"bound", e.bound},
                           {"status", to_string(e.status)}});
  return json{{"entries", entries},
              {"K_star", r.K_star},
              {"M", r.M},
              {"L", r.L},
              {"alpha", r.alpha},
              {"box", {r.box.M1, r.box.M2, r.box.M3}},
              {"fit_slope", r.fit_slope},
              {"fit_intercept", r.fit_intercept},
              {"status", r.all_pass ? "pass" : "fail"}};
}

int cmd_wellposed(const std::string& config_path, const std::string& out_dir,
                  double tol_override) {
  RunConfig cfg = load_run_config(config_path);
  if (tol_override > 0.0) cfg.uniqueness_tol = tol_override;
  if (!cfg.box)
    throw std::invalid_argument("wellposed: run config must provide 'box'");
  if (cfg.epsilons.empty())
    throw std::invalid_argument("wellposed: run config must provide 'epsilons'");
  if (cfg.solver.method == SolverMethod::rk4_classical)
    throw std::invalid_argument("wellposed: choose a fractional backend");
  fs::create_directories(out_dir);
  const State x0(cfg.x0);

  // The envelope and dependence constants use the analytic L over the box.
  LipschitzReport lip = lipschitz_constants(cfg.params, *cfg.box);
  SolverConfig cfg_with_L = cfg.solver;
  cfg_with_L.envelope_lipschitz_L = lip.L;

  bool any_fail = false;
  bool any_void = false;

  UniquenessReport uni = check_uniqueness(cfg.params, x0, cfg.solver,
                                          cfg.uniqueness_tol,
                                          cfg.uniqueness_n_steps_abm);
  any_fail |= !uni.pass;

  auto [picard_traj, diag] = solve_mild_picard(cfg.params, x0, cfg_with_L);
  EnvelopeReport env = check_picard_envelope(diag);
  any_fail |= !env.pass;

  BoxCheckReport box_picard = check_positivity_and_box(picard_traj, *cfg.box);
  // A box violation voids the Lipschitz hypothesis rather than failing it.
  any_void |= !box_picard.pass;

  DependenceReport dep = check_continuous_dependence(cfg.params, x0,
                                                     cfg.epsilons, cfg.solver,
                                                     *cfg.box);
  for (const auto& e : dep.entries) {
    if (e.status == CertStatus::fail) any_fail = true;
    if (e.status == CertStatus::voided) any_void = true;
  }

  json doc = stamp(cfg);
  doc["lipschitz_L"] = lip.L;
  doc["uniqueness"] = uniqueness_to_json(uni);
  doc["picard_envelope"] = envelope_to_json(env);
  doc["box_check"] = box_to_json(box_picard);
  doc["continuous_dependence"] = dependence_to_json(dep);
  doc["status"] = any_fail ? "fail" : "pass";
  write_text(fs::path(out_dir) / "wellposed_report.json", doc.dump(2) + "\n");

  std::cout << "uniqueness:           " << (uni.pass ? "pass" : "fail")
            << " (distance " << format_double(uni.distance) << ")\n";
  std::cout << "picard_envelope:      " << (env.pass ? "pass" : "fail") << "\n";
  std::cout << "box_check:            " << (box_picard.pass ? "pass" : "void")
            << "\n";
  for (const auto& e : dep.entries)
    std::cout << "dependence eps=" << format_double(e.eps) << ":  "
              << to_string(e.status) << " (deviation "
              << format_double(e.deviation) << ", bound "
              << format_double(e.bound) << ")\n";
  if (any_void)
    std::cerr << "warning: some certificates were voided (box hypothesis not "
                 "validated)\n";
  return any_fail ? kExitInvariant : kExitOk;
}

// ---------------------------------------------------------------- specfun

int cmd_specfun(const std::vector<std::string>& args) {
  if (args.empty())
    throw std::invalid_argument(
        "specfun: expected a function name (ml, ml2, zeta, zeta-check)");
  const std::string& fn = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1)
      throw std::invalid_argument("specfun " + fn + ": expected " +
                                  std::to_string(n) + " numeric arguments");
  };
  auto num = [&](std::size_t i) {
    try {
      return std::stod(args[i]);
    } catch (...) {
      throw std::invalid_argument("specfun: argument '" + args[i] +
                                  "' is not a number");
    }
  };
  if (fn == "ml") {
    need(2);
    if (!(num(1) > 0.0))
      throw std::invalid_argument("specfun ml: order must be positive");
    std::cout << format_double_shortest(mittag_leffler(num(1), num(2))) << "\n";
    return kExitOk;
  }
  if (fn == "ml2") {
    need(3);
    if (!(num(1) > 0.0))
      throw std::invalid_argument("specfun ml2: order must be positive");
    std::cout << format_double_shortest(mittag_leffler2(num(1), num(2), num(3))) << "\n";
    return kExitOk;
  }
  if (fn == "zeta") {
    need(2);
    std::cout << format_double_shortest(
                 zeta_density(FractionalOrder(num(1)), num(2)))
              << "\n";
    return kExitOk;
  }
  if (fn == "zeta-check") {
    need(1);
    const FractionalOrder order(num(1));
    ZetaSelfCheck c = zeta_self_check(order);
    std::cout << "normalization          "
              << format_double_shortest(c.normalization) << "\n";
    std::cout << "first_moment           "
              << format_double_shortest(c.first_moment) << "\n";
    std::cout << "1/Gamma(1+alpha)       "
              << format_double_shortest(c.moment_reference) << "\n";
    return kExitOk;
  }
  throw std::invalid_argument("specfun: unknown function '" + fn + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional plankton-oxygen model toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  int empirical = 0;
  bool variant_constants = false;
  double g_beta = 0.5, g_b = 1.0, g_h0 = 1.0, g_t = 1.0, g_T = 0.0;
  int g_terms = 60;
  double g_tol = 1e-10;
  std::string g_out;
  std::vector<std::string> specfun_args;

  auto* sim = app.add_subcommand("simulate", "integrate the model, write CSV");
  sim->add_option("--config", config_path, "run config JSON")->required();
  sim->add_option("--out", out_dir, "output directory");

  auto* lip = app.add_subcommand("lipschitz", "analytic Lipschitz table");
  lip->add_option("--config", config_path, "run config JSON")->required();
  lip->add_option("--out", out_dir, "output directory");
  lip->add_option("--empirical", empirical, "sampled certificate pair count");
  lip->add_option("--seed", seed, "sampling seed");
  lip->add_flag("--variant-constants", variant_constants,
                "use the alternative K8/K11 forms (gamma dropped, c4^4)");

  auto* gro = app.add_subcommand("gronwall", "evaluate the singular bounds");
  gro->add_option("--beta", g_beta, "order beta > 0")->required();
  gro->add_option("--b", g_b, "constant multiplier b >= 0")->required();
  gro->add_option("--h0", g_h0, "constant forcing h0 >= 0")->required();
  gro->add_option("--t", g_t, "evaluation time")->required();
  gro->add_option("--T", g_T, "horizon (defaults to t)");
  gro->add_option("--n-terms", g_terms, "series truncation");
  gro->add_option("--tol", g_tol, "remainder tolerance");
  gro->add_option("--out", g_out, "output directory (optional)");

  double wp_tol = 0.0;
  auto* wp = app.add_subcommand("wellposed", "run the certificate suite");
  wp->add_option("--config", config_path, "run config JSON")->required();
  wp->add_option("--out", out_dir, "output directory");
  wp->add_option("--tol", wp_tol, "override the uniqueness tolerance");

  auto* sf = app.add_subcommand("specfun", "evaluate special functions");
  sf->add_option("args", specfun_args, "function name and numeric arguments");
  sf->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir);
    if (lip->parsed())
      return cmd_lipschitz(config_path, out_dir, empirical, seed, variant_constants);
    if (gro->parsed())
      return cmd_gronwall(g_beta, g_b, g_h0, g_t, g_T > 0.0 ? g_T : g_t,
                          g_terms, g_tol, g_out);
    if (wp->parsed()) return cmd_wellposed(config_path, out_dir, wp_tol);
    if (sf->parsed()) return cmd_specfun(specfun_args);
  } catch (const numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
