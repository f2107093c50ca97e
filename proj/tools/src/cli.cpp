#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "kforest/appendix_verifier.hpp"
#include "kforest/errors.hpp"
#include "kforest/experiments.hpp"
#include "kforest/graph.hpp"
#include "kforest/matroid_union.hpp"
#include "kforest/mu_constants.hpp"
#include "kforest/special_fn.hpp"
#include "kforest/thresholds.hpp"
#include "report_io.hpp"

namespace kforest::cli {
namespace {

constexpr double kZeta3 = 1.2020569031595942;

struct Flags {
  bool fast = false;
  bool paper = false;
  std::string format = "json";
  CLI::Option* seed = nullptr;
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& flags) {
  flags.seed = sub->add_option("--seed", cfg.seed, "master seed (default: $KFOREST_SEED, else 0)");
  sub->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  sub->add_flag("!--no-timing", cfg.timing, "omit wall-clock fields (byte-stable output)");
}

void add_profile(CLI::App* sub, Flags& flags) {
  auto* f = sub->add_flag("--fast", flags.fast, "coarse grids (default)");
  auto* p = sub->add_flag("--paper", flags.paper, "full-resolution grids");
  f->excludes(p);
}

std::uint64_t parse_seed_text(const std::string& text, const char* origin) {
  std::uint64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last)
    throw UsageError(std::string(origin) + ": seed must be a non-negative integer, got '" + text + "'");
  return v;
}

template <class T>
void require(bool ok, const std::string& what, T value) {
  if (!ok) {
    std::ostringstream os;
    os << what << " (got " << value << ")";
    throw UsageError(os.str());
  }
}

Json config_json(const RunConfig& cfg) {
  Json j;
  const auto& s = cfg.subcommand;
  const bool verify = s == "verify-a" || s == "verify-b";
  if (verify) j["profile"] = cfg.profile == Profile::paper ? "paper" : "fast";
  if (s == "mu2") j["tolerance"] = cfg.tolerance;
  if (s == "zk" || s == "simulate" || s == "core") j["n"] = cfg.n;
  if (s == "zk" || s == "simulate" || s == "rank" || s == "constants") j["k"] = cfg.k;
  if (s == "core") {
    j["c"] = cfg.c;
    j["kappa"] = cfg.kappa;
    j["orient"] = cfg.orient;
  }
  if (s == "constants") j["kappa"] = cfg.kappa;
  if (s == "simulate" || s == "core") j["trials"] = cfg.trials;
  if (s == "simulate" || s == "core" || s == "verify-b") j["seed"] = cfg.seed;
  if (s == "rank") j["input"] = cfg.input;
  return j;
}

Json envelope(const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = cfg.subcommand;
  j["config"] = config_json(cfg);
  return j;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int verification_output(const RunConfig& cfg, const std::vector<verify::GridReport>& reports, std::ostream& out) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  if (cfg.format == Format::csv) {
    out << (cfg.dump_values ? dump_csv(reports) : reports_csv(reports, cfg.timing));
  } else {
    Json j = envelope(cfg);
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, cfg.timing));
    j["reports"] = std::move(arr);
    j["pass"] = pass;
    write_json(out, j);
  }
  return pass ? kExitOk : kExitFail;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const auto core = thresholds::core_threshold(cfg.kappa);
  const auto tree = thresholds::tree_threshold(cfg.k);
  const auto dens = thresholds::density_threshold_prime(cfg.k);
  const double lam = special::lambda_star();
  Json r;
  r["core_threshold_kappa"] = cfg.kappa;
  r["core_threshold_c"] = core.c;
  r["core_threshold_lambda"] = core.lambda;
  r["tree_threshold_k"] = cfg.k;
  r["tree_threshold_c"] = tree.c;
  r["density_threshold_prime_c"] = dens.c;
  r["density_threshold_prime_lambda"] = dens.lambda;
  r["density_threshold_prime_vertex_fraction"] = dens.vertex_fraction;
  r["density_threshold_prime_edge_fraction"] = dens.edge_fraction;
  r["lambda_star"] = lam;
  r["lambda4_over_f3"] = std::pow(lam, 4) / special::f_tail(3, lam);
  if (cfg.format == Format::csv) {
    out << key_value_csv(r);
  } else {
    Json j = envelope(cfg);
    j["result"] = r;
    write_json(out, j);
  }
  return kExitOk;
}

int cmd_mu2(const RunConfig& cfg, std::ostream& out) {
  const auto q = mu::mu2(cfg.tolerance);
  Json r;
  r["mu2"] = q.value;
  r["quadrature_error_estimate"] = q.abs_error_estimate;
  r["tail_bound"] = q.tail_bound;
  r["error_budget"] = q.abs_error_estimate + q.tail_bound;
  r["cutoff"] = q.cutoff;
  if (cfg.format == Format::csv) {
    out << key_value_csv(r);
  } else {
    Json j = envelope(cfg);
    j["result"] = r;
    write_json(out, j);
  }
  return kExitOk;
}

int cmd_zk(const RunConfig& cfg, std::ostream& out) {
  const double z = mu::expected_Zk(cfg.n, cfg.k);
  const double k2 = static_cast<double>(cfg.k) * cfg.k;
  Json r;
  r["expected_Zk"] = z;
  r["lower"] = k2 * (1.0 - 1.0 / static_cast<double>(cfg.n));
  r["upper"] = k2;
  if (cfg.format == Format::csv) {
    out << key_value_csv(r);
  } else {
    Json j = envelope(cfg);
    j["result"] = r;
    write_json(out, j);
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  auto s = experiments::monte_carlo_mst_k(cfg.n, cfg.k, cfg.trials, cfg.seed, cfg.threads);
  if (cfg.k == 1) s.prediction = kZeta3;
  if (cfg.k == 2) s.prediction = mu::mu2(1e-9).value;
  if (cfg.format == Format::csv) {
    out << trials_csv(s);
    return kExitOk;
  }
  Json j = envelope(cfg);
  j["result"] = to_json(s, cfg.timing);
  j["expected_Zk"] = mu::expected_Zk(cfg.n, cfg.k);
  write_json(out, j);
  return kExitOk;
}

int cmd_core(const RunConfig& cfg, std::ostream& out) {
  const auto s = experiments::empirical_core_statistics(cfg.n, cfg.c, cfg.kappa, cfg.trials, cfg.seed, cfg.threads);
  std::optional<experiments::TrialSummary> o;
  if (cfg.orient) o = experiments::orientation_experiment(cfg.n, cfg.c, cfg.trials, cfg.seed, cfg.threads);
  if (cfg.format == Format::csv) {
    out << trials_csv(s);
    if (o) out << trials_csv(*o);
    return kExitOk;
  }
  Json j = envelope(cfg);
  j["result"] = to_json(s, cfg.timing);
  try {
    j["predicted_edge_fraction"] = thresholds::core_fractions(cfg.kappa, cfg.c).edge_fraction;
  } catch (const NoRootError&) {
    j["predicted_edge_fraction"] = 0.0;
  }
  if (o) j["orientation"] = to_json(*o, cfg.timing);
  write_json(out, j);
  return kExitOk;
}

int cmd_verify_a(const RunConfig& cfg, std::ostream& out) {
  const bool paper = cfg.profile == Profile::paper;
  const double delta = cfg.delta.value_or(paper ? 1.0 / 4000.0 : 1.0 / 1000.0);
  std::vector<verify::GridReport> reports;
  reports.push_back(verify::verify_region_E0(paper ? 1e-5 : 1e-4));
  reports.push_back(verify::verify_region_E1(delta, {cfg.threads, cfg.include_upper_edge, cfg.dump_values}));
  verify::EdgeOptions eo;
  eo.delta = delta;
  eo.samples = paper ? 10000 : 2000;
  eo.rows = paper ? 1000 : 200;
  eo.threads = cfg.threads;
  for (auto& r : verify::verify_region_E2_E3(eo)) reports.push_back(std::move(r));
  return verification_output(cfg, reports, out);
}

int cmd_verify_b(const RunConfig& cfg, std::ostream& out) {
  const bool paper = cfg.profile == Profile::paper;
  const double spacing = cfg.spacing.value_or(0.001);
  const std::int64_t samples = cfg.samples.value_or(paper ? 10000 : 2000);
  auto reports = verify::verify_phi_grids(spacing, cfg.threads);
  reports.push_back(verify::verify_L_gap(samples, cfg.seed, cfg.threads));
  return verification_output(cfg, reports, out);
}

int cmd_verify_c(const RunConfig& cfg, std::ostream& out) {
  const std::int64_t samples = cfg.samples.value_or(10000);
  return verification_output(cfg, {verify::verify_appendix_c(samples)}, out);
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  WeightedGraph g;
  if (cfg.input == "-") {
    g = read_edge_list(std::cin);
  } else {
    std::ifstream in(cfg.input);
    if (!in) throw UsageError("rank: cannot open " + cfg.input);
    g = read_edge_list(in);
  }
  std::vector<EdgeId> all(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) all[static_cast<std::size_t>(e)] = e;
  matroid::ForestPacker packer(g, cfg.k);
  for (EdgeId e : all) packer.insert(e);
  Json r;
  r["vertices"] = g.vertex_count();
  r["edges"] = g.edge_count();
  r["rank"] = packer.size();
  if (cfg.format == Format::csv) {
    out << key_value_csv(r);
    return kExitOk;
  }
  Json forests = Json::array();
  for (const auto& cls : packer.partition().classes()) forests.push_back(cls);
  r["forests"] = std::move(forests);
  Json j = envelope(cfg);
  j["result"] = r;
  write_json(out, j);
  return kExitOk;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv, std::string* help) {
  RunConfig cfg;
  Flags flags;
  CLI::App app{"k edge-disjoint spanning trees: constants, simulation and verification", "kforest"};
  app.require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "core thresholds, c'_k, lambda and lambda^4/f3(lambda)");
  constants->add_option("--k", cfg.k, "trees (density threshold uses the (k+1)-core)");
  constants->add_option("--kappa", cfg.kappa, "core order for the emergence threshold");
  auto* mu2 = app.add_subcommand("mu2", "mu_2 by adaptive quadrature");
  mu2->add_option("--tol", cfg.tolerance, "absolute tolerance");
  auto* zk = app.add_subcommand("zk", "expected sum of the k(n-1) smallest weights of K_n");
  zk->add_option("--n", cfg.n);
  zk->add_option("--k", cfg.k);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo k spanning trees of weighted K_n");
  sim->add_option("--n", cfg.n);
  sim->add_option("--k", cfg.k);
  sim->add_option("--trials", cfg.trials);
  auto* core = app.add_subcommand("core", "empirical k-core statistics of G(n, c/n)");
  core->add_option("--n", cfg.n);
  core->add_option("--c", cfg.c);
  core->add_option("--kappa", cfg.kappa);
  core->add_option("--trials", cfg.trials);
  core->add_flag("--orient", cfg.orient, "also run the 3-core orientation experiment");
  auto* va = app.add_subcommand("verify-a", "grid certificate that f <= 1 on the constraint set");
  va->add_option("--delta", cfg.delta, "E1 grid step (default 1/1000 fast, 1/4000 paper)");
  va->add_flag("--include-upper-edge", cfg.include_upper_edge, "add points on sigma0 + sigma1 = 1");
  va->add_flag("--dump-values", cfg.dump_values, "CSV of every E1 grid value (with --format csv)");
  add_profile(va, flags);
  auto* vb = app.add_subcommand("verify-b", "phi grids and the L1 > L2 sampler");
  vb->add_option("--spacing", cfg.spacing, "phi grid step (default 0.001)");
  vb->add_option("--samples", cfg.samples, "L-gap samples (default 2000 fast, 10000 paper)");
  add_profile(vb, flags);
  auto* vc = app.add_subcommand("verify-c", "inequalities between truncated exponential ratios");
  vc->add_option("--samples", cfg.samples, "grid points (default 10000)");
  auto* rank = app.add_subcommand("rank", "rank of an edge list in the union of k graphic matroids");
  rank->add_option("--input", cfg.input, "edge list file, - for stdin")->required();
  rank->add_option("--k", cfg.k);

  // common flags are attached to every subcommand
  const std::vector<CLI::App*> subs_all{constants, mu2, zk, sim, core, va, vb, vc, rank};
  std::vector<Flags> per_sub(subs_all.size());
  for (std::size_t i = 0; i < subs_all.size(); ++i) add_common(subs_all[i], cfg, per_sub[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os, es;
    app.exit(e, os, es);
    if (help) *help = os.str();
    cfg.subcommand = "help";
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto subs = app.get_subcommands();
  cfg.subcommand = subs.front()->get_name();
  for (std::size_t i = 0; i < per_sub.size(); ++i) {
    if (subs_all[i] != subs.front()) continue;
    const Flags& f = per_sub[i];
    cfg.format = f.format == "csv" ? Format::csv : Format::json;
    if (f.seed->count() == 0) {
      if (const char* env = std::getenv(kSeedEnv)) cfg.seed = parse_seed_text(env, kSeedEnv);
    }
  }
  cfg.profile = flags.paper ? Profile::paper : Profile::fast;
  return cfg;
}

void validate(const RunConfig& cfg) {
  require(cfg.tolerance >= 1e-10 && cfg.tolerance <= 1e-2, "--tol must lie in [1e-10, 1e-2]", cfg.tolerance);
  if (cfg.delta) require(*cfg.delta > 0.0 && *cfg.delta <= 0.01, "--delta must lie in (0, 0.01]", *cfg.delta);
  if (cfg.spacing) require(*cfg.spacing > 0.0 && *cfg.spacing <= 0.1, "--spacing must lie in (0, 0.1]", *cfg.spacing);
  if (cfg.samples) {
    const std::int64_t floor_samples = cfg.subcommand == "verify-c" ? 1000 : 1;
    require(*cfg.samples >= floor_samples && *cfg.samples <= 100'000'000,
            "--samples must lie in [" + std::to_string(floor_samples) + ", 1e8]", *cfg.samples);
  }
  require(cfg.n >= 2 && cfg.n <= 100'000'000, "--n must lie in [2, 1e8]", cfg.n);
  require(cfg.k >= 1 && cfg.k <= 1000, "--k must lie in [1, 1000]", cfg.k);
  require(std::isfinite(cfg.c) && cfg.c > 0.0, "--c must be positive", cfg.c);
  require(cfg.kappa >= 3 && cfg.kappa <= 1000, "--kappa must lie in [3, 1000]", cfg.kappa);
  require(cfg.trials >= 1 && cfg.trials <= 1'000'000, "--trials must lie in [1, 1e6]", cfg.trials);
  require(cfg.threads >= 0, "--threads must be non-negative", cfg.threads);
  if (cfg.subcommand == "simulate")
    require(cfg.n >= 2 * static_cast<std::int64_t>(cfg.k), "simulate needs n >= 2k", cfg.n);
  if (cfg.subcommand == "zk") {
    const double pairs = 0.5 * static_cast<double>(cfg.n) * static_cast<double>(cfg.n - 1);
    require(static_cast<double>(cfg.k) * static_cast<double>(cfg.n - 1) <= pairs, "zk needs k(n-1) <= C(n,2)", cfg.k);
  }
  if (cfg.subcommand == "constants") require(cfg.k >= 2, "constants needs --k >= 2", cfg.k);
  if (cfg.dump_values && cfg.format != Format::csv)
    throw UsageError("--dump-values needs --format csv");
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  const auto& s = cfg.subcommand;
  if (s == "constants") return cmd_constants(cfg, out);
  if (s == "mu2") return cmd_mu2(cfg, out);
  if (s == "zk") return cmd_zk(cfg, out);
  if (s == "simulate") return cmd_simulate(cfg, out);
  if (s == "core") return cmd_core(cfg, out);
  if (s == "verify-a") return cmd_verify_a(cfg, out);
  if (s == "verify-b") return cmd_verify_b(cfg, out);
  if (s == "verify-c") return cmd_verify_c(cfg, out);
  if (s == "rank") return cmd_rank(cfg, out);
  throw UsageError("unknown subcommand '" + s + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    std::string help;
    const RunConfig cfg = parse_args(argc, argv, &help);
    if (cfg.subcommand == "help") {
      out << help;
      return kExitOk;
    }
    validate(cfg);
    if (cfg.output.empty()) return dispatch(cfg, out);
    std::ofstream file(cfg.output);
    if (!file) throw UsageError("cannot write " + cfg.output);
    const int code = dispatch(cfg, file);
    file.flush();
    if (!file) throw std::runtime_error("write to " + cfg.output + " failed");
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nrun 'kforest --help' for usage\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: bad input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace kforest::cli
