// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here and nowhere else. `kforest_acceptance 4 7` runs a subset.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "kforest/appendix_verifier.hpp"
#include "kforest/experiments.hpp"
#include "kforest/graph.hpp"
#include "kforest/graph_core.hpp"
#include "kforest/matroid_union.hpp"
#include "kforest/mu_constants.hpp"
#include "kforest/reduced_f.hpp"
#include "kforest/rng.hpp"
#include "report_io.hpp"

using namespace kforest;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kMu2 = 4.1704288;
constexpr double kMu2Tol = 1e-6;
constexpr double kMu2Seconds = 5.0;
constexpr double kConstSeconds = 1.0;
constexpr double kFaceTol = 0.005;
constexpr double kGridMaxTarget = -0.0105;
constexpr double kE1Minutes = 30.0;
constexpr double kPhiPaper[4] = {22.49, 25.50, 27.08, 19.04};
constexpr double kPhiTol = 0.5;
constexpr double kPhiFloor = 13.0;
constexpr double kPhiMinutes = 10.0;
constexpr double kRatioSlack = 1e-9;  // applied inside verify_appendix_c
constexpr double kZeta3 = 1.2020569031595942;
constexpr double kMcAllowance = 0.03;
constexpr double kMu2FiniteSize = 0.15;
constexpr double kMcMinutes = 10.0;
constexpr double kCoreVertexFraction = 0.66467065044460436;  // mpmath, c = 4, kappa = 3
constexpr double kCoreTol = 0.02;
constexpr double kOrientFloor = 0.98;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

cli::Json run_cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "kforest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code == cli::kExitUsage) throw std::runtime_error("cli: " + err.str());
  return cli::Json::parse(out.str());
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

void c1(Verdict& v) {
  const auto t0 = Clock::now();
  int code = 0;
  const auto j = run_cli({"mu2", "--tol", "1e-7"}, code);
  const double secs = seconds_since(t0);
  const double mu2 = j["result"]["mu2"].get<double>();
  v.detail << "mu2 = " << mu2 << ", budget " << j["result"]["error_budget"].get<double>() << ", " << secs << " s";
  v.check(std::abs(mu2 - kMu2) <= kMu2Tol, "|mu2 - 4.1704288| <= 1e-6");
  v.check(secs < kMu2Seconds, "runtime < 5 s");
}

void c2(Verdict& v) {
  const auto t0 = Clock::now();
  int code = 0;
  const auto r = run_cli({"constants"}, code)["result"];
  const double secs = seconds_since(t0);
  const double cp = r["density_threshold_prime_c"], lp = r["density_threshold_prime_lambda"];
  const double c3 = r["core_threshold_c"], ratio = r["lambda4_over_f3"];
  v.detail << "c'_2 = " << cp << ", lambda = " << lp << ", c_3 = " << c3 << ", lambda^4/f3 = " << ratio << ", "
           << secs << " s";
  v.check(std::abs(cp - 3.59) <= 0.005, "c'_2");
  v.check(std::abs(lp - 2.688) <= 0.001, "lambda");
  v.check(std::abs(c3 - 3.35) <= 0.01, "core threshold");
  v.check(std::abs(ratio - 7.05) <= 0.01, "lambda^4/f3");
  v.check(secs < kConstSeconds, "runtime < 1 s");
}

void c3(Verdict& v) {
  const double a = std::exp(objective::log_f_E0(2.0 - std::sqrt(3.0)));
  const double b = std::exp(objective::log_f_E0(0.0));
  const double c = std::exp(objective::log_f_E0(0.5));
  v.detail << "f(2-sqrt3) = " << a << ", f(0) = " << b << ", f(1/2) = " << c;
  v.check(std::abs(a - 0.95) <= kFaceTol, "f(2-sqrt3)");
  v.check(std::abs(b - 0.44) <= kFaceTol, "f(0)");
  v.check(std::abs(c - 0.51) <= kFaceTol, "f(1/2)");
}

void c4(Verdict& v) {
  const auto t0 = Clock::now();
  const double delta = 1.0 / 4000.0;
  const auto paper = verify::verify_region_E1(delta);
  const double mins = seconds_since(t0) / 60.0;
  const auto fast = verify::verify_region_E1(1.0 / 1000.0);
  v.detail << "delta 1/4000: max " << paper.worst_value << " over " << paper.points << " points, max + 40 delta = "
           << paper.worst_value + 40 * delta << ", " << mins * 60 << " s; delta 1/1000: max " << fast.worst_value;
  v.check(paper.worst_value <= kGridMaxTarget, "grid max <= -0.0105");
  v.check(paper.worst_value + 40.0 * delta <= 0.0, "max + 40 delta <= 0");
  v.check(fast.worst_value <= kGridMaxTarget, "fast grid max <= -0.0105");
  v.check(mins <= kE1Minutes, "runtime <= 30 min");
}

void c5(Verdict& v) {
  const auto t0 = Clock::now();
  const auto grids = verify::verify_phi_grids(0.001);
  const double mins = seconds_since(t0) / 60.0;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const double m = grids[i].worst_value;
    v.detail << "min phi_" << i + 1 << " = " << m << "; ";
    v.check(std::abs(m - kPhiPaper[i]) <= kPhiTol, "phi_" + std::to_string(i + 1) + " within 0.5");
    v.check(m > kPhiFloor, "phi_" + std::to_string(i + 1) + " > 13");
    v.check(grids[i].pass, "phi_" + std::to_string(i + 1) + " certified");
  }
  const auto gap = verify::verify_L_gap(10000, 0);
  v.detail << "L-gap: " << gap.points << " samples, " << gap.violations << " violations, min gap " << gap.worst_value
           << "; " << mins * 60 << " s for the grids";
  v.check(gap.points == 10000 && gap.violations == 0, "L1 > L2 on 10^4 samples");
  v.check(mins < kPhiMinutes, "runtime < 10 min");
}

void c6(Verdict& v) {
  (void)kRatioSlack;
  const auto r = verify::verify_appendix_c(10000);
  v.detail << r.points << " grid points, " << r.violations << " violations";
  for (const auto& [k, n] : r.extras)
    if (n > 0) v.detail << "; " << k << " " << n;
  v.check(r.violations == 0, "zero violations");
}

WeightedGraph random_multigraph(Rng& rng, int max_n, int max_m) {
  const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
  const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_m + 1)));
  std::vector<Edge> es;
  for (int i = 0; i < m; ++i)
    es.push_back({static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n))),
                  static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n))), rng.uniform()});
  return WeightedGraph(n, std::move(es), false);
}

void c7(Verdict& v) {
  // catalog: every edge subset of K_5 with at most 8 edges, k = 1..3
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  std::int64_t catalog = 0, mismatch = 0;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    if (std::popcount(mask) > 8) continue;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) es.push_back({pairs[i].first, pairs[i].second, 0.5});
    const WeightedGraph g(5, es);
    for (int k = 1; k <= 3; ++k, ++catalog) mismatch += matroid::rank_k(g, k) != matroid::brute_rank_k(g, k);
  }
  Rng rng(7);
  std::int64_t random_mismatch = 0;
  for (int t = 0; t < 500; ++t) {
    const auto g = random_multigraph(rng, 8, 16);
    const int k = 1 + static_cast<int>(rng.below(3));
    random_mismatch += matroid::rank_k(g, k) != matroid::brute_rank_k(g, k);
  }
  std::int64_t identity_fail = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Vertex n = 10 + static_cast<Vertex>(s % 60);
    const double c = 1.0 + static_cast<double>(s % 80) / 10.0;
    const auto g = graphs::sample_gnp(n, std::min(1.0, c / n), stream_seed(99, s));
    const int k = 1 + static_cast<int>(s % 3);
    identity_fail += matroid::rank_via_core_identity(g, k) != matroid::rank_k(g, k);
  }
  v.detail << catalog << " catalog cases, " << mismatch << " mismatches; 500 random, " << random_mismatch
           << " mismatches; core identity " << identity_fail << " failures in 1000";
  v.check(mismatch == 0 && random_mismatch == 0, "rank_k = brute_rank_k");
  v.check(identity_fail == 0, "core identity");
}

void c8(Verdict& v) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) pairs.emplace_back(a, b);
  std::vector<std::uint32_t> trees;
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    if (std::popcount(mask) != 5) continue;
    Dsu d(6);
    bool ok = true;
    for (int i = 0; i < 15 && ok; ++i)
      if (mask >> i & 1u) ok = d.unite(pairs[i].first, pairs[i].second);
    if (ok) trees.push_back(mask);
  }
  int mismatches = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed, 8);
    std::vector<Edge> es;
    for (auto [a, b] : pairs) es.push_back({a, b, rng.uniform()});
    const WeightedGraph g(6, es);
    std::vector<double> tw(trees.size(), 0.0);
    for (std::size_t t = 0; t < trees.size(); ++t)
      for (int i = 0; i < 15; ++i)
        if (trees[t] >> i & 1u) tw[t] += es[static_cast<std::size_t>(i)].weight;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < trees.size(); ++a)
      for (std::size_t b = a + 1; b < trees.size(); ++b)
        if ((trees[a] & trees[b]) == 0) best = std::min(best, tw[a] + tw[b]);
    const double got = matroid::min_weight_k_spanning_trees(g, 2).total_weight;
    worst = std::max(worst, std::abs(got - best));
    mismatches += std::abs(got - best) > 1e-12;
  }
  v.detail << trees.size() << " spanning trees of K_6, 100 seeds, " << mismatches << " mismatches (max diff " << worst
           << ")";
  v.check(mismatches == 0, "greedy = exhaustive");
}

void c9(Verdict& v) {
  const auto t0 = Clock::now();
  const auto k1 = experiments::monte_carlo_mst_k(200, 1, 50, 0);
  const auto k2 = experiments::monte_carlo_mst_k(200, 2, 50, 0);
  const double mins = seconds_since(t0) / 60.0;
  const double z2 = mu::expected_Zk(200, 2);
  v.detail << "k=1: " << k1.mean << " +- " << k1.std_error << "; k=2: " << k2.mean << " +- " << k2.std_error
           << " (E Z_2 = " << z2 << "); " << mins * 60 << " s";
  v.check(std::abs(k1.mean - kZeta3) <= 3 * k1.std_error + kMcAllowance, "k=1 near zeta(3)");
  v.check(std::abs(k2.mean - kMu2) <= kMu2FiniteSize, "k=2 near mu2");
  v.check(k2.mean >= z2 - 3 * k2.std_error, "k=2 above E Z_2");
  v.check(mins <= kMcMinutes, "runtime <= 10 min");
}

void c10(Verdict& v) {
  const auto core = experiments::empirical_core_statistics(100000, 4.0, 3, 10, 0);
  const auto orient = experiments::orientation_experiment(50000, 4.0, 10, 0);
  const double lowest = orient.values.empty() ? 0.0 : *std::min_element(orient.values.begin(), orient.values.end());
  v.detail << "core vertex fraction " << core.mean << " vs " << kCoreVertexFraction << "; orientation ratio mean "
           << orient.mean << ", min " << lowest << " over " << orient.values.size() << " trials";
  v.check(std::abs(core.mean - kCoreVertexFraction) <= kCoreTol, "vertex fraction within 0.02");
  v.check(!orient.values.empty() && orient.mean >= kOrientFloor, "flow ratio >= 0.98");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Verdict&)>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<int> chosen;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > 10) {
      std::cerr << "usage: kforest_acceptance [criterion 1..10]...\n";
      return 2;
    }
    chosen.push_back(c);
  }
  if (chosen.empty())
    for (int c = 1; c <= 10; ++c) chosen.push_back(c);
  int failed = 0;
  for (int c : chosen) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      criteria[static_cast<std::size_t>(c - 1)](v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::printf("criterion %2d: %s  %s  (%.1f s)\n", c, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
