// End-to-end acceptance checks. Each check prints one [PASS]/[FAIL] line;
// the exit status is nonzero when any check fails. Seeds are fixed, so a
// passing build reproduces the same numbers on every run.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cycles.hpp"
#include "degseq.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "multigraph.hpp"
#include "oracles.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "stats.hpp"
#include "walk.hpp"

using namespace degwalk;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& text) {
  std::printf("[%s] C%d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string key_of(const Multigraph& g) {
  return oracle::edge_key(oracle::canonical(g.edges()));
}

Multigraph cycle_graph(int t) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < t; ++i) e.emplace_back(i, (i + 1) % t);
  return Multigraph(t, std::move(e));
}

Multigraph clique_graph(int k) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) e.emplace_back(u, v);
  return Multigraph(k, std::move(e));
}

Multigraph star_graph(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Multigraph(leaves + 1, std::move(e));
}

Multigraph theta_graph() {
  // Two degree-3 vertices joined by paths of length 1, 2 and 3.
  return Multigraph(5, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 4}, {4, 1}});
}

Multigraph barbell_graph(int k) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      e.emplace_back(u, v);
      e.emplace_back(k + u, k + v);
    }
  e.emplace_back(0, k);
  return Multigraph(2 * k, std::move(e));
}

// --- C1: sampler uniformity on D = (2,2,2,2) ------------------------------

void c1_uniformity() {
  std::vector<int64_t> degs{2, 2, 2, 2};
  auto truth = oracle::all_graphs_with_degrees(degs);
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < truth.size(); ++i) index[oracle::edge_key(truth[i])] = i;
  bool ok = truth.size() == 3;
  DegreeSequence seq(degs);
  const SampleMode modes[2] = {SampleMode::kReject, SampleMode::kMcmc};
  const char* names[2] = {"reject", "mcmc"};
  std::ostringstream detail;
  detail << "3000 samples per mode over " << truth.size() << " realizations;";
  for (int mi = 0; mi < 2 && ok; ++mi) {
    std::vector<double> counts(truth.size(), 0.0);
    Rng rng(stream_seed(20260825, static_cast<uint64_t>(mi), 0));
    for (int rep = 0; rep < 3000; ++rep) {
      Multigraph g = sample_uniform(seq, rng, modes[mi]);
      auto it = index.find(key_of(g));
      if (it == index.end()) {
        ok = false;
        break;
      }
      counts[it->second] += 1.0;
    }
    double expect = 3000.0 / static_cast<double>(truth.size());
    double stat = 0.0;
    for (double c : counts) stat += (c - expect) * (c - expect) / expect;
    double p = chisq_pvalue(stat, static_cast<double>(truth.size() - 1));
    ok = ok && p > 0.001;
    detail << " " << names[mi] << " p=" << p;
  }
  report(1, ok, "uniform over enumerated realizations (" + detail.str() + ")");
}

// --- C2: cycle-union counts ------------------------------------------------

void c2_cycle_counts() {
  bool ok = true;
  for (int t = 0; t <= 8; ++t) {
    CycleCount c = cycle_union_count(t);
    ok = ok && c.has_exact &&
         c.exact_decimal == std::to_string(oracle::two_regular_count(t));
  }
  double ratio = cycle_ratio(200);
  double target = 200.0 * (1.0 + 1.0 / 400.0);
  double rel = std::abs(ratio / target - 1.0);
  ok = ok && rel <= 1e-4;
  std::ostringstream detail;
  detail << "counts match enumeration for t <= 8; C_201/C_200 off (t + 1/2) by "
         << rel;
  report(2, ok, detail.str());
}

// --- C3: reduction and kernel round trips ----------------------------------

void c3_round_trips() {
  const int total = 1000;
  int bad = 0;
  int64_t per_family[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < total; ++i) {
    int fam = i % 7;
    int tick = i / 7;
    std::map<std::string, double> p;
    std::string name;
    switch (fam) {
      case 0:
        name = "regular";
        p = {{"n", 8.0 + 2.0 * (tick % 7)}, {"d", 3.0}};
        break;
      case 1:
        name = "path-heavy";
        p = {{"n", 64.0 + 48.0 * (tick % 4)}, {"fexp", 0.3}};
        break;
      case 2:
        name = "three-regular-leaves";
        p = {{"k", 4.0 + (tick % 12)}};
        break;
      case 3:
        name = "two-stars";
        p = {{"n", 8.0 + 2.0 * (tick % 12)}};
        break;
      case 4:
        name = "clique-leaves";
        p = {{"n", 6.0 + (tick % 6)}, {"D", 4.0}};
        break;
      case 5:
        name = "star-separation";
        p = {{"l", 512.0 + 256.0 * (tick % 4)}, {"a", 3.0}, {"rho", 0.05}};
        break;
      default:
        name = "paths";
        p = {{"n", 32.0 + 12.0 * (tick % 8)}, {"s", 2.0 + (tick % 4)}};
        break;
    }
    DegreeSequence seq = gen_family(name, p);
    Rng rng(stream_seed(33, static_cast<uint64_t>(i), 0));
    Multigraph g = sample_uniform(seq, rng);
    ++per_family[fam];
    std::string orig = key_of(g);
    ColouredReduction r = coloured_reduction(g);
    bool row_ok =
        static_cast<int64_t>(r.edges.size()) == g.m() - seq.n2() &&
        key_of(reconstruct(r)) == orig &&
        key_of(reassemble(core_and_kernel(g))) == orig;
    if (!row_ok) ++bad;
  }
  std::ostringstream detail;
  detail << total << " sampled graphs across 7 families; " << bad
         << " round-trip mismatches";
  report(3, bad == 0, detail.str());
}

// --- C4: diameter and mixing bounds on an exhaustive small corpus -----------

struct BoundTally {
  int graphs = 0;
  int peres_fail = 0;
  int diam_cond_fail = 0;
  int mix_fail = 0;
  double max_mix_ratio = 0.0;
};

void tally_bounds(const Multigraph& g, const WalkOptions& opt, BoundTally& t) {
  WalkReport rep = analyze_walks(g, opt);
  for (const auto& cw : rep.components) {
    ++t.graphs;
    if (!cw.peres.pass) ++t.peres_fail;
    if (!cw.diam_cond.pass) ++t.diam_cond_fail;
    if (!cw.mix_cond.trivial) {
      t.max_mix_ratio = std::max(t.max_mix_ratio, cw.mix_cond.lhs);
      if (!cw.mix_cond.pass) ++t.mix_fail;
    }
  }
}

void c4_bound_corpus() {
  WalkOptions opt;  // exact mixing, diameter and (n <= 16) conductance
  BoundTally tally;
  Rng rng(4242);
  int sampled = 0;
  while (sampled < 520) {
    int n = 3 + static_cast<int>(rng.below(12));
    std::vector<int64_t> degs(static_cast<size_t>(n));
    int64_t sum = 0;
    for (auto& d : degs) {
      d = 1 + static_cast<int64_t>(rng.below(
              static_cast<uint64_t>(std::min<int64_t>(4, n - 1))));
      sum += d;
    }
    if (sum % 2 != 0) {
      size_t at = 0;
      while (degs[at] >= n - 1) ++at;
      ++degs[at];
    }
    DegreeSequence seq{degs};
    if (!seq.is_feasible()) continue;
    Multigraph g;
    try {
      Rng draw(stream_seed(44, static_cast<uint64_t>(sampled), rng.next()));
      g = sample_uniform(seq, draw, SampleMode::kAuto, 400);
    } catch (const ExhaustedError&) {
      continue;
    }
    if (g.components().size() != 1) continue;
    ++sampled;
    tally_bounds(g, opt, tally);
  }
  int fixtures = 0;
  auto fixture = [&](const Multigraph& g) {
    tally_bounds(g, opt, tally);
    ++fixtures;
  };
  for (int t = 3; t <= 16; ++t) fixture(cycle_graph(t));
  for (int k = 3; k <= 8; ++k) fixture(clique_graph(k));
  for (int k = 3; k <= 15; ++k) fixture(star_graph(k));
  fixture(theta_graph());
  fixture(barbell_graph(20));  // n = 40: conductance falls back to the sweep
  bool ok = tally.peres_fail == 0 && tally.diam_cond_fail == 0 &&
            tally.mix_fail == 0;
  std::ostringstream detail;
  detail << sampled << " random connected graphs (n <= 14) + " << fixtures
         << " fixtures; peres/diam-cond failures " << tally.peres_fail << "/"
         << tally.diam_cond_fail << "; max tau/sum cond^-2 ratio "
         << tally.max_mix_ratio;
  report(4, ok, detail.str());
}

// --- C5: cycle mass bound over the path-heavy family ------------------------

void c5_cycle_mass() {
  ExperimentConfig cfg;
  cfg.family = "path-heavy";
  cfg.grid = {{"n", {20000}}, {"fexp", {0.45}}};
  cfg.replicates = 200;
  cfg.seed = 505;
  auto verdict = run_check("cycle_mass", cfg);
  const auto& cell = verdict["cells"][0];
  std::ostringstream detail;
  detail << "path-heavy n=20000, 200 reps: fraction " << cell["fraction"]
         << " >= target " << cell["target"] << " - slack " << cell["slack"]
         << " (bound " << cell["bound"] << ")";
  report(5, verdict["pass"].get<bool>(), detail.str());
}

// --- C6: colour distribution in the thin-kernel regime ----------------------

void c6_colour_distribution() {
  ExperimentConfig cfg;
  cfg.family = "path-heavy";
  cfg.grid = {{"n", {131072}}, {"fexp", {0.3}}};
  cfg.replicates = 200;
  cfg.seed = 606;
  cfg.mode = SampleMode::kReject;
  auto verdict = run_check("colour_distribution", cfg);
  const auto& cell = verdict["cells"][0];
  double frac = cell["fraction"].get<double>();
  bool ok = verdict["pass"].get<bool>() && frac >= 0.90;
  std::ostringstream detail;
  detail << "delta=" << cell["delta"] << ": red/yellow/green bounds hold in "
         << frac * 100.0 << "% of 200 reps (need >= 90%)";
  report(6, ok, detail.str());
}

// --- C7: green length law and prefix tail bound -----------------------------

void c7_green_law() {
  ExperimentConfig cfg;
  cfg.family = "paths";
  cfg.grid = {{"n", {600}}, {"s", {5}}};
  cfg.replicates = 300;
  cfg.seed = 707;
  cfg.check = {{"min_group", 25},
               {"p_min", 0.001},
               {"tail", {{"g", 50},
                         {"spare", 1000},
                         {"s", 5},
                         {"b", 500},
                         {"replicates", 100000}}}};
  auto verdict = run_check("green_law", cfg);
  double min_p = 1.0;
  for (const auto& grp : verdict["groups"])
    min_p = std::min(min_p, grp["p"].get<double>());
  std::ostringstream detail;
  detail << verdict["groups_used"] << " conditioned groups, min chi-square p="
         << min_p << "; tail empirical " << verdict["tail"]["empirical"]
         << " <= bound " << verdict["tail"]["bound"] << " + slack";
  report(7, verdict["pass"].get<bool>(), detail.str());
}

// --- C8: second-largest component exponent, star-separation family ----------

void c8_second_largest_exponent() {
  ExperimentConfig cfg;
  cfg.family = "star-separation";
  cfg.grid = {{"l", {10000, 21544, 46416, 100000}}, {"a", {3}}, {"rho", {0.05}}};
  cfg.replicates = 40;
  cfg.seed = 808;
  cfg.check = {{"column", "second"}, {"form", "power"},     {"x", "l"},
               {"slope_min", 0.18},  {"slope_max", 0.48},   {"r2_min", 0.8}};
  auto verdict = run_check("scaling", cfg);
  std::ostringstream detail;
  detail << "median second-largest component ~ l^" << verdict["slope"]
         << " over one decade (want 0.33 +- 0.15), r2=" << verdict["r2"];
  report(8, verdict["pass"].get<bool>(), detail.str());
}

// --- C9: mixing-time growth laws --------------------------------------------

void c9_mixing_scaling() {
  ExperimentConfig doubling;
  doubling.family = "two-stars";
  doubling.grid = {{"n", {256, 512, 1024, 2048}}};
  doubling.replicates = 3;
  doubling.seed = 909;
  doubling.exact_mixing_cutoff = 1;  // sampled estimator at every size
  doubling.check = {{"column", "tau"},
                    {"form", "ratio"},
                    {"x", "n"},
                    {"ratio_min", 1.6},
                    {"ratio_max", 2.4}};
  auto linear = run_check("scaling", doubling);

  // Wide size range and a uniform sampled estimator (many starts, medians over
  // 25 replicates) keep the regression residuals far below the fitted trend.
  ExperimentConfig log2cfg;
  log2cfg.family = "three-regular-leaves";
  log2cfg.grid = {{"k", {64, 256, 1024, 4096, 16384}}};
  log2cfg.replicates = 25;
  log2cfg.seed = 910;
  log2cfg.mode = SampleMode::kReject;
  log2cfg.exact_mixing_cutoff = 1;
  log2cfg.starts = 64;
  log2cfg.check = {{"column", "tau"}, {"form", "log2"}, {"x", "n"},
                   {"r2_min", 0.9}};
  auto squared = run_check("scaling", log2cfg);

  bool ok = linear["pass"].get<bool>() && squared["pass"].get<bool>();
  std::ostringstream detail;
  detail << "two-stars tau doubling ratios " << linear["ratios"].dump()
         << " in [1.6,2.4]; three-regular-leaves tau vs log^2 n r2="
         << squared["r2"];
  report(9, ok, detail.str());
}

// --- C10: giant component presence and absence ------------------------------

double fraction_with(const ResultTable& tbl, bool (*pred)(int64_t, int64_t),
                     int64_t threshold) {
  int64_t hit = 0;
  for (const auto& row : tbl.rows)
    if (pred(row.largest, threshold)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(tbl.rows.size());
}

void c10_giant_component() {
  ExperimentConfig super;
  super.family = "regular";
  super.grid = {{"n", {4096}}, {"d", {3}}};
  super.replicates = 100;
  super.seed = 1010;
  super.mode = SampleMode::kReject;
  super.measurements = {"components"};
  auto giant = run_experiment(super);
  double frac_giant = fraction_with(
      giant, [](int64_t largest, int64_t thr) { return largest >= thr; },
      static_cast<int64_t>(std::ceil(0.9 * 4096)));

  ExperimentConfig sub;
  sub.family = "paths";
  sub.grid = {{"n", {65536}}, {"s", {512}}};
  sub.replicates = 100;
  sub.seed = 1011;
  sub.measurements = {"components"};
  auto small = run_experiment(sub);
  double frac_small = fraction_with(
      small, [](int64_t largest, int64_t thr) { return largest <= thr; },
      static_cast<int64_t>(std::pow(65536.0, 0.7)));

  bool ok = frac_giant >= 0.95 && frac_small >= 0.95;
  std::ostringstream detail;
  detail << "3-regular n=4096: largest >= 0.9n in " << frac_giant * 100.0
         << "% of reps; paths n=65536 s=512: largest <= n^0.7 in "
         << frac_small * 100.0 << "%";
  report(10, ok, detail.str());
}

// --- C11: kernel lives in one component -------------------------------------

void c11_kernel_uniqueness() {
  ExperimentConfig cubic;
  cubic.family = "regular";
  cubic.grid = {{"n", {2048}}, {"d", {3}}};
  cubic.replicates = 100;
  cubic.seed = 1111;
  cubic.mode = SampleMode::kReject;
  auto a = run_check("kernel_uniqueness", cubic);

  ExperimentConfig heavy;
  heavy.family = "path-heavy";
  heavy.grid = {{"n", {4096}}, {"fexp", {0.45}}};
  heavy.replicates = 100;
  heavy.seed = 1112;
  auto b = run_check("kernel_uniqueness", heavy);

  bool ok = a["pass"].get<bool>() && b["pass"].get<bool>();
  std::ostringstream detail;
  detail << "multicycle components <= 1 in "
         << a["cells"][0]["fraction_at_most_one"].get<double>() * 100.0
         << "% (3-regular) and "
         << b["cells"][0]["fraction_at_most_one"].get<double>() * 100.0
         << "% (path-heavy) of 100 reps each";
  report(11, ok, detail.str());
}

// --- C12: byte-identical reruns ---------------------------------------------

void c12_determinism() {
  ExperimentConfig cfg;
  cfg.family = "path-heavy";
  cfg.grid = {{"n", {512, 1024}}, {"fexp", {0.3}}};
  cfg.replicates = 3;
  cfg.seed = 1212;
  cfg.measurements = {"components", "reduction", "diameter", "mixing"};
  cfg.threads = 1;
  std::string first = run_experiment(cfg).to_csv();
  std::string second = run_experiment(cfg).to_csv();
  cfg.threads = 3;
  std::string pooled = run_experiment(cfg).to_csv();
  std::ostringstream stream;
  run_experiment_csv(cfg, stream);
  bool ok = !first.empty() && first == second && first == pooled &&
            first == stream.str();
  std::ostringstream detail;
  detail << "rerun, thread-pool and streaming CSVs all byte-identical ("
         << first.size() << " bytes)";
  report(12, ok, detail.str());
}

}  // namespace

int main() {
  c1_uniformity();
  c2_cycle_counts();
  c3_round_trips();
  c4_bound_corpus();
  c5_cycle_mass();
  c6_colour_distribution();
  c7_green_law();
  c8_second_largest_exponent();
  c9_mixing_scaling();
  c10_giant_component();
  c11_kernel_uniqueness();
  c12_determinism();
  if (failures > 0) {
    std::printf("%d of 12 acceptance checks failed\n", failures);
    return 1;
  }
  std::printf("all 12 acceptance checks passed\n");
  return 0;
}
