#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multigraph.hpp"
#include "rng.hpp"

namespace degwalk {

// One step of the lazy walk: stay with probability 1/2, otherwise move
// along a uniformly chosen incident half-edge. Loops and parallel edges
// carry their multiplicity.
std::vector<double> lazy_step(const Multigraph& comp, const std::vector<double>& mu);

// deg(v) / 2|E|; the lazy walk's stationary law on a connected component.
std::vector<double> stationary(const Multigraph& comp);

// Half the L1 distance.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

// Smallest t >= 0 with TV(mu_t, pi) strictly below 1/e, started from delta
// at `start`. Aborts past guard_steps (std::runtime_error).
int64_t mixing_time_from(const Multigraph& comp, int start, int64_t guard_steps);

// Worst start vertex; the component must be connected.
int64_t mixing_time_exact(const Multigraph& comp);

struct SampledMixing {
  int64_t tau = 0;
  bool exact = false;  // true when every vertex served as a start
  int64_t starts = 0;
};

// Maximum over `starts` distinct uniformly chosen start vertices; a lower
// estimate of the exact value unless all vertices are covered.
SampledMixing mixing_time_sampled(const Multigraph& comp, int64_t starts, Rng& rng);

struct BoundVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool trivial = false;  // degenerate profile grid (degree mass <= 2)
};

struct CondEntry {
  int64_t x = 0;
  double value = 0.0;
  bool exact = false;
};

struct WalkOptions {
  int64_t exact_mixing_cutoff = 400;  // vertices; larger components are sampled
  int64_t starts = 8;
  int64_t exact_cond_cutoff = 16;    // vertices; larger components use the heuristic
  int64_t exact_diameter_cutoff = 4096;
  uint64_t seed = 0;
  bool profile = true;                // conductance profile and its two bounds
  uint64_t cond_budget = 400000000ULL;
  // Regression limit for tau / sum(cond(2^j)^-2), calibrated on the small
  // fixture corpus and then frozen.
  double mix_cond_constant = 24.0;
};

struct ComponentWalk {
  int64_t index = 0;
  int64_t n = 0;
  int64_t m = 0;
  int64_t diameter = 0;
  bool diameter_exact = true;
  int64_t tau = 0;
  bool tau_exact = true;
  int64_t starts_used = 0;
  std::vector<CondEntry> profile;  // x = 2^j, j = 1 .. ceil(log2 d(V)) - 1
  double inv_cond_sum = 0.0;       // sum of 1/cond, empty windows contribute 0
  double inv_cond_sq_sum = 0.0;
  BoundVerdict peres;      // tau <= 8 * diam * |E|
  BoundVerdict diam_cond;  // diam <= 2 * inv_cond_sum
  BoundVerdict mix_cond;   // ratio tau / inv_cond_sq_sum, capped by caller
};

struct WalkReport {
  int64_t n = 0;
  int64_t m = 0;
  std::vector<ComponentWalk> components;
};

WalkReport analyze_walks(const Multigraph& g, const WalkOptions& opt);

std::string walk_report_json(const WalkReport& rep);
// One CSV row per component, fixed header.
std::string walk_report_csv(const WalkReport& rep);

}  // namespace degwalk
