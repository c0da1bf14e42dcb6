#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degseq.hpp"
#include "multigraph.hpp"
#include "rng.hpp"

namespace degwalk {

enum class SampleMode { kAuto, kReject, kMcmc };

struct SampleInfo {
  std::string mode;    // "reject" or "mcmc"
  int64_t tries = 0;   // matchings drawn before a simple one appeared
  int64_t steps = 0;   // chain proposals (mcmc)
  int64_t accepted = 0;
};

// One uniform configuration-model multigraph: vertex i owns degrees()[i]
// half-edges and a uniform perfect matching of all half-edges is drawn.
Multigraph sample_configuration(const DegreeSequence& d, Rng& rng);

// Conditions the configuration model on simplicity, which makes the output
// uniform over simple graphs with the given degrees. Throws ExhaustedError
// after max_tries failures.
Multigraph sample_simple_rejection(const DegreeSequence& d, Rng& rng,
                                   int64_t max_tries = 5000,
                                   SampleInfo* info = nullptr);

// Deterministic greedy realization, largest residual degree first.
Multigraph greedy_realization(const DegreeSequence& d);

// Replaces edges ab and xy with xb and ay. Legal only on simple graphs when
// b != x, a != y and neither xb nor ay is already present.
struct SwitchMove {
  int a, b, x, y;
};

bool is_admissible_switch(const Multigraph& g, const SwitchMove& mv);
Multigraph apply_switch(const Multigraph& g, const SwitchMove& mv);

int64_t default_burn_in(int64_t m);

// Lazy switching walk started from the greedy realization; burn_in < 0
// selects default_burn_in(m).
Multigraph sample_simple_mcmc(const DegreeSequence& d, Rng& rng,
                              int64_t burn_in = -1, SampleInfo* info = nullptr);

// Auto mode rejects when sum d_i^2 <= 4m and otherwise runs the chain.
Multigraph sample_uniform(const DegreeSequence& d, Rng& rng,
                          SampleMode mode = SampleMode::kAuto,
                          int64_t max_tries = 5000, int64_t burn_in = -1,
                          SampleInfo* info = nullptr);

// Counting bound for switching arguments: a class A whose elements each
// admit at least delta_a switchings into B, with at most delta_b arriving
// at any B element, satisfies |A| <= delta_b * |B| / delta_a.
double switching_bound(double delta_a, double delta_b, double size_b);

// Internal-vertex counts of the g green edges given spare degree-2 mass:
// a uniform composition of spare into g parts, shifted up by 2 each.
std::vector<int64_t> sample_green_lengths(int64_t g, int64_t spare, Rng& rng);

struct GreenTailCheck {
  double empirical = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  int64_t replicates = 0;
  bool pass = false;
};

// Monte Carlo estimate of P(first s internal counts exceed 2s + b) compared
// against the binomial tail P(Bin(g-1, b/spare) < s).
GreenTailCheck green_tail_bound_check(int64_t g, int64_t spare, int64_t s,
                                      int64_t b, int64_t replicates, Rng& rng);

}  // namespace degwalk
