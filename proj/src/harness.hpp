#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degseq.hpp"
#include "sampler.hpp"
#include "walk.hpp"

namespace degwalk {

// Declarative experiment: a degree-sequence family, a parameter grid, a
// replicate count and a master seed. Replicate (cell, rep) always draws
// from the stream seeded by (seed, cell, rep), so results do not depend on
// scheduling.
struct ExperimentConfig {
  std::string family;
  std::map<std::string, std::vector<double>> grid;  // cartesian product
  int64_t replicates = 1;
  uint64_t seed = 0;
  SampleMode mode = SampleMode::kAuto;
  int64_t max_tries = 5000;
  int64_t burn_in = -1;
  double rho = 0.05;
  double mu = 0.05;
  std::set<std::string> measurements;  // components, reduction, diameter, mixing, star
  int64_t exact_mixing_cutoff = 400;
  int64_t starts = 8;
  int64_t exact_diameter_cutoff = 4096;
  int threads = 0;  // 0: hardware concurrency
  nlohmann::json check = nlohmann::json::object();  // parameters for named checks

  static ExperimentConfig from_json(const std::string& text);
  nlohmann::json to_json() const;
};

struct ResultRow {
  int64_t cell = 0;
  int64_t replicate = 0;
  uint64_t seed = 0;
  std::string params;  // "k=v;k=v" in key order
  int64_t n = 0, m = 0, n2 = 0, m_ne2 = 0;
  std::string mode;
  int64_t tries = 0, steps = 0;
  int64_t largest = -1, second = -1;
  int64_t cyc = -1, red = -1, yellow = -1, green = -1, g3 = -1, j_edges = -1;
  int64_t kernel_vertices = -1, kernel_edges = -1, multicycle = -1;
  int64_t star_order = -1;
  int64_t diameter = -1;
  int diameter_exact = -1;
  int64_t tau = -1;
  int tau_exact = -1;
  std::vector<int64_t> green_internal;  // in-memory only, not serialized
};

struct CellSpec {
  int64_t index = 0;
  std::map<std::string, double> params;
};

struct ResultTable {
  std::string family;
  std::vector<CellSpec> cells;
  std::vector<ResultRow> rows;  // ordered by (cell, replicate)

  static const char* csv_header();
  std::string to_csv() const;
};

std::vector<CellSpec> expand_grid(const ExperimentConfig& cfg);

ResultTable run_experiment(const ExperimentConfig& cfg);
// Streams the header and then each row as soon as it is complete.
void run_experiment_csv(const ExperimentConfig& cfg, std::ostream& out);

// Named verdicts: cycle_mass, colour_distribution, green_law, scaling,
// kernel_uniqueness, star_separation. Each returns a JSON verdict with
// numeric left and right hand sides and an overall "pass".
nlohmann::json run_check(const std::string& name, const ExperimentConfig& cfg);

}  // namespace degwalk
