#pragma once

#include <cstdint>
#include <string>

namespace degwalk {

// Number of graphs on t labelled vertices that are disjoint unions of
// cycles of length >= 3. C_0 = 1, C_1 = C_2 = 0,
// C_t = sum_k binom(t-1, k-1) * (k-1)!/2 * C_{t-k}.
struct CycleCount {
  bool has_exact = false;
  std::string exact_decimal;  // set when has_exact
  double log_value = 0.0;     // natural log; -infinity for a zero count
};

// Exact big-integer value up to an internal cutoff (500), log-space value
// always. Throws std::length_error for t beyond the table limit.
CycleCount cycle_union_count(int64_t t);

// C_{t+1} / C_t, defined when C_t > 0.
double cycle_ratio(int64_t t);

}  // namespace degwalk
