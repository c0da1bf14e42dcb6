#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace degwalk {

struct CriticalStats {
  int64_t j_d = 0;        // 1-based split index in the ascending order
  int64_t r_d = 0;        // degree mass from j_d to n
  int64_t m_ne2 = 0;      // m minus the number of degree-2 entries
  bool supercritical = false;
  bool mu_center = false;
  bool degenerate = false;  // all entries equal 2 (or empty sequence)
};

// Finite degree sequence, stored ascending with zero entries removed.
// The degree sum is required to be even on construction.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int64_t> degrees);

  // Accepts a JSON array or integers separated by whitespace and commas.
  static DegreeSequence parse(const std::string& text);

  const std::vector<int64_t>& degrees() const { return d_; }
  int64_t n() const { return static_cast<int64_t>(d_.size()); }
  int64_t m() const { return m_; }
  int64_t n2() const { return n2_; }
  int64_t m_ne2() const { return m_ - n2_; }
  int64_t max_degree() const { return d_.empty() ? 0 : d_.back(); }
  int64_t sum_sq() const;

  // Erdos-Gallai test; the even-sum condition already holds by construction.
  bool is_feasible() const;

  CriticalStats critical_stats(double rho, double mu) const;

  std::string to_text() const;

 private:
  std::vector<int64_t> d_;
  int64_t m_ = 0;
  int64_t n2_ = 0;
};

// Parameterised families used by the experiment harness. Throws
// std::invalid_argument for unknown names, missing or non-integral
// parameters, and sizes below 4. Odd degree sums are repaired by
// incrementing one minimum-degree entry.
DegreeSequence gen_family(const std::string& name,
                          const std::map<std::string, double>& params);

}  // namespace degwalk
