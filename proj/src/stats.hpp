#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace degwalk {

// Survival function of the chi-square law with dof degrees of freedom.
double chisq_pvalue(double stat, double dof);

double median(std::vector<double> values);

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

struct TwoSampleChiSq {
  double stat = 0.0;
  int64_t dof = 0;
  double p = 1.0;
  int64_t bins = 0;
};

// Two-sample chi-square over integer-valued observations; bins with a
// pooled expectation under 5 are merged upward. Needs at least 2 bins.
TwoSampleChiSq chisq_two_sample(const std::map<int64_t, int64_t>& a,
                                const std::map<int64_t, int64_t>& b);

}  // namespace degwalk
