#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gsl/gsl_cdf.h>

namespace degwalk {

double chisq_pvalue(double stat, double dof) {
  if (dof <= 0) throw std::invalid_argument("chi-square needs dof > 0");
  if (stat <= 0) return 1.0;
  return gsl_cdf_chisq_Q(stat, dof);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

LinFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit needs >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double vx = sxx - sx * sx / n;
  double vy = syy - sy * sy / n;
  double cxy = sxy - sx * sy / n;
  if (vx <= 0) throw std::invalid_argument("fit needs varying x");
  LinFit f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = (vy <= 0) ? 1.0 : (cxy * cxy) / (vx * vy);
  return f;
}

TwoSampleChiSq chisq_two_sample(const std::map<int64_t, int64_t>& a,
                                const std::map<int64_t, int64_t>& b) {
  int64_t na = 0, nb = 0;
  std::map<int64_t, std::pair<int64_t, int64_t>> merged;
  for (auto [k, v] : a) {
    merged[k].first += v;
    na += v;
  }
  for (auto [k, v] : b) {
    merged[k].second += v;
    nb += v;
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("empty sample");
  // Greedy upward merge until each pooled bin expects at least 5.
  std::vector<std::pair<int64_t, int64_t>> bins;
  std::pair<int64_t, int64_t> acc{0, 0};
  for (auto& [k, v] : merged) {
    (void)k;
    acc.first += v.first;
    acc.second += v.second;
    if (acc.first + acc.second >= 10) {
      bins.push_back(acc);
      acc = {0, 0};
    }
  }
  if (acc.first + acc.second > 0) {
    if (!bins.empty()) {
      bins.back().first += acc.first;
      bins.back().second += acc.second;
    } else {
      bins.push_back(acc);
    }
  }
  TwoSampleChiSq out;
  out.bins = static_cast<int64_t>(bins.size());
  if (bins.size() < 2) {
    out.dof = 0;
    out.p = 1.0;  // a single shared bin cannot separate the samples
    return out;
  }
  double ka = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
  double kb = std::sqrt(static_cast<double>(na) / static_cast<double>(nb));
  for (auto& [oa, ob] : bins) {
    double d = ka * static_cast<double>(oa) - kb * static_cast<double>(ob);
    out.stat += d * d / static_cast<double>(oa + ob);
  }
  out.dof = static_cast<int64_t>(bins.size()) - 1;
  out.p = chisq_pvalue(out.stat, static_cast<double>(out.dof));
  return out;
}

}  // namespace degwalk
