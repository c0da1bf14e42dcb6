#include "cycles.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace degwalk {

namespace {

constexpr int64_t kExactMax = 500;
constexpr int64_t kLogMax = 20000;

std::mutex table_mutex;
std::vector<mpz_class> exact_table;  // indices 0..kExactMax once grown
std::vector<double> log_table;

double log_of_mpz(const mpz_class& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

void grow_exact(int64_t t) {
  if (static_cast<int64_t>(exact_table.size()) > t) return;
  if (exact_table.empty()) {
    exact_table = {mpz_class(1), mpz_class(0), mpz_class(0)};
  }
  for (int64_t s = static_cast<int64_t>(exact_table.size()); s <= t; ++s) {
    mpz_class total = 0;
    mpz_class term;
    for (int64_t k = 3; k <= s; ++k) {
      mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(s - 1),
                   static_cast<unsigned long>(k - 1));
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
      term *= fact;
      term /= 2;  // (k-1)!/2 is integral for k >= 3
      term *= exact_table[static_cast<size_t>(s - k)];
      total += term;
    }
    exact_table.push_back(total);
  }
}

void grow_log(int64_t t) {
  if (static_cast<int64_t>(log_table.size()) > t) return;
  int64_t seed_to = std::min(t, kExactMax);
  grow_exact(seed_to);
  if (static_cast<int64_t>(log_table.size()) <= seed_to) {
    log_table.resize(static_cast<size_t>(seed_to) + 1);
    for (int64_t s = 0; s <= seed_to; ++s)
      log_table[static_cast<size_t>(s)] = log_of_mpz(exact_table[static_cast<size_t>(s)]);
  }
  const double ln2 = std::log(2.0);
  std::vector<double> terms;
  for (int64_t s = static_cast<int64_t>(log_table.size()); s <= t; ++s) {
    // log term(k) = log binom(s-1, k-1) + log (k-1)! - log 2 + log C_{s-k};
    // the (k-1)! cancels one factor of the binomial denominator.
    terms.clear();
    double lg_s = std::lgamma(static_cast<double>(s));
    double hi = -std::numeric_limits<double>::infinity();
    for (int64_t k = 3; k <= s; ++k) {
      double prev = log_table[static_cast<size_t>(s - k)];
      if (prev == -std::numeric_limits<double>::infinity()) continue;
      double term = lg_s - std::lgamma(static_cast<double>(s - k + 1)) - ln2 + prev;
      terms.push_back(term);
      hi = std::max(hi, term);
    }
    double sum = 0.0;
    for (double v : terms) sum += std::exp(v - hi);
    log_table.push_back(terms.empty() ? -std::numeric_limits<double>::infinity()
                                      : hi + std::log(sum));
  }
}

}  // namespace

CycleCount cycle_union_count(int64_t t) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  if (t > kLogMax)
    throw std::length_error("cycle count table limited to t <= " +
                            std::to_string(kLogMax));
  std::lock_guard<std::mutex> lock(table_mutex);
  CycleCount out;
  grow_log(t);
  out.log_value = log_table[static_cast<size_t>(t)];
  if (t <= kExactMax) {
    grow_exact(t);
    out.has_exact = true;
    out.exact_decimal = exact_table[static_cast<size_t>(t)].get_str();
  }
  return out;
}

double cycle_ratio(int64_t t) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  CycleCount at = cycle_union_count(t);
  CycleCount next = cycle_union_count(t + 1);
  if (at.log_value == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument("cycle_ratio undefined where the count is zero");
  return std::exp(next.log_value - at.log_value);
}

}  // namespace degwalk
