#include "degseq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace degwalk {

DegreeSequence::DegreeSequence(std::vector<int64_t> degrees) {
  int64_t sum = 0;
  for (int64_t v : degrees) {
    if (v < 0) throw std::invalid_argument("negative degree");
    sum += v;
  }
  if (sum % 2 != 0) throw std::invalid_argument("odd degree sum");
  d_.reserve(degrees.size());
  for (int64_t v : degrees)
    if (v > 0) d_.push_back(v);
  std::sort(d_.begin(), d_.end());
  m_ = sum / 2;
  n2_ = std::count(d_.begin(), d_.end(), int64_t{2});
}

DegreeSequence DegreeSequence::parse(const std::string& text) {
  std::vector<int64_t> vals;
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '[') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      throw std::invalid_argument("malformed JSON degree array");
    for (const auto& e : j) {
      if (!e.is_number_integer())
        throw std::invalid_argument("non-integer degree in JSON array");
      vals.push_back(e.get<int64_t>());
    }
    return DegreeSequence(std::move(vals));
  }
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    size_t pos = 0;
    int64_t v = 0;
    try {
      v = std::stoll(token, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("non-integer token '" + token + "'");
    }
    if (pos != token.size())
      throw std::invalid_argument("non-integer token '" + token + "'");
    vals.push_back(v);
    token.clear();
  };
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return DegreeSequence(std::move(vals));
}

int64_t DegreeSequence::sum_sq() const {
  int64_t s = 0;
  for (int64_t v : d_) s += v * v;
  return s;
}

bool DegreeSequence::is_feasible() const {
  // Erdos-Gallai over the non-increasing order: for every k,
  // sum of the k largest degrees <= k(k-1) + sum_{others} min(d_i, k).
  const int64_t n = this->n();
  if (n == 0) return true;
  if (d_.back() > n - 1) return false;
  std::vector<int64_t> desc(d_.rbegin(), d_.rend());
  std::vector<int64_t> prefix(n + 1, 0);
  for (int64_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + desc[i];
  for (int64_t k = 1; k <= n; ++k) {
    // First index in desc with value <= k, found by binary search.
    auto it = std::upper_bound(desc.begin(), desc.end(), k,
                               [](int64_t a, int64_t b) { return a > b; });
    int64_t cut = it - desc.begin();
    if (cut < k) cut = k;
    int64_t tail = prefix[n] - prefix[cut] + (cut - k) * k;
    if (prefix[k] > k * (k - 1) + tail) return false;
  }
  return true;
}

CriticalStats DegreeSequence::critical_stats(double rho, double mu) const {
  CriticalStats st;
  const int64_t n = this->n();
  st.m_ne2 = m_ne2();
  st.degenerate = (st.m_ne2 == 0);
  if (n == 0) return st;
  int64_t run = 0;
  st.j_d = n;
  for (int64_t i = 0; i < n; ++i) {
    run += d_[i] * (d_[i] - 2);
    if (run > 0) {
      st.j_d = i + 1;
      break;
    }
  }
  int64_t r = 0;
  for (int64_t i = st.j_d - 1; i < n; ++i) r += d_[i];
  st.r_d = r;
  st.supercritical =
      !st.degenerate && static_cast<double>(st.r_d) >= rho * static_cast<double>(st.m_ne2);
  int64_t k = std::min<int64_t>(n, d_.back());
  int64_t top = 0;
  for (int64_t i = n - k; i < n; ++i) top += d_[i];
  st.mu_center = static_cast<double>(top) >= mu * mu * static_cast<double>(st.m_ne2) &&
                 static_cast<double>(st.m_ne2) >= mu * mu * mu * static_cast<double>(m_);
  return st;
}

std::string DegreeSequence::to_text() const {
  std::string out;
  for (size_t i = 0; i < d_.size(); ++i) {
    if (i) out.push_back('\n');
    out += std::to_string(d_[i]);
  }
  return out;
}

namespace {

int64_t require_int(const std::map<std::string, double>& params, const std::string& key,
                    const std::string& family) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("family '" + family + "' needs parameter '" + key + "'");
  double v = it->second;
  if (std::floor(v) != v || std::abs(v) > 9e15)
    throw std::invalid_argument("parameter '" + key + "' must be an integer");
  return static_cast<int64_t>(v);
}

double require_real(const std::map<std::string, double>& params, const std::string& key,
                    const std::string& family) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("family '" + family + "' needs parameter '" + key + "'");
  return it->second;
}

std::vector<int64_t> repair_parity(std::vector<int64_t> d) {
  int64_t sum = std::accumulate(d.begin(), d.end(), int64_t{0});
  if (sum % 2 != 0) {
    auto it = std::min_element(d.begin(), d.end());
    *it += 1;
  }
  return d;
}

}  // namespace

DegreeSequence gen_family(const std::string& name,
                          const std::map<std::string, double>& params) {
  std::vector<int64_t> d;
  if (name == "regular") {
    int64_t n = require_int(params, "n", name);
    int64_t deg = require_int(params, "d", name);
    if (n < 4) throw std::invalid_argument("family 'regular' needs n >= 4");
    if (deg < 1 || deg > n - 1)
      throw std::invalid_argument("family 'regular' needs 1 <= d <= n-1");
    d.assign(n, deg);
  } else if (name == "path-heavy") {
    int64_t n = require_int(params, "n", name);
    double fexp = require_real(params, "fexp", name);
    if (n < 4) throw std::invalid_argument("family 'path-heavy' needs n >= 4");
    if (!(fexp > 0.0 && fexp < 0.5))
      throw std::invalid_argument("family 'path-heavy' needs fexp in (0, 1/2)");
    int64_t h = static_cast<int64_t>(
        std::ceil(std::pow(static_cast<double>(n), fexp)));
    if (h < 3) h = 3;
    if (2 * h > n)
      throw std::invalid_argument("family 'path-heavy': 2*ceil(n^fexp) exceeds n");
    d.assign(n - 2 * h, 2);
    d.insert(d.end(), 2 * h, h);
  } else if (name == "three-regular-leaves") {
    int64_t k = require_int(params, "k", name);
    if (k < 2) throw std::invalid_argument("family 'three-regular-leaves' needs k >= 2");
    d.assign(k, 1);
    d.insert(d.end(), 2 * k, 3);
  } else if (name == "two-stars") {
    int64_t n = require_int(params, "n", name);
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("family 'two-stars' needs even n >= 4");
    d.assign(n - 2, 1);
    d.insert(d.end(), 2, n / 2);
  } else if (name == "clique-leaves") {
    int64_t n = require_int(params, "n", name);
    int64_t big = require_int(params, "D", name);
    if (n < 4) throw std::invalid_argument("family 'clique-leaves' needs n >= 4");
    if (big < 2 || big > n)
      throw std::invalid_argument("family 'clique-leaves' needs 2 <= D <= n");
    int64_t leaves = n - big;
    for (int64_t i = 0; i < big; ++i) {
      int64_t share = leaves / big + (i < leaves % big ? 1 : 0);
      d.push_back(big - 1 + share);
    }
    d.insert(d.end(), leaves, 1);
  } else if (name == "star-separation") {
    int64_t l = require_int(params, "l", name);
    double a = require_real(params, "a", name);
    double rho = require_real(params, "rho", name);
    if (l < 4) throw std::invalid_argument("family 'star-separation' needs l >= 4");
    if (a <= 0 || rho <= 0)
      throw std::invalid_argument("family 'star-separation' needs a > 0, rho > 0");
    double cube = std::cbrt(static_cast<double>(l));
    int64_t nh = static_cast<int64_t>(std::floor(cube));
    int64_t dh = static_cast<int64_t>(std::floor(cube / a));
    int64_t hub = static_cast<int64_t>(std::ceil(2.0 * rho * static_cast<double>(l)));
    if (dh < 1)
      throw std::invalid_argument("family 'star-separation': floor(l^(1/3)/a) < 1");
    if (nh + 1 >= l)
      throw std::invalid_argument("family 'star-separation': no degree-1 mass left");
    d.assign(l - 1 - nh, 1);
    d.insert(d.end(), nh, dh);
    d.push_back(hub);
  } else if (name == "paths") {
    // Disjoint paths and cycles: 2s endpoints of degree 1, the rest degree 2.
    int64_t n = require_int(params, "n", name);
    int64_t s = require_int(params, "s", name);
    if (n < 4) throw std::invalid_argument("family 'paths' needs n >= 4");
    if (s < 1 || 2 * s > n)
      throw std::invalid_argument("family 'paths' needs 1 <= s <= n/2");
    d.assign(2 * s, 1);
    d.insert(d.end(), n - 2 * s, 2);
  } else {
    throw std::invalid_argument("unknown family '" + name + "'");
  }
  return DegreeSequence(repair_parity(std::move(d)));
}

}  // namespace degwalk
