#include "sampler.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include <gsl/gsl_cdf.h>

#include "errors.hpp"

namespace degwalk {

namespace {

uint64_t edge_key(int64_t n, int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<uint64_t>(u) * static_cast<uint64_t>(n) + static_cast<uint64_t>(v);
}

}  // namespace

Multigraph sample_configuration(const DegreeSequence& d, Rng& rng) {
  const auto& deg = d.degrees();
  std::vector<int> owner;
  owner.reserve(static_cast<size_t>(2 * d.m()));
  for (size_t i = 0; i < deg.size(); ++i)
    owner.insert(owner.end(), static_cast<size_t>(deg[i]), static_cast<int>(i));
  for (size_t i = owner.size(); i > 1; --i)
    std::swap(owner[i - 1], owner[rng.below(i)]);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(owner.size() / 2);
  for (size_t i = 0; i + 1 < owner.size(); i += 2)
    edges.emplace_back(owner[i], owner[i + 1]);
  return Multigraph(d.n(), std::move(edges));
}

Multigraph sample_simple_rejection(const DegreeSequence& d, Rng& rng,
                                   int64_t max_tries, SampleInfo* info) {
  if (!d.is_feasible())
    throw InfeasibleError("degree sequence admits no simple graph");
  if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
  for (int64_t t = 1; t <= max_tries; ++t) {
    Multigraph g = sample_configuration(d, rng);
    if (g.is_simple()) {
      if (info) {
        info->mode = "reject";
        info->tries = t;
      }
      return g;
    }
  }
  throw ExhaustedError("no simple configuration in " + std::to_string(max_tries) +
                       " tries");
}

Multigraph greedy_realization(const DegreeSequence& d) {
  if (!d.is_feasible())
    throw InfeasibleError("degree sequence admits no simple graph");
  const auto& deg = d.degrees();
  // Max-heap on (residual degree, low label wins ties).
  auto cmp = [](const std::pair<int64_t, int>& a, const std::pair<int64_t, int>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<std::pair<int64_t, int>, std::vector<std::pair<int64_t, int>>,
                      decltype(cmp)>
      heap(cmp);
  for (size_t i = 0; i < deg.size(); ++i)
    heap.emplace(deg[i], static_cast<int>(i));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(d.m()));
  std::vector<std::pair<int64_t, int>> spent;
  while (!heap.empty()) {
    auto [need, u] = heap.top();
    heap.pop();
    if (need == 0) continue;
    spent.clear();
    for (int64_t j = 0; j < need; ++j) {
      while (!heap.empty() && heap.top().first == 0) heap.pop();
      if (heap.empty())
        throw InfeasibleError("greedy realization ran out of residual degree");
      auto [rd, v] = heap.top();
      heap.pop();
      edges.emplace_back(u, v);
      spent.emplace_back(rd - 1, v);
    }
    for (const auto& p : spent)
      if (p.first > 0) heap.push(p);
  }
  return Multigraph(d.n(), std::move(edges));
}

bool is_admissible_switch(const Multigraph& g, const SwitchMove& mv) {
  if (!g.is_simple()) return false;
  const int64_t n = g.n();
  auto in_range = [&](int v) { return v >= 0 && v < n; };
  if (!in_range(mv.a) || !in_range(mv.b) || !in_range(mv.x) || !in_range(mv.y))
    return false;
  std::unordered_set<uint64_t> keys;
  keys.reserve(g.edges().size() * 2);
  for (const auto& [u, v] : g.edges()) keys.insert(edge_key(n, u, v));
  if (!keys.count(edge_key(n, mv.a, mv.b)) || !keys.count(edge_key(n, mv.x, mv.y)))
    return false;
  // The two edges must be distinct even when their vertex pairs intersect.
  if (edge_key(n, mv.a, mv.b) == edge_key(n, mv.x, mv.y)) return false;
  if (mv.b == mv.x || mv.a == mv.y) return false;
  if (keys.count(edge_key(n, mv.x, mv.b)) || keys.count(edge_key(n, mv.a, mv.y)))
    return false;
  return true;
}

Multigraph apply_switch(const Multigraph& g, const SwitchMove& mv) {
  if (!is_admissible_switch(g, mv))
    throw std::invalid_argument("switch move is not admissible");
  const int64_t n = g.n();
  auto edges = g.edges();
  bool done_ab = false, done_xy = false;
  for (auto& e : edges) {
    uint64_t k = edge_key(n, e.first, e.second);
    if (!done_ab && k == edge_key(n, mv.a, mv.b)) {
      e = {mv.x, mv.b};
      done_ab = true;
    } else if (!done_xy && k == edge_key(n, mv.x, mv.y)) {
      e = {mv.a, mv.y};
      done_xy = true;
    }
  }
  return Multigraph(n, std::move(edges));
}

int64_t default_burn_in(int64_t m) {
  return static_cast<int64_t>(
      std::ceil(10.0 * static_cast<double>(m) * std::log(static_cast<double>(m) + 1.0)));
}

Multigraph sample_simple_mcmc(const DegreeSequence& d, Rng& rng, int64_t burn_in,
                              SampleInfo* info) {
  Multigraph start = greedy_realization(d);
  const int64_t n = start.n();
  const int64_t m = start.m();
  if (burn_in < 0) burn_in = default_burn_in(m);
  auto edges = start.edges();
  std::unordered_set<uint64_t> keys;
  keys.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) keys.insert(edge_key(n, u, v));
  int64_t accepted = 0;
  if (m >= 2) {
    for (int64_t step = 0; step < burn_in; ++step) {
      uint64_t i = rng.below(static_cast<uint64_t>(m));
      uint64_t j = rng.below(static_cast<uint64_t>(m));
      if (i == j) continue;
      auto [a, b] = edges[i];
      auto [x, y] = edges[j];
      if (rng.coin()) std::swap(a, b);
      if (rng.coin()) std::swap(x, y);
      if (b == x || a == y) continue;
      uint64_t kxb = edge_key(n, x, b), kay = edge_key(n, a, y);
      if (keys.count(kxb) || keys.count(kay)) continue;
      keys.erase(edge_key(n, a, b));
      keys.erase(edge_key(n, x, y));
      keys.insert(kxb);
      keys.insert(kay);
      edges[i] = {x, b};
      edges[j] = {a, y};
      ++accepted;
    }
  }
  if (info) {
    info->mode = "mcmc";
    info->steps = burn_in;
    info->accepted = accepted;
  }
  return Multigraph(n, std::move(edges));
}

Multigraph sample_uniform(const DegreeSequence& d, Rng& rng, SampleMode mode,
                          int64_t max_tries, int64_t burn_in, SampleInfo* info) {
  if (mode == SampleMode::kAuto)
    mode = (d.sum_sq() <= 4 * d.m()) ? SampleMode::kReject : SampleMode::kMcmc;
  if (mode == SampleMode::kReject)
    return sample_simple_rejection(d, rng, max_tries, info);
  if (!d.is_feasible())
    throw InfeasibleError("degree sequence admits no simple graph");
  return sample_simple_mcmc(d, rng, burn_in, info);
}

double switching_bound(double delta_a, double delta_b, double size_b) {
  if (!(delta_a > 0)) throw std::invalid_argument("delta_a must be positive");
  if (delta_b < 0 || size_b < 0)
    throw std::invalid_argument("delta_b and size_b must be nonnegative");
  return delta_b * size_b / delta_a;
}

std::vector<int64_t> sample_green_lengths(int64_t g, int64_t spare, Rng& rng) {
  if (g < 1) throw std::invalid_argument("need at least one green edge");
  if (spare < 0) throw std::invalid_argument("spare mass must be nonnegative");
  // Uniform composition of spare into g parts via g-1 bars in spare+g-1 slots.
  std::vector<int64_t> cuts;
  cuts.reserve(static_cast<size_t>(g - 1));
  if (g > 1) {
    int64_t slots = spare + g - 1;
    std::vector<int64_t> pool(static_cast<size_t>(slots));
    for (int64_t i = 0; i < slots; ++i) pool[static_cast<size_t>(i)] = i + 1;
    for (int64_t i = 0; i < g - 1; ++i) {
      uint64_t j = i + rng.below(static_cast<uint64_t>(slots - i));
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
      cuts.push_back(pool[static_cast<size_t>(i)]);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  std::vector<int64_t> lengths(static_cast<size_t>(g));
  int64_t prev = 0;
  for (int64_t i = 0; i < g - 1; ++i) {
    lengths[static_cast<size_t>(i)] = cuts[static_cast<size_t>(i)] - prev - 1 + 2;
    prev = cuts[static_cast<size_t>(i)];
  }
  lengths[static_cast<size_t>(g - 1)] = (spare + g) - prev - 1 + 2;
  return lengths;
}

GreenTailCheck green_tail_bound_check(int64_t g, int64_t spare, int64_t s, int64_t b,
                                      int64_t replicates, Rng& rng) {
  if (s < 0 || s > g) throw std::invalid_argument("prefix count s must be in [0, g]");
  if (b < 0) throw std::invalid_argument("excess b must be nonnegative");
  if (replicates < 1) throw std::invalid_argument("need at least one replicate");
  GreenTailCheck out;
  out.replicates = replicates;
  int64_t exceed = 0;
  for (int64_t r = 0; r < replicates; ++r) {
    auto lengths = sample_green_lengths(g, spare, rng);
    int64_t sum = 0;
    for (int64_t i = 0; i < s; ++i) sum += lengths[static_cast<size_t>(i)];
    if (sum > 2 * s + b) ++exceed;
  }
  out.empirical = static_cast<double>(exceed) / static_cast<double>(replicates);
  if (s == 0) {
    out.bound = 0.0;
  } else if (spare == 0) {
    out.bound = 1.0;  // no spare mass; the binomial comparison degenerates
  } else {
    double p = std::min(1.0, static_cast<double>(b) / static_cast<double>(spare));
    out.bound = gsl_cdf_binomial_P(static_cast<unsigned>(s - 1), p,
                                   static_cast<unsigned>(g - 1));
  }
  out.slack =
      3.0 * std::sqrt(std::max(out.empirical * (1.0 - out.empirical), 1e-12) /
                      static_cast<double>(replicates));
  out.pass = out.empirical <= out.bound + out.slack;
  return out;
}

}  // namespace degwalk
