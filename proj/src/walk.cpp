#include "walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace degwalk {

std::vector<double> lazy_step(const Multigraph& comp, const std::vector<double>& mu) {
  if (static_cast<int64_t>(mu.size()) != comp.n())
    throw std::invalid_argument("distribution size mismatch");
  std::vector<double> out(mu.size(), 0.0);
  for (int u = 0; u < comp.n(); ++u) {
    int64_t d = comp.degree(u);
    if (d == 0) {
      out[u] += mu[u];
      continue;
    }
    out[u] += 0.5 * mu[u];
    double share = 0.5 * mu[u] / static_cast<double>(d);
    for (const int* p = comp.adj_begin(u); p != comp.adj_end(u); ++p) out[*p] += share;
  }
  return out;
}

std::vector<double> stationary(const Multigraph& comp) {
  if (comp.m() == 0) throw std::invalid_argument("stationary law needs edges");
  std::vector<double> pi(comp.n());
  double mass = static_cast<double>(comp.degree_mass());
  for (int v = 0; v < comp.n(); ++v) pi[v] = static_cast<double>(comp.degree(v)) / mass;
  return pi;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distribution size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

namespace {

void lazy_step_into(const Multigraph& comp, const std::vector<double>& mu,
                    std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int u = 0; u < comp.n(); ++u) {
    int64_t d = comp.degree(u);
    if (d == 0) {
      out[u] += mu[u];
      continue;
    }
    out[u] += 0.5 * mu[u];
    double share = 0.5 * mu[u] / static_cast<double>(d);
    for (const int* p = comp.adj_begin(u); p != comp.adj_end(u); ++p) out[*p] += share;
  }
}

int64_t mixing_time_impl(const Multigraph& comp, int start, int64_t guard,
                         const std::vector<double>& pi, std::vector<double>& mu,
                         std::vector<double>& scratch) {
  const double threshold = std::exp(-1.0);
  std::fill(mu.begin(), mu.end(), 0.0);
  mu[start] = 1.0;
  int64_t t = 0;
  while (tv_distance(mu, pi) >= threshold) {
    if (++t > guard)
      throw std::runtime_error("mixing exceeded its step guard; suspect a bug");
    lazy_step_into(comp, mu, scratch);
    mu.swap(scratch);
  }
  return t;
}

}  // namespace

int64_t mixing_time_from(const Multigraph& comp, int start, int64_t guard_steps) {
  if (start < 0 || start >= comp.n()) throw std::invalid_argument("bad start vertex");
  auto pi = stationary(comp);
  std::vector<double> mu(comp.n()), scratch(comp.n());
  return mixing_time_impl(comp, start, guard_steps, pi, mu, scratch);
}

namespace {

int64_t default_guard(const Multigraph& comp) {
  int64_t diam_lb = std::max<int64_t>(1, diameter_lower_bound(comp));
  return 64 * std::max<int64_t>(1, comp.m()) * diam_lb;
}

}  // namespace

int64_t mixing_time_exact(const Multigraph& comp) {
  auto pi = stationary(comp);
  int64_t guard = default_guard(comp);
  std::vector<double> mu(comp.n()), scratch(comp.n());
  int64_t worst = 0;
  for (int v = 0; v < comp.n(); ++v)
    worst = std::max(worst, mixing_time_impl(comp, v, guard, pi, mu, scratch));
  return worst;
}

SampledMixing mixing_time_sampled(const Multigraph& comp, int64_t starts, Rng& rng) {
  if (starts < 1) throw std::invalid_argument("need at least one start");
  SampledMixing out;
  auto pi = stationary(comp);
  int64_t guard = default_guard(comp);
  std::vector<double> mu(comp.n()), scratch(comp.n());
  if (starts >= comp.n()) {
    for (int v = 0; v < comp.n(); ++v)
      out.tau = std::max(out.tau, mixing_time_impl(comp, v, guard, pi, mu, scratch));
    out.exact = true;
    out.starts = comp.n();
    return out;
  }
  std::vector<int> ids(comp.n());
  for (int v = 0; v < comp.n(); ++v) ids[v] = v;
  for (int64_t i = 0; i < starts; ++i) {
    uint64_t j = i + rng.below(static_cast<uint64_t>(comp.n() - i));
    std::swap(ids[i], ids[j]);
    out.tau = std::max(out.tau, mixing_time_impl(comp, ids[i], guard, pi, mu, scratch));
  }
  out.exact = false;
  out.starts = starts;
  return out;
}

WalkReport analyze_walks(const Multigraph& g, const WalkOptions& opt) {
  WalkReport rep;
  rep.n = g.n();
  rep.m = g.m();
  Rng rng(opt.seed);
  int64_t index = 0;
  for (auto& piece : g.split_components()) {
    const Multigraph& comp = piece.graph;
    ComponentWalk cw;
    cw.index = index++;
    cw.n = comp.n();
    cw.m = comp.m();
    if (comp.m() == 0) {
      rep.components.push_back(std::move(cw));
      continue;
    }
    if (comp.n() <= opt.exact_diameter_cutoff) {
      cw.diameter = diameter_exact(comp);
      cw.diameter_exact = true;
    } else {
      cw.diameter = diameter_lower_bound(comp);
      cw.diameter_exact = false;
    }
    if (comp.n() <= opt.exact_mixing_cutoff) {
      cw.tau = mixing_time_exact(comp);
      cw.tau_exact = true;
      cw.starts_used = comp.n();
    } else {
      auto sm = mixing_time_sampled(comp, opt.starts, rng);
      cw.tau = sm.tau;
      cw.tau_exact = sm.exact;
      cw.starts_used = sm.starts;
    }
    cw.peres.lhs = static_cast<double>(cw.tau);
    cw.peres.rhs = 8.0 * static_cast<double>(cw.diameter) * static_cast<double>(cw.m);
    cw.peres.pass = cw.peres.lhs <= cw.peres.rhs;
    if (opt.profile) {
      int64_t mass = comp.degree_mass();
      int64_t ceil_log2 = (mass <= 1) ? 0 : std::bit_width(static_cast<uint64_t>(mass - 1));
      std::vector<int64_t> xs;
      for (int64_t j = 1; j + 1 <= ceil_log2; ++j) xs.push_back(int64_t{1} << j);
      std::vector<double> vals;
      bool exact = comp.n() <= opt.exact_cond_cutoff;
      if (exact) {
        for (int64_t x : xs) vals.push_back(cond_profile_exact(comp, x, opt.cond_budget));
      } else {
        vals = cond_profile_heuristic_all(comp, xs);
      }
      for (size_t i = 0; i < xs.size(); ++i) {
        cw.profile.push_back(CondEntry{xs[i], vals[i], exact});
        if (std::isfinite(vals[i]) && vals[i] > 0.0) {
          cw.inv_cond_sum += 1.0 / vals[i];
          cw.inv_cond_sq_sum += 1.0 / (vals[i] * vals[i]);
        }
      }
      bool empty_grid = xs.empty();
      cw.diam_cond.lhs = static_cast<double>(cw.diameter);
      cw.diam_cond.rhs = 2.0 * cw.inv_cond_sum;
      cw.diam_cond.trivial = empty_grid;
      cw.diam_cond.pass =
          empty_grid ? cw.diameter <= 1 : cw.diam_cond.lhs <= cw.diam_cond.rhs;
      cw.mix_cond.trivial = empty_grid || cw.inv_cond_sq_sum == 0.0;
      cw.mix_cond.lhs = cw.mix_cond.trivial
                            ? 0.0
                            : static_cast<double>(cw.tau) / cw.inv_cond_sq_sum;
      cw.mix_cond.rhs = opt.mix_cond_constant;
      cw.mix_cond.pass = cw.mix_cond.trivial || cw.mix_cond.lhs <= cw.mix_cond.rhs;
    }
    rep.components.push_back(std::move(cw));
  }
  return rep;
}

namespace {

nlohmann::json cond_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

}  // namespace

std::string walk_report_json(const WalkReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["components"] = nlohmann::json::array();
  for (const auto& c : rep.components) {
    nlohmann::json jc;
    jc["index"] = c.index;
    jc["n"] = c.n;
    jc["m"] = c.m;
    jc["diameter"] = c.diameter;
    jc["diameter_exact"] = c.diameter_exact;
    jc["tau"] = c.tau;
    jc["tau_exact"] = c.tau_exact;
    jc["starts"] = c.starts_used;
    jc["profile"] = nlohmann::json::array();
    for (const auto& e : c.profile)
      jc["profile"].push_back(
          {{"x", e.x}, {"cond", cond_json(e.value)}, {"exact", e.exact}});
    auto verdict = [](const BoundVerdict& v) {
      return nlohmann::json{
          {"lhs", v.lhs}, {"rhs", v.rhs}, {"pass", v.pass}, {"trivial", v.trivial}};
    };
    jc["peres"] = verdict(c.peres);
    jc["diam_cond"] = verdict(c.diam_cond);
    jc["mix_cond"] = verdict(c.mix_cond);
    j["components"].push_back(std::move(jc));
  }
  return j.dump(2);
}

std::string walk_report_csv(const WalkReport& rep) {
  std::string out =
      "component,n,m,diameter,diameter_exact,tau,tau_exact,starts,"
      "peres_lhs,peres_rhs,peres_pass,diamcond_lhs,diamcond_rhs,diamcond_pass,"
      "diamcond_trivial,mixcond_ratio,mixcond_limit,mixcond_pass,mixcond_trivial\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& c : rep.components) {
    out += std::to_string(c.index) + "," + std::to_string(c.n) + "," +
           std::to_string(c.m) + "," + std::to_string(c.diameter) + "," +
           std::to_string(c.diameter_exact ? 1 : 0) + "," + std::to_string(c.tau) +
           "," + std::to_string(c.tau_exact ? 1 : 0) + "," +
           std::to_string(c.starts_used) + "," + num(c.peres.lhs) + "," +
           num(c.peres.rhs) + "," + std::to_string(c.peres.pass ? 1 : 0) + "," +
           num(c.diam_cond.lhs) + "," + num(c.diam_cond.rhs) + "," +
           std::to_string(c.diam_cond.pass ? 1 : 0) + "," +
           std::to_string(c.diam_cond.trivial ? 1 : 0) + "," + num(c.mix_cond.lhs) +
           "," + num(c.mix_cond.rhs) + "," + std::to_string(c.mix_cond.pass ? 1 : 0) +
           "," + std::to_string(c.mix_cond.trivial ? 1 : 0) + "\n";
  }
  return out;
}

}  // namespace degwalk
