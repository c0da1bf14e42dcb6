#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "errors.hpp"
#include "multigraph.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace degwalk {

namespace {

const std::set<std::string> kMeasurements = {"components", "reduction", "diameter",
                                             "mixing", "star"};

SampleMode mode_from_string(const std::string& s) {
  if (s == "auto") return SampleMode::kAuto;
  if (s == "reject") return SampleMode::kReject;
  if (s == "mcmc") return SampleMode::kMcmc;
  throw std::invalid_argument("mode must be auto, reject or mcmc");
}

std::string mode_to_string(SampleMode m) {
  switch (m) {
    case SampleMode::kAuto:
      return "auto";
    case SampleMode::kReject:
      return "reject";
    default:
      return "mcmc";
  }
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw std::invalid_argument("experiment config must be a JSON object");
  static const std::set<std::string> known = {
      "family", "grid",    "replicates", "seed",     "mode",
      "max_tries", "burn_in", "rho",     "mu",       "measurements",
      "cutoffs", "threads", "check"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("unknown config key '" + it.key() + "'");
  ExperimentConfig cfg;
  if (!j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument("config needs a string 'family'");
  cfg.family = j["family"].get<std::string>();
  if (j.contains("grid")) {
    if (!j["grid"].is_object()) throw std::invalid_argument("'grid' must be an object");
    for (auto it = j["grid"].begin(); it != j["grid"].end(); ++it) {
      std::vector<double> vals;
      if (it.value().is_array()) {
        for (const auto& v : it.value()) {
          if (!v.is_number()) throw std::invalid_argument("grid values must be numbers");
          vals.push_back(v.get<double>());
        }
      } else if (it.value().is_number()) {
        vals.push_back(it.value().get<double>());
      } else {
        throw std::invalid_argument("grid values must be numbers");
      }
      if (vals.empty())
        throw std::invalid_argument("grid key '" + it.key() + "' has no values");
      cfg.grid[it.key()] = std::move(vals);
    }
  }
  cfg.replicates = j.value("replicates", int64_t{1});
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.mode = mode_from_string(j.value("mode", std::string("auto")));
  cfg.max_tries = j.value("max_tries", int64_t{5000});
  cfg.burn_in = j.value("burn_in", int64_t{-1});
  cfg.rho = j.value("rho", 0.05);
  cfg.mu = j.value("mu", 0.05);
  if (j.contains("measurements")) {
    for (const auto& v : j["measurements"]) {
      std::string name = v.get<std::string>();
      if (!kMeasurements.count(name))
        throw std::invalid_argument("unknown measurement '" + name + "'");
      cfg.measurements.insert(name);
    }
  }
  if (j.contains("cutoffs")) {
    const auto& c = j["cutoffs"];
    cfg.exact_mixing_cutoff = c.value("exact_mixing", cfg.exact_mixing_cutoff);
    cfg.starts = c.value("starts", cfg.starts);
    cfg.exact_diameter_cutoff = c.value("exact_diameter", cfg.exact_diameter_cutoff);
  }
  cfg.threads = j.value("threads", 0);
  if (j.contains("check")) cfg.check = j["check"];
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  nlohmann::json grid_json = nlohmann::json::object();
  for (const auto& [k, v] : grid) grid_json[k] = v;
  j["grid"] = grid_json;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["mode"] = mode_to_string(mode);
  j["max_tries"] = max_tries;
  j["burn_in"] = burn_in;
  j["rho"] = rho;
  j["mu"] = mu;
  j["measurements"] = measurements;
  j["cutoffs"] = {{"exact_mixing", exact_mixing_cutoff},
                  {"starts", starts},
                  {"exact_diameter", exact_diameter_cutoff}};
  j["threads"] = threads;
  if (!check.empty()) j["check"] = check;
  return j;
}

std::vector<CellSpec> expand_grid(const ExperimentConfig& cfg) {
  std::vector<CellSpec> cells;
  std::vector<std::pair<std::string, std::vector<double>>> keys(cfg.grid.begin(),
                                                                cfg.grid.end());
  int64_t total = 1;
  for (const auto& [k, v] : keys) {
    (void)k;
    total *= static_cast<int64_t>(v.size());
  }
  cells.reserve(static_cast<size_t>(total));
  for (int64_t idx = 0; idx < total; ++idx) {
    CellSpec cell;
    cell.index = idx;
    int64_t rest = idx;
    // Last key varies fastest.
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
      int64_t k = rest % static_cast<int64_t>(it->second.size());
      rest /= static_cast<int64_t>(it->second.size());
      cell.params[it->first] = it->second[static_cast<size_t>(k)];
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

namespace {

std::string params_string(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out.push_back(';');
    out += k + "=" + format_number(v);
  }
  return out;
}

ResultRow compute_row(const ExperimentConfig& cfg, const CellSpec& cell, int64_t rep) {
  ResultRow row;
  row.cell = cell.index;
  row.replicate = rep;
  row.params = params_string(cell.params);
  DegreeSequence seq = gen_family(cfg.family, cell.params);
  row.n = seq.n();
  row.m = seq.m();
  row.n2 = seq.n2();
  row.m_ne2 = seq.m_ne2();
  row.seed = stream_seed(cfg.seed, static_cast<uint64_t>(cell.index),
                         static_cast<uint64_t>(rep));
  Rng rng(row.seed);
  SampleInfo info;
  Multigraph g = sample_uniform(seq, rng, cfg.mode, cfg.max_tries, cfg.burn_in, &info);
  row.mode = info.mode;
  row.tries = info.tries;
  row.steps = info.steps;
  if (g.degree_mass() != 2 * seq.m())
    throw std::logic_error("sampled graph does not realize the degree sum");

  const bool want_components = cfg.measurements.count("components");
  const bool want_reduction = cfg.measurements.count("reduction");
  const bool want_diameter = cfg.measurements.count("diameter");
  const bool want_mixing = cfg.measurements.count("mixing");
  const bool want_star = cfg.measurements.count("star");

  if (want_components || want_star) {
    auto comps = g.components();
    std::vector<int64_t> sizes;
    sizes.reserve(comps.size());
    for (const auto& c : comps) sizes.push_back(static_cast<int64_t>(c.size()));
    std::sort(sizes.rbegin(), sizes.rend());
    row.largest = sizes.empty() ? 0 : sizes[0];
    row.second = sizes.size() > 1 ? sizes[1] : 0;
    if (want_star) {
      if (cfg.family != "star-separation")
        throw std::invalid_argument("star measurement needs the star-separation family");
      int64_t nh = static_cast<int64_t>(
          std::floor(std::cbrt(cell.params.at("l"))));
      std::vector<int64_t> comp_of(g.n(), -1), comp_m(comps.size(), 0),
          comp_sz(comps.size(), 0);
      for (size_t ci = 0; ci < comps.size(); ++ci) {
        for (int v : comps[ci]) comp_of[v] = static_cast<int64_t>(ci);
        comp_sz[ci] = static_cast<int64_t>(comps[ci].size());
      }
      for (const auto& [u, v] : g.edges()) {
        (void)v;
        comp_m[comp_of[u]]++;
      }
      row.star_order = 0;
      for (int64_t v = g.n() - 1 - nh; v < g.n() - 1; ++v) {
        int64_t ci = comp_of[v];
        // v centres a star component: a tree all of whose edges meet v.
        if (comp_m[ci] == comp_sz[ci] - 1 &&
            g.degree(static_cast<int>(v)) == comp_sz[ci] - 1)
          row.star_order = std::max(row.star_order, comp_sz[ci]);
      }
    }
  }
  if (want_reduction) {
    ColouredReduction red = coloured_reduction(g);
    row.cyc = static_cast<int64_t>(red.cycles.size());
    ColourHistogram hist = colour_histogram(red);
    row.red = hist.red;
    row.yellow = hist.yellow;
    row.green = hist.green;
    auto it3 = hist.green_by_length.find(3);
    row.g3 = (it3 == hist.green_by_length.end()) ? 0 : it3->second;
    row.j_edges = static_cast<int64_t>(red.edges.size());
    if (row.j_edges != row.m - row.n2)
      throw std::logic_error("reduced edge count disagrees with m - n2");
    for (const auto& e : red.edges)
      if (e.colour == EdgeColour::kGreen)
        row.green_internal.push_back(static_cast<int64_t>(e.internal.size()));
    KernelDecomposition k = core_and_kernel(g);
    row.kernel_vertices = static_cast<int64_t>(k.kernel_vertices.size());
    row.kernel_edges = static_cast<int64_t>(k.kernel_edges.size());
    row.multicycle = multicycle_component_count(g);
  }
  if (want_diameter || want_mixing) {
    auto pieces = g.split_components();
    size_t big = 0;
    for (size_t i = 1; i < pieces.size(); ++i)
      if (pieces[i].graph.n() > pieces[big].graph.n()) big = i;
    if (!pieces.empty()) {
      const Multigraph& comp = pieces[big].graph;
      if (want_diameter) {
        if (comp.n() <= cfg.exact_diameter_cutoff) {
          row.diameter = diameter_exact(comp);
          row.diameter_exact = 1;
        } else {
          row.diameter = diameter_lower_bound(comp);
          row.diameter_exact = 0;
        }
      }
      if (want_mixing) {
        if (comp.n() <= cfg.exact_mixing_cutoff) {
          row.tau = mixing_time_exact(comp);
          row.tau_exact = 1;
        } else {
          auto sm = mixing_time_sampled(comp, cfg.starts, rng);
          row.tau = sm.tau;
          row.tau_exact = sm.exact ? 1 : 0;
        }
      }
    }
  }
  return row;
}

// Runs every (cell, replicate) and hands rows to the sink in order.
template <typename Sink>
void for_each_row(const ExperimentConfig& cfg, const std::vector<CellSpec>& cells,
                  Sink&& sink) {
  const int64_t total = static_cast<int64_t>(cells.size()) * cfg.replicates;
  int threads = cfg.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<int64_t>(threads, total));
  auto task = [&](int64_t idx) {
    const CellSpec& cell = cells[static_cast<size_t>(idx / cfg.replicates)];
    return compute_row(cfg, cell, idx % cfg.replicates);
  };
  if (threads <= 1) {
    for (int64_t i = 0; i < total; ++i) sink(task(i));
    return;
  }
  std::vector<std::optional<ResultRow>> done(static_cast<size_t>(total));
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<int64_t> next{0};
  std::exception_ptr failure;
  auto worker = [&]() {
    for (;;) {
      int64_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        ResultRow row = task(i);
        std::lock_guard<std::mutex> lock(mu);
        done[static_cast<size_t>(i)] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  {
    std::unique_lock<std::mutex> lock(mu);
    for (int64_t i = 0; i < total; ++i) {
      cv.wait(lock, [&] { return done[static_cast<size_t>(i)].has_value() || failure; });
      if (failure) break;
      ResultRow row = std::move(*done[static_cast<size_t>(i)]);
      done[static_cast<size_t>(i)].reset();
      lock.unlock();
      sink(std::move(row));
      lock.lock();
    }
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

const char* ResultTable::csv_header() {
  return "schema,family,cell,replicate,seed,params,n,m,n2,m_ne2,mode,tries,steps,"
         "largest,second,cyc,red,yellow,green,g3,j_edges,kernel_vertices,"
         "kernel_edges,multicycle,star_order,diameter,diameter_exact,tau,tau_exact";
}

namespace {

std::string row_csv(const ResultRow& row, const std::string& family) {
  auto opt = [](int64_t v) { return v < 0 ? std::string() : std::to_string(v); };
  auto opt_flag = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
  std::string out = "1," + family + "," + std::to_string(row.cell) + "," +
                    std::to_string(row.replicate) + "," + std::to_string(row.seed) +
                    "," + row.params + "," + std::to_string(row.n) + "," +
                    std::to_string(row.m) + "," + std::to_string(row.n2) + "," +
                    std::to_string(row.m_ne2) + "," + row.mode + "," +
                    std::to_string(row.tries) + "," + std::to_string(row.steps) + "," +
                    opt(row.largest) + "," + opt(row.second) + "," + opt(row.cyc) +
                    "," + opt(row.red) + "," + opt(row.yellow) + "," + opt(row.green) +
                    "," + opt(row.g3) + "," + opt(row.j_edges) + "," +
                    opt(row.kernel_vertices) + "," + opt(row.kernel_edges) + "," +
                    opt(row.multicycle) + "," + opt(row.star_order) + "," +
                    opt(row.diameter) + "," + opt_flag(row.diameter_exact) + "," +
                    opt(row.tau) + "," + opt_flag(row.tau_exact);
  return out;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out = csv_header();
  out.push_back('\n');
  for (const auto& row : rows) {
    out += row_csv(row, family);
    out.push_back('\n');
  }
  return out;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  ResultTable tbl;
  tbl.family = cfg.family;
  tbl.cells = expand_grid(cfg);
  for_each_row(cfg, tbl.cells,
               [&](ResultRow&& row) { tbl.rows.push_back(std::move(row)); });
  return tbl;
}

void run_experiment_csv(const ExperimentConfig& cfg, std::ostream& out) {
  auto cells = expand_grid(cfg);
  out << ResultTable::csv_header() << '\n';
  for_each_row(cfg, cells, [&](ResultRow&& row) {
    out << row_csv(row, cfg.family) << '\n';
    out.flush();
  });
}

namespace {

double whp_target(int64_t m_ne2) {
  if (m_ne2 < 3) return 0.0;
  double ll = std::log(std::log(static_cast<double>(m_ne2)));
  if (ll <= 1.0) return 0.0;
  return 1.0 - 1.0 / ll;
}

double binomial_slack(double q, int64_t reps) {
  return 3.0 * std::sqrt(std::max(q * (1.0 - q), 0.0) / static_cast<double>(reps));
}

std::vector<std::vector<const ResultRow*>> rows_by_cell(const ResultTable& tbl) {
  std::vector<std::vector<const ResultRow*>> by(tbl.cells.size());
  for (const auto& row : tbl.rows) by[static_cast<size_t>(row.cell)].push_back(&row);
  return by;
}

int64_t row_column(const ResultRow& r, const std::string& name) {
  if (name == "n") return r.n;
  if (name == "m") return r.m;
  if (name == "n2") return r.n2;
  if (name == "m_ne2") return r.m_ne2;
  if (name == "largest") return r.largest;
  if (name == "second") return r.second;
  if (name == "cyc") return r.cyc;
  if (name == "red") return r.red;
  if (name == "yellow") return r.yellow;
  if (name == "green") return r.green;
  if (name == "g3") return r.g3;
  if (name == "j_edges") return r.j_edges;
  if (name == "kernel_vertices") return r.kernel_vertices;
  if (name == "kernel_edges") return r.kernel_edges;
  if (name == "multicycle") return r.multicycle;
  if (name == "star_order") return r.star_order;
  if (name == "diameter") return r.diameter;
  if (name == "tau") return r.tau;
  if (name == "tries") return r.tries;
  if (name == "steps") return r.steps;
  throw std::invalid_argument("unknown column '" + name + "'");
}

std::string measurement_for_column(const std::string& name) {
  if (name == "tau") return "mixing";
  if (name == "diameter") return "diameter";
  if (name == "star_order") return "star";
  if (name == "largest" || name == "second") return "components";
  if (name == "n" || name == "m" || name == "n2" || name == "m_ne2" ||
      name == "tries" || name == "steps")
    return "";
  return "reduction";
}

nlohmann::json check_cycle_mass(const ExperimentConfig& cfg, const ResultTable& tbl) {
  auto by = rows_by_cell(tbl);
  int64_t floor_m = cfg.check.value("min_m_ne2", int64_t{64});
  nlohmann::json cells = nlohmann::json::array();
  bool all = true, any = false;
  for (size_t ci = 0; ci < by.size(); ++ci) {
    if (by[ci].empty()) continue;
    const ResultRow* first = by[ci][0];
    nlohmann::json jc;
    jc["cell"] = tbl.cells[ci].params;
    jc["m_ne2"] = first->m_ne2;
    if (first->m_ne2 < floor_m) {
      jc["skipped"] = true;
      cells.push_back(std::move(jc));
      continue;
    }
    any = true;
    double m2 = static_cast<double>(first->m_ne2);
    double bound = 203.0 * static_cast<double>(first->n2 + first->m_ne2) *
                   std::log(m2) / m2;
    int64_t ok = 0;
    for (const ResultRow* r : by[ci])
      if (static_cast<double>(r->cyc) < bound) ++ok;
    double frac = static_cast<double>(ok) / static_cast<double>(by[ci].size());
    double q = whp_target(first->m_ne2);
    double slack = binomial_slack(q, static_cast<int64_t>(by[ci].size()));
    bool pass = frac >= q - slack;
    jc["bound"] = bound;
    jc["fraction"] = frac;
    jc["target"] = q;
    jc["slack"] = slack;
    jc["pass"] = pass;
    all = all && pass;
    cells.push_back(std::move(jc));
  }
  return {{"name", "cycle_mass"}, {"cells", cells}, {"pass", all && any}};
}

nlohmann::json check_colour_distribution(const ExperimentConfig& cfg,
                                         const ResultTable& tbl) {
  auto by = rows_by_cell(tbl);
  double delta_max = cfg.check.value("delta_max", 0.01);
  nlohmann::json cells = nlohmann::json::array();
  bool all = true, any = false;
  for (size_t ci = 0; ci < by.size(); ++ci) {
    if (by[ci].empty()) continue;
    const ResultRow* first = by[ci][0];
    nlohmann::json jc;
    jc["cell"] = tbl.cells[ci].params;
    jc["m_ne2"] = first->m_ne2;
    double delta = static_cast<double>(first->m_ne2) / static_cast<double>(first->m);
    jc["delta"] = delta;
    if (delta > delta_max || first->m_ne2 <= 0) {
      jc["skipped"] = true;
      cells.push_back(std::move(jc));
      continue;
    }
    any = true;
    double m2 = static_cast<double>(first->m_ne2);
    double bound_ry = 3.0 * delta / (1.0 - 4.0 * delta) * m2;
    double bound_g = (1.0 - 8.0 * delta) / (1.0 - 4.0 * delta) * m2;
    int64_t ok = 0;
    for (const ResultRow* r : by[ci]) {
      bool row_ok = static_cast<double>(r->red) <= bound_ry &&
                    static_cast<double>(r->yellow) <= bound_ry &&
                    static_cast<double>(r->green) >= bound_g;
      if (row_ok) ++ok;
    }
    double frac = static_cast<double>(ok) / static_cast<double>(by[ci].size());
    double q = whp_target(first->m_ne2);
    double slack = binomial_slack(q, static_cast<int64_t>(by[ci].size()));
    bool pass = frac >= q - slack;
    jc["bound_red_yellow"] = bound_ry;
    jc["bound_green"] = bound_g;
    jc["fraction"] = frac;
    jc["target"] = q;
    jc["slack"] = slack;
    jc["pass"] = pass;
    all = all && pass;
    cells.push_back(std::move(jc));
  }
  return {{"name", "colour_distribution"}, {"cells", cells}, {"pass", all && any}};
}

nlohmann::json check_green_law(const ExperimentConfig& cfg, const ResultTable& tbl) {
  int64_t min_group = cfg.check.value("min_group", int64_t{30});
  double p_min = cfg.check.value("p_min", 0.001);
  std::map<std::tuple<int64_t, int64_t, int64_t, int64_t>, std::vector<const ResultRow*>>
      groups;
  for (const auto& row : tbl.rows) {
    if (row.cyc != 0 || row.green < 1) continue;
    groups[{row.cell, row.red, row.yellow, row.green}].push_back(&row);
  }
  nlohmann::json out_groups = nlohmann::json::array();
  bool all = true;
  int64_t used = 0, group_ordinal = 0;
  for (const auto& [key, rows] : groups) {
    ++group_ordinal;
    if (static_cast<int64_t>(rows.size()) < min_group) continue;
    ++used;
    auto [cell, red, yellow, green] = key;
    int64_t n2 = rows[0]->n2;
    int64_t spare = n2 - yellow - 2 * green;
    // One synthetic draw per observed row keeps the two samples balanced.
    std::map<int64_t, int64_t> observed, synthetic;
    for (size_t i = 0; i < rows.size(); ++i) {
      for (int64_t v : rows[i]->green_internal) observed[v]++;
      Rng rng(stream_seed(cfg.seed ^ 0x677265656e4c61ULL,
                          static_cast<uint64_t>(group_ordinal), i));
      for (int64_t v : sample_green_lengths(green, spare, rng)) synthetic[v]++;
    }
    TwoSampleChiSq res = chisq_two_sample(observed, synthetic);
    bool pass = res.p > p_min;
    all = all && pass;
    out_groups.push_back({{"cell", cell},
                          {"red", red},
                          {"yellow", yellow},
                          {"green", green},
                          {"rows", rows.size()},
                          {"spare", spare},
                          {"stat", res.stat},
                          {"dof", res.dof},
                          {"bins", res.bins},
                          {"p", res.p},
                          {"pass", pass}});
  }
  nlohmann::json out = {{"name", "green_law"},
                        {"groups", out_groups},
                        {"groups_used", used}};
  bool overall = all && used >= 1;
  if (cfg.check.contains("tail")) {
    const auto& t = cfg.check["tail"];
    Rng rng(cfg.seed ^ 0x677265656e5461ULL);
    GreenTailCheck res = green_tail_bound_check(
        t.at("g").get<int64_t>(), t.at("spare").get<int64_t>(),
        t.at("s").get<int64_t>(), t.at("b").get<int64_t>(),
        t.value("replicates", int64_t{2000}), rng);
    out["tail"] = {{"empirical", res.empirical}, {"bound", res.bound},
                   {"slack", res.slack},         {"replicates", res.replicates},
                   {"pass", res.pass}};
    overall = overall && res.pass;
  }
  out["pass"] = overall;
  return out;
}

nlohmann::json check_scaling(const ExperimentConfig& cfg, const ResultTable& tbl) {
  std::string column = cfg.check.at("column").get<std::string>();
  std::string form = cfg.check.at("form").get<std::string>();
  std::string x_key = cfg.check.value("x", std::string("n"));
  auto by = rows_by_cell(tbl);
  std::vector<double> xs, meds;
  nlohmann::json cells = nlohmann::json::array();
  for (size_t ci = 0; ci < by.size(); ++ci) {
    if (by[ci].empty()) continue;
    double x;
    if (x_key == "n" || x_key == "m") {
      x = static_cast<double>(row_column(*by[ci][0], x_key));
    } else {
      x = tbl.cells[ci].params.at(x_key);
    }
    std::vector<double> vals;
    for (const ResultRow* r : by[ci]) {
      int64_t v = row_column(*r, column);
      if (v >= 0) vals.push_back(static_cast<double>(v));
    }
    if (vals.empty()) throw std::invalid_argument("column '" + column + "' not measured");
    double med = median(vals);
    xs.push_back(x);
    meds.push_back(med);
    cells.push_back({{"cell", tbl.cells[ci].params}, {"x", x}, {"median", med}});
  }
  nlohmann::json out = {{"name", "scaling"},
                        {"column", column},
                        {"form", form},
                        {"cells", cells}};
  bool pass = true;
  if (form == "power") {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] <= 0 || meds[i] <= 0)
        throw std::invalid_argument("power fit needs positive data");
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(meds[i]));
    }
    LinFit f = fit_linear(lx, ly);
    out["slope"] = f.slope;
    out["r2"] = f.r2;
    if (cfg.check.contains("slope_min")) pass = pass && f.slope >= cfg.check["slope_min"].get<double>();
    if (cfg.check.contains("slope_max")) pass = pass && f.slope <= cfg.check["slope_max"].get<double>();
    if (cfg.check.contains("r2_min")) pass = pass && f.r2 >= cfg.check["r2_min"].get<double>();
  } else if (form == "log2") {
    std::vector<double> lx;
    for (double x : xs) {
      if (x <= 1) throw std::invalid_argument("log2 fit needs x > 1");
      double l = std::log(x);
      lx.push_back(l * l);
    }
    LinFit f = fit_linear(lx, meds);
    out["slope"] = f.slope;
    out["r2"] = f.r2;
    pass = f.slope > 0 && f.r2 >= cfg.check.value("r2_min", 0.9);
  } else if (form == "ratio") {
    std::vector<size_t> order(xs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    double lo = cfg.check.value("ratio_min", 0.0);
    double hi = cfg.check.value("ratio_max", std::numeric_limits<double>::infinity());
    nlohmann::json ratios = nlohmann::json::array();
    for (size_t i = 1; i < order.size(); ++i) {
      double r = meds[order[i]] / meds[order[i - 1]];
      ratios.push_back(r);
      pass = pass && r >= lo && r <= hi;
    }
    out["ratios"] = ratios;
  } else {
    throw std::invalid_argument("unknown scaling form '" + form + "'");
  }
  if (xs.size() < 2) throw std::invalid_argument("scaling check needs >= 2 cells");
  out["pass"] = pass;
  return out;
}

nlohmann::json check_kernel_uniqueness(const ExperimentConfig& cfg,
                                       const ResultTable& tbl) {
  auto by = rows_by_cell(tbl);
  double min_fraction = cfg.check.value("min_fraction", 0.95);
  nlohmann::json cells = nlohmann::json::array();
  bool all = true;
  for (size_t ci = 0; ci < by.size(); ++ci) {
    if (by[ci].empty()) continue;
    int64_t at_most_one = 0, exactly_one = 0;
    for (const ResultRow* r : by[ci]) {
      if (r->multicycle <= 1) ++at_most_one;
      if (r->multicycle == 1) ++exactly_one;
    }
    double n_rows = static_cast<double>(by[ci].size());
    double frac01 = static_cast<double>(at_most_one) / n_rows;
    double frac1 = static_cast<double>(exactly_one) / n_rows;
    bool pass = frac01 >= min_fraction;
    all = all && pass;
    cells.push_back({{"cell", tbl.cells[ci].params},
                     {"fraction_at_most_one", frac01},
                     {"fraction_exactly_one", frac1},
                     {"min_fraction", min_fraction},
                     {"pass", pass}});
  }
  return {{"name", "kernel_uniqueness"}, {"cells", cells}, {"pass", all}};
}

nlohmann::json check_star_separation(const ExperimentConfig& cfg,
                                     const ResultTable& tbl) {
  if (cfg.family != "star-separation")
    throw std::invalid_argument("star_separation check needs that family");
  auto by = rows_by_cell(tbl);
  nlohmann::json cells = nlohmann::json::array();
  bool all = true;
  for (size_t ci = 0; ci < by.size(); ++ci) {
    if (by[ci].empty()) continue;
    double a = tbl.cells[ci].params.at("a");
    int64_t hit = 0;
    for (const ResultRow* r : by[ci])
      if (r->star_order > 0) ++hit;
    double frac = static_cast<double>(hit) / static_cast<double>(by[ci].size());
    double target = 1.0 - 1.0 / a;
    double slack = binomial_slack(target, static_cast<int64_t>(by[ci].size()));
    bool pass = frac >= target - slack;
    all = all && pass;
    cells.push_back({{"cell", tbl.cells[ci].params},
                     {"fraction", frac},
                     {"target", target},
                     {"slack", slack},
                     {"pass", pass}});
  }
  return {{"name", "star_separation"}, {"cells", cells}, {"pass", all}};
}

}  // namespace

nlohmann::json run_check(const std::string& name, const ExperimentConfig& cfg) {
  ExperimentConfig local = cfg;
  if (name == "cycle_mass" || name == "colour_distribution" || name == "green_law" ||
      name == "kernel_uniqueness") {
    local.measurements.insert("reduction");
  } else if (name == "star_separation") {
    local.measurements.insert("components");
    local.measurements.insert("star");
  } else if (name == "scaling") {
    std::string column = local.check.at("column").get<std::string>();
    std::string need = measurement_for_column(column);
    if (!need.empty()) local.measurements.insert(need);
    if (need == "star") local.measurements.insert("components");
  } else {
    throw std::invalid_argument("unknown check '" + name + "'");
  }
  ResultTable tbl = run_experiment(local);
  if (name == "cycle_mass") return check_cycle_mass(local, tbl);
  if (name == "colour_distribution") return check_colour_distribution(local, tbl);
  if (name == "green_law") return check_green_law(local, tbl);
  if (name == "scaling") return check_scaling(local, tbl);
  if (name == "kernel_uniqueness") return check_kernel_uniqueness(local, tbl);
  return check_star_separation(local, tbl);
}

}  // namespace degwalk
