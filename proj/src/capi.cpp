#include "degwalk.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cycles.hpp"
#include "degseq.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "multigraph.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "walk.hpp"

using nlohmann::json;

struct dw_degseq {
  degwalk::DegreeSequence seq;
};

struct dw_graph {
  degwalk::Multigraph g;
};

namespace {

thread_local std::string t_error = "ok";

dw_status fail(dw_status code, const std::string& msg) {
  t_error = msg;
  return code;
}

struct null_arg_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parse-context entry points map invalid_argument to DW_ERR_PARSE.
// NULL pointers are invalid arguments in every context.
template <typename F>
dw_status guarded(bool parse_context, F&& fn) {
  try {
    return fn();
  } catch (const null_arg_error& e) {
    return fail(DW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const degwalk::InfeasibleError& e) {
    return fail(DW_ERR_INFEASIBLE, e.what());
  } catch (const degwalk::ExhaustedError& e) {
    return fail(DW_ERR_EXHAUSTED, e.what());
  } catch (const std::length_error& e) {
    return fail(DW_ERR_TOO_LARGE, e.what());
  } catch (const json::exception& e) {
    return fail(DW_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(parse_context ? DW_ERR_PARSE : DW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DW_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw null_arg_error(std::string(name) + " must not be NULL");
}

void give_string(char** out, const std::string& s) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.data(), s.size() + 1);
  *out = buf;
}

const char* colour_name(degwalk::EdgeColour c) {
  switch (c) {
    case degwalk::EdgeColour::kRed:
      return "red";
    case degwalk::EdgeColour::kYellow:
      return "yellow";
    default:
      return "green";
  }
}

degwalk::EdgeColour colour_from_name(const std::string& s) {
  if (s == "red") return degwalk::EdgeColour::kRed;
  if (s == "yellow") return degwalk::EdgeColour::kYellow;
  if (s == "green") return degwalk::EdgeColour::kGreen;
  throw std::invalid_argument("unknown edge colour '" + s + "'");
}

json reduction_to_json(const degwalk::ColouredReduction& r) {
  json edges = json::array();
  for (const auto& e : r.edges)
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"colour", colour_name(e.colour)},
                     {"internal", e.internal}});
  return json{{"n", r.n},
              {"m", r.m},
              {"cycles", r.cycles},
              {"j_vertices", r.j_vertices},
              {"edges", edges}};
}

degwalk::ColouredReduction reduction_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("reduction must be a JSON object");
  degwalk::ColouredReduction r;
  r.n = j.at("n").get<int64_t>();
  r.m = j.at("m").get<int64_t>();
  r.cycles = j.at("cycles").get<std::vector<std::vector<int>>>();
  r.j_vertices = j.at("j_vertices").get<std::vector<int>>();
  for (const auto& je : j.at("edges")) {
    degwalk::ReducedEdge e;
    e.u = je.at("u").get<int>();
    e.v = je.at("v").get<int>();
    e.colour = colour_from_name(je.at("colour").get<std::string>());
    e.internal = je.at("internal").get<std::vector<int>>();
    r.edges.push_back(std::move(e));
  }
  return r;
}

json kernel_to_json(const degwalk::KernelDecomposition& k) {
  json edges = json::array();
  for (const auto& e : k.kernel_edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"internal", e.internal}});
  json decos = json::array();
  for (const auto& d : k.decorations)
    decos.push_back({{"root", d.root}, {"edges", d.edges}});
  return json{{"n", k.n},
              {"kernel_vertices", k.kernel_vertices},
              {"kernel_edges", edges},
              {"core_cycles", k.core_cycles},
              {"acyclic", k.acyclic},
              {"decorations", decos}};
}

degwalk::WalkOptions walk_options(const dw_walk_opts* opts) {
  degwalk::WalkOptions w;
  if (!opts) return w;
  w.seed = opts->seed;
  if (opts->exact_mixing_cutoff > 0) w.exact_mixing_cutoff = opts->exact_mixing_cutoff;
  if (opts->starts > 0) w.starts = opts->starts;
  if (opts->exact_cond_cutoff > 0) w.exact_cond_cutoff = opts->exact_cond_cutoff;
  if (opts->exact_diameter_cutoff > 0)
    w.exact_diameter_cutoff = opts->exact_diameter_cutoff;
  w.profile = opts->profile != 0;
  return w;
}

}  // namespace

extern "C" {

const char* dw_last_error(void) { return t_error.c_str(); }

void dw_string_free(char* s) { std::free(s); }

dw_status dw_degseq_parse(const char* text, dw_degseq** out) {
  return guarded(true, [&] {
    require(text, "text");
    require(out, "out");
    auto* h = new dw_degseq{degwalk::DegreeSequence::parse(text)};
    *out = h;
    return DW_OK;
  });
}

dw_status dw_degseq_family(const char* name, const char* params_json,
                           dw_degseq** out) {
  return guarded(false, [&] {
    require(name, "name");
    require(out, "out");
    std::map<std::string, double> params;
    if (params_json && *params_json) {
      json j = json::parse(params_json);
      if (!j.is_object()) throw std::invalid_argument("params must be a JSON object");
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number())
          throw std::invalid_argument("parameter '" + it.key() + "' must be numeric");
        params[it.key()] = it.value().get<double>();
      }
    }
    *out = new dw_degseq{degwalk::gen_family(name, params)};
    return DW_OK;
  });
}

void dw_degseq_free(dw_degseq* d) { delete d; }

int64_t dw_degseq_n(const dw_degseq* d) { return d ? d->seq.n() : -1; }

int64_t dw_degseq_m(const dw_degseq* d) { return d ? d->seq.m() : -1; }

int dw_degseq_feasible(const dw_degseq* d) {
  if (!d) return 0;
  return d->seq.is_feasible() ? 1 : 0;
}

dw_status dw_degseq_text(const dw_degseq* d, char** out) {
  return guarded(false, [&] {
    require(d, "d");
    require(out, "out");
    give_string(out, d->seq.to_text());
    return DW_OK;
  });
}

dw_status dw_degseq_stats_json(const dw_degseq* d, double rho, double mu,
                               char** out) {
  return guarded(false, [&] {
    require(d, "d");
    require(out, "out");
    if (rho <= 0) rho = 0.05;
    if (mu <= 0) mu = 0.05;
    degwalk::CriticalStats cs = d->seq.critical_stats(rho, mu);
    json j{{"n", d->seq.n()},
           {"m", d->seq.m()},
           {"n2", d->seq.n2()},
           {"m_ne2", d->seq.m_ne2()},
           {"max_degree", d->seq.max_degree()},
           {"sum_sq", d->seq.sum_sq()},
           {"feasible", d->seq.is_feasible()},
           {"j_d", cs.j_d},
           {"r_d", cs.r_d},
           {"rho", rho},
           {"mu", mu},
           {"supercritical", cs.supercritical},
           {"mu_center", cs.mu_center},
           {"degenerate", cs.degenerate}};
    give_string(out, j.dump(2));
    return DW_OK;
  });
}

dw_status dw_graph_from_text(const char* text, dw_graph** out) {
  return guarded(true, [&] {
    require(text, "text");
    require(out, "out");
    *out = new dw_graph{degwalk::Multigraph::from_text(text)};
    return DW_OK;
  });
}

void dw_graph_free(dw_graph* g) { delete g; }

int64_t dw_graph_n(const dw_graph* g) { return g ? g->g.n() : -1; }

int64_t dw_graph_m(const dw_graph* g) { return g ? g->g.m() : -1; }

int dw_graph_simple(const dw_graph* g) {
  if (!g) return 0;
  return g->g.is_simple() ? 1 : 0;
}

dw_status dw_graph_text(const dw_graph* g, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    give_string(out, g->g.to_text());
    return DW_OK;
  });
}

dw_status dw_graph_summary_json(const dw_graph* g, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    auto comps = g->g.components();
    int64_t largest = 0;
    for (const auto& c : comps)
      largest = std::max(largest, static_cast<int64_t>(c.size()));
    auto degs = g->g.degree_vector();
    int64_t dmin = 0, dmax = 0;
    if (!degs.empty()) {
      dmin = *std::min_element(degs.begin(), degs.end());
      dmax = *std::max_element(degs.begin(), degs.end());
    }
    json j{{"n", g->g.n()},
           {"m", g->g.m()},
           {"simple", g->g.is_simple()},
           {"components", comps.size()},
           {"largest_component", largest},
           {"min_degree", dmin},
           {"max_degree", dmax},
           {"cycle_components", degwalk::cycle_component_count(g->g)},
           {"multicycle_components", degwalk::multicycle_component_count(g->g)}};
    give_string(out, j.dump(2));
    return DW_OK;
  });
}

dw_status dw_sample(const dw_degseq* d, const dw_sample_opts* opts, dw_graph** out,
                    char** info_json) {
  return guarded(false, [&] {
    require(d, "d");
    require(out, "out");
    uint64_t seed = opts ? opts->seed : 0;
    degwalk::SampleMode mode = degwalk::SampleMode::kAuto;
    int64_t max_tries = 5000, burn_in = -1;
    if (opts) {
      switch (opts->mode) {
        case 0:
          mode = degwalk::SampleMode::kAuto;
          break;
        case 1:
          mode = degwalk::SampleMode::kReject;
          break;
        case 2:
          mode = degwalk::SampleMode::kMcmc;
          break;
        default:
          throw std::invalid_argument("mode must be 0, 1 or 2");
      }
      if (opts->max_tries > 0) max_tries = opts->max_tries;
      burn_in = opts->burn_in;
    }
    degwalk::Rng rng(seed);
    degwalk::SampleInfo info;
    degwalk::Multigraph g =
        degwalk::sample_uniform(d->seq, rng, mode, max_tries, burn_in, &info);
    *out = new dw_graph{std::move(g)};
    if (info_json) {
      json j{{"mode", info.mode},
             {"tries", info.tries},
             {"steps", info.steps},
             {"accepted", info.accepted},
             {"seed", seed}};
      give_string(info_json, j.dump(2));
    }
    return DW_OK;
  });
}

dw_status dw_cycle_count(int64_t t, char** decimal, double* log_value) {
  return guarded(false, [&] {
    degwalk::CycleCount c = degwalk::cycle_union_count(t);
    if (decimal) {
      if (!c.has_exact)
        throw std::length_error("exact cycle-union count unavailable for t = " +
                                std::to_string(t));
      give_string(decimal, c.exact_decimal);
    }
    if (log_value) *log_value = c.log_value;
    return DW_OK;
  });
}

dw_status dw_cycle_ratio(int64_t t, double* out) {
  return guarded(false, [&] {
    require(out, "out");
    *out = degwalk::cycle_ratio(t);
    return DW_OK;
  });
}

dw_status dw_reduce_json(const dw_graph* g, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    give_string(out, reduction_to_json(degwalk::coloured_reduction(g->g)).dump(2));
    return DW_OK;
  });
}

dw_status dw_reduce_text(const dw_graph* g, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    degwalk::ColouredReduction r = degwalk::coloured_reduction(g->g);
    std::string text = "n " + std::to_string(r.n) + "\n";
    text += "cycles " + std::to_string(r.cycles.size()) + "\n";
    for (const auto& c : r.cycles) {
      text += "cycle";
      for (int v : c) text += " " + std::to_string(v + 1);
      text += "\n";
    }
    text += "edges " + std::to_string(r.edges.size()) + "\n";
    for (const auto& e : r.edges) {
      text += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " +
              colour_name(e.colour) + " " + std::to_string(e.internal.size() + 1) +
              "\n";
    }
    give_string(out, text);
    return DW_OK;
  });
}

dw_status dw_reconstruct(const char* reduction_json, dw_graph** out) {
  return guarded(true, [&] {
    require(reduction_json, "reduction_json");
    require(out, "out");
    json j = json::parse(reduction_json);
    *out = new dw_graph{degwalk::reconstruct(reduction_from_json(j))};
    return DW_OK;
  });
}

dw_status dw_kernel_json(const dw_graph* g, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    give_string(out, kernel_to_json(degwalk::core_and_kernel(g->g)).dump(2));
    return DW_OK;
  });
}

int64_t dw_multicycle_components(const dw_graph* g) {
  if (!g) {
    fail(DW_ERR_INVALID_ARGUMENT, "g must not be NULL");
    return -1;
  }
  return degwalk::multicycle_component_count(g->g);
}

dw_status dw_walk_json(const dw_graph* g, const dw_walk_opts* opts, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    degwalk::WalkReport rep = degwalk::analyze_walks(g->g, walk_options(opts));
    give_string(out, degwalk::walk_report_json(rep));
    return DW_OK;
  });
}

dw_status dw_walk_csv(const dw_graph* g, const dw_walk_opts* opts, char** out) {
  return guarded(false, [&] {
    require(g, "g");
    require(out, "out");
    degwalk::WalkReport rep = degwalk::analyze_walks(g->g, walk_options(opts));
    give_string(out, degwalk::walk_report_csv(rep));
    return DW_OK;
  });
}

dw_status dw_experiment_run(const char* config_json, char** csv_out) {
  return guarded(false, [&] {
    require(config_json, "config_json");
    require(csv_out, "csv_out");
    auto cfg = degwalk::ExperimentConfig::from_json(config_json);
    give_string(csv_out, degwalk::run_experiment(cfg).to_csv());
    return DW_OK;
  });
}

dw_status dw_experiment_run_to_file(const char* config_json, const char* path) {
  return guarded(false, [&] {
    require(config_json, "config_json");
    require(path, "path");
    auto cfg = degwalk::ExperimentConfig::from_json(config_json);
    std::ofstream out(path);
    if (!out) {
      fail(DW_ERR_IO, std::string("cannot open '") + path + "' for writing");
      return DW_ERR_IO;
    }
    degwalk::run_experiment_csv(cfg, out);
    out.flush();
    if (!out) {
      fail(DW_ERR_IO, std::string("short write to '") + path + "'");
      return DW_ERR_IO;
    }
    return DW_OK;
  });
}

dw_status dw_experiment_check(const char* name, const char* config_json,
                              char** verdict_json) {
  return guarded(false, [&] {
    require(name, "name");
    require(config_json, "config_json");
    require(verdict_json, "verdict_json");
    auto cfg = degwalk::ExperimentConfig::from_json(config_json);
    give_string(verdict_json, degwalk::run_check(name, cfg).dump(2));
    return DW_OK;
  });
}

}  // extern "C"
