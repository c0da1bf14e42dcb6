// Command-line front end for the degwalk shared library. Talks to the
// library exclusively through the C interface in degwalk.h.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "degwalk.h"

namespace {

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& message) {
  throw CliError{code, message};
}

[[noreturn]] void die_status(dw_status st) {
  die(st == DW_OK ? 0 : 2, dw_last_error());
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) die(2, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die(2, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) die(2, "short write to '" + path + "'");
}

// Owned C string, released on scope exit.
struct CStr {
  char* p = nullptr;
  ~CStr() { dw_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct SeqArgs {
  std::string family;
  std::vector<std::string> params;
  std::string degrees;
  std::string degrees_file;
};

void add_seq_options(CLI::App* cmd, SeqArgs& args) {
  cmd->add_option("--family", args.family, "degree-sequence family name");
  cmd->add_option("--param", args.params,
                  "family parameter as key=value (repeatable)");
  cmd->add_option("--degrees", args.degrees,
                  "explicit degree list, e.g. \"3 3 3 3\"");
  cmd->add_option("--degrees-file", args.degrees_file,
                  "file with a degree list ('-' for stdin)");
}

dw_degseq* make_seq(const SeqArgs& args) {
  const bool by_family = !args.family.empty();
  const bool by_list = !args.degrees.empty() || !args.degrees_file.empty();
  if (by_family == by_list)
    die(1, "give exactly one of --family or --degrees/--degrees-file");
  dw_degseq* d = nullptr;
  if (by_family) {
    nlohmann::json params = nlohmann::json::object();
    for (const std::string& kv : args.params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        die(1, "--param needs key=value, got '" + kv + "'");
      try {
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        die(1, "non-numeric value in --param '" + kv + "'");
      }
    }
    if (dw_degseq_family(args.family.c_str(), params.dump().c_str(), &d) != DW_OK)
      die_status(DW_ERR_INVALID_ARGUMENT);
  } else {
    std::string text =
        args.degrees.empty() ? slurp(args.degrees_file) : args.degrees;
    if (dw_degseq_parse(text.c_str(), &d) != DW_OK) die_status(DW_ERR_PARSE);
  }
  return d;
}

dw_graph* read_graph(const std::string& path) {
  std::string text = slurp(path);
  dw_graph* g = nullptr;
  if (dw_graph_from_text(text.c_str(), &g) != DW_OK) die_status(DW_ERR_PARSE);
  return g;
}

int mode_code(const std::string& mode) {
  if (mode == "auto") return 0;
  if (mode == "reject") return 1;
  if (mode == "mcmc") return 2;
  die(1, "mode must be auto, reject or mcmc");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform graphs with prescribed degrees: sampling, coloured "
               "reduction, kernels and lazy-walk analysis"};
  app.require_subcommand(1);

  // --- stats ---
  SeqArgs stats_seq;
  double stats_rho = 0.05, stats_mu = 0.05;
  auto* cmd_stats = app.add_subcommand(
      "stats", "degree-sequence statistics and criticality classification");
  add_seq_options(cmd_stats, stats_seq);
  cmd_stats->add_option("--rho", stats_rho, "supercriticality threshold");
  cmd_stats->add_option("--mu", stats_mu, "centering threshold");

  // --- gen ---
  SeqArgs gen_seq;
  std::string gen_mode = "auto", gen_out = "-";
  uint64_t gen_seed = 0;
  int64_t gen_max_tries = 0, gen_burn_in = -1;
  bool gen_verbose = false;
  auto* cmd_gen = app.add_subcommand(
      "gen", "sample a uniform simple graph with the prescribed degrees");
  add_seq_options(cmd_gen, gen_seq);
  cmd_gen->add_option("--mode", gen_mode, "auto, reject or mcmc");
  cmd_gen->add_option("--seed", gen_seed, "random seed");
  cmd_gen->add_option("--max-tries", gen_max_tries,
                      "rejection retry limit (0: default)");
  cmd_gen->add_option("--burn-in", gen_burn_in,
                      "switching-chain steps (-1: default)");
  cmd_gen->add_option("--out", gen_out, "output file ('-' for stdout)");
  cmd_gen->add_flag("--verbose", gen_verbose, "print the method record to stderr");

  // --- summary ---
  std::string summary_in = "-";
  auto* cmd_summary =
      app.add_subcommand("summary", "structural summary of an edge-list graph");
  cmd_summary->add_option("--in", summary_in, "graph file ('-' for stdin)");

  // --- reduce ---
  std::string reduce_in = "-", reduce_out = "-";
  bool reduce_json = false;
  auto* cmd_reduce = app.add_subcommand(
      "reduce", "coloured homeomorphic reduction of a simple graph");
  cmd_reduce->add_option("--in", reduce_in, "graph file ('-' for stdin)");
  cmd_reduce->add_option("--out", reduce_out, "output file ('-' for stdout)");
  cmd_reduce->add_flag("--json", reduce_json,
                       "emit the reconstructible JSON form instead of text");

  // --- reconstruct ---
  std::string recon_in = "-", recon_out = "-";
  auto* cmd_recon = app.add_subcommand(
      "reconstruct", "rebuild the original graph from a reduction JSON");
  cmd_recon->add_option("--in", recon_in, "reduction JSON file ('-' for stdin)");
  cmd_recon->add_option("--out", recon_out, "output file ('-' for stdout)");

  // --- kernel ---
  std::string kernel_in = "-", kernel_out = "-";
  auto* cmd_kernel = app.add_subcommand(
      "kernel", "core/kernel decomposition of a simple graph");
  cmd_kernel->add_option("--in", kernel_in, "graph file ('-' for stdin)");
  cmd_kernel->add_option("--out", kernel_out, "output file ('-' for stdout)");

  // --- walk ---
  std::string walk_in = "-", walk_out = "-";
  uint64_t walk_seed = 0;
  int64_t walk_mix_cutoff = 0, walk_starts = 0, walk_cond_cutoff = 0,
          walk_diam_cutoff = 0;
  bool walk_csv = false, walk_no_profile = false;
  auto* cmd_walk = app.add_subcommand(
      "walk", "diameter, conductance profile and lazy-walk mixing time");
  cmd_walk->add_option("--in", walk_in, "graph file ('-' for stdin)");
  cmd_walk->add_option("--out", walk_out, "output file ('-' for stdout)");
  cmd_walk->add_option("--seed", walk_seed, "seed for sampled mixing starts");
  cmd_walk->add_option("--exact-mixing-cutoff", walk_mix_cutoff,
                       "largest component size solved exactly (0: default)");
  cmd_walk->add_option("--starts", walk_starts,
                       "sampled start vertices above the cutoff (0: default)");
  cmd_walk->add_option("--exact-cond-cutoff", walk_cond_cutoff,
                       "largest size with exact conductance (0: default)");
  cmd_walk->add_option("--exact-diameter-cutoff", walk_diam_cutoff,
                       "largest size with exact diameter (0: default)");
  cmd_walk->add_flag("--csv", walk_csv, "CSV instead of JSON");
  cmd_walk->add_flag("--no-profile", walk_no_profile,
                     "skip the conductance profile and bounds");

  // --- cycles ---
  int64_t cycles_t = 0;
  bool cycles_ratio = false;
  auto* cmd_cycles = app.add_subcommand(
      "cycles", "count graphs on t labelled vertices that are unions of cycles");
  cmd_cycles->add_option("t", cycles_t, "number of labelled vertices")->required();
  cmd_cycles->add_flag("--ratio", cycles_ratio, "also print C(t+1)/C(t)");

  // --- exp ---
  auto* cmd_exp = app.add_subcommand("exp", "experiment harness");
  cmd_exp->require_subcommand(1);
  std::string run_config, run_out = "-";
  auto* cmd_run = cmd_exp->add_subcommand("run", "run a configured experiment");
  cmd_run->add_option("--config", run_config, "experiment JSON file")->required();
  cmd_run->add_option("--out", run_out, "CSV output ('-' for stdout)");
  std::string check_name, check_config, check_plot;
  auto* cmd_check = cmd_exp->add_subcommand(
      "check", "statistical verdict over a configured experiment");
  cmd_check->add_option("--name", check_name, "verdict name")->required();
  cmd_check->add_option("--config", check_config, "experiment JSON file")
      ->required();
  cmd_check->add_option("--plot", check_plot,
                        "write a gnuplot script of the per-cell medians");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_stats) {
      std::unique_ptr<dw_degseq, decltype(&dw_degseq_free)> d(make_seq(stats_seq),
                                                              dw_degseq_free);
      CStr out;
      if (dw_degseq_stats_json(d.get(), stats_rho, stats_mu, &out.p) != DW_OK)
        die_status(DW_ERR_INVALID_ARGUMENT);
      std::cout << out.str() << '\n';
    } else if (*cmd_gen) {
      std::unique_ptr<dw_degseq, decltype(&dw_degseq_free)> d(make_seq(gen_seq),
                                                              dw_degseq_free);
      dw_sample_opts opts{gen_seed, mode_code(gen_mode), gen_max_tries,
                          gen_burn_in};
      dw_graph* g = nullptr;
      CStr info;
      dw_status st = dw_sample(d.get(), &opts, &g, gen_verbose ? &info.p : nullptr);
      if (st != DW_OK) die_status(st);
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> gp(g, dw_graph_free);
      CStr text;
      if (dw_graph_text(g, &text.p) != DW_OK) die_status(DW_ERR_INTERNAL);
      write_out(gen_out, text.str());
      if (gen_verbose) std::cerr << info.str() << '\n';
    } else if (*cmd_summary) {
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> g(read_graph(summary_in),
                                                            dw_graph_free);
      CStr out;
      if (dw_graph_summary_json(g.get(), &out.p) != DW_OK)
        die_status(DW_ERR_INTERNAL);
      std::cout << out.str() << '\n';
    } else if (*cmd_reduce) {
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> g(read_graph(reduce_in),
                                                            dw_graph_free);
      CStr out;
      dw_status st = reduce_json ? dw_reduce_json(g.get(), &out.p)
                                 : dw_reduce_text(g.get(), &out.p);
      if (st != DW_OK) die_status(st);
      write_out(reduce_out, out.str());
    } else if (*cmd_recon) {
      std::string text = slurp(recon_in);
      dw_graph* g = nullptr;
      if (dw_reconstruct(text.c_str(), &g) != DW_OK) die_status(DW_ERR_PARSE);
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> gp(g, dw_graph_free);
      CStr out;
      if (dw_graph_text(g, &out.p) != DW_OK) die_status(DW_ERR_INTERNAL);
      write_out(recon_out, out.str());
    } else if (*cmd_kernel) {
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> g(read_graph(kernel_in),
                                                            dw_graph_free);
      CStr out;
      if (dw_kernel_json(g.get(), &out.p) != DW_OK)
        die_status(DW_ERR_INVALID_ARGUMENT);
      write_out(kernel_out, out.str());
    } else if (*cmd_walk) {
      std::unique_ptr<dw_graph, decltype(&dw_graph_free)> g(read_graph(walk_in),
                                                            dw_graph_free);
      dw_walk_opts opts{walk_seed,        walk_mix_cutoff, walk_starts,
                        walk_cond_cutoff, walk_diam_cutoff, walk_no_profile ? 0 : 1};
      CStr out;
      dw_status st = walk_csv ? dw_walk_csv(g.get(), &opts, &out.p)
                              : dw_walk_json(g.get(), &opts, &out.p);
      if (st != DW_OK) die_status(st);
      write_out(walk_out, out.str());
    } else if (*cmd_cycles) {
      double log_value = 0.0;
      if (dw_cycle_count(cycles_t, nullptr, &log_value) != DW_OK)
        die_status(DW_ERR_TOO_LARGE);
      nlohmann::json j{{"t", cycles_t}, {"log", log_value}};
      CStr dec;
      if (dw_cycle_count(cycles_t, &dec.p, nullptr) == DW_OK)
        j["count"] = dec.str();
      if (cycles_ratio) {
        double r = 0.0;
        if (dw_cycle_ratio(cycles_t, &r) != DW_OK) die_status(DW_ERR_INVALID_ARGUMENT);
        j["ratio"] = r;
      }
      std::cout << j.dump(2) << '\n';
    } else if (*cmd_run) {
      std::string config = slurp(run_config);
      if (run_out == "-") {
        CStr csv;
        if (dw_experiment_run(config.c_str(), &csv.p) != DW_OK)
          die_status(DW_ERR_INVALID_ARGUMENT);
        std::cout << csv.str();
      } else {
        if (dw_experiment_run_to_file(config.c_str(), run_out.c_str()) != DW_OK)
          die_status(DW_ERR_IO);
      }
    } else if (*cmd_check) {
      std::string config = slurp(check_config);
      CStr verdict;
      if (dw_experiment_check(check_name.c_str(), config.c_str(), &verdict.p) !=
          DW_OK)
        die_status(DW_ERR_INVALID_ARGUMENT);
      std::cout << verdict.str() << '\n';
      nlohmann::json j = nlohmann::json::parse(verdict.str());
      if (!check_plot.empty() && j.contains("cells")) {
        std::string gp = "set logscale xy\nset key left top\nplot '-' using 1:2 "
                         "with linespoints title '" + j.value("column",
                         std::string("median")) + "'\n";
        for (const auto& c : j["cells"])
          if (c.contains("x") && c.contains("median"))
            gp += std::to_string(c["x"].get<double>()) + " " +
                  std::to_string(c["median"].get<double>()) + "\n";
        gp += "e\n";
        write_out(check_plot, gp);
      }
      return j.value("pass", false) ? 0 : 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code == 0 ? 2 : e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
