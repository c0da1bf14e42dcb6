#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "multigraph.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "walk.hpp"

using degwalk::Multigraph;

namespace {

Multigraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Multigraph(n, edges);
}

Multigraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Multigraph(n, edges);
}

oracle::EdgeList to_oracle(const Multigraph& g) {
  oracle::EdgeList out;
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

Multigraph random_connected(int n, int extra, degwalk::Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<int>(rng.below(v)), v});
  for (int k = 0; k < extra; ++k) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u != v) edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return Multigraph(n, edges);
}

}  // namespace

TEST_CASE("lazy step and stationary law on a single edge") {
  Multigraph k2(2, {{0, 1}});
  auto pi = degwalk::stationary(k2);
  CHECK(pi[0] == doctest::Approx(0.5));
  std::vector<double> mu = {1.0, 0.0};
  auto one = degwalk::lazy_step(k2, mu);
  CHECK(one[0] == doctest::Approx(0.5));
  CHECK(one[1] == doctest::Approx(0.5));
  CHECK(degwalk::mixing_time_exact(k2) == 1);
}

TEST_CASE("loops keep their double weight in the walk") {
  // One loop at 0 plus edge 0-1: deg(0) = 3, deg(1) = 1.
  Multigraph g(2, {{0, 0}, {0, 1}});
  auto pi = degwalk::stationary(g);
  CHECK(pi[0] == doctest::Approx(0.75));
  std::vector<double> mu = {0.0, 1.0};
  auto one = degwalk::lazy_step(g, mu);
  CHECK(one[0] == doctest::Approx(0.5));
  CHECK(one[1] == doctest::Approx(0.5));
  // From 0: stay 1/2, loop traversals 1/2 * 2/3 back to 0, so only 1/6 leaks.
  std::vector<double> nu = {1.0, 0.0};
  auto two = degwalk::lazy_step(g, nu);
  CHECK(two[0] == doctest::Approx(5.0 / 6));
  CHECK(two[1] == doctest::Approx(1.0 / 6));
}

TEST_CASE("total variation distance") {
  CHECK(degwalk::tv_distance({0.5, 0.5}, {0.25, 0.75}) == doctest::Approx(0.25));
  CHECK(degwalk::tv_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("triangle mixes in one step") {
  CHECK(degwalk::mixing_time_exact(cycle_graph(3)) == 1);
}

TEST_CASE("complete graph on four vertices mixes in one step") {
  // After one lazy step: (1/2, 1/6, 1/6, 1/6); TV to uniform = 1/4 < 1/e.
  CHECK(degwalk::mixing_time_exact(complete_graph(4)) == 1);
}

TEST_CASE("exact mixing times match the dense-matrix oracle") {
  degwalk::Rng rng(301);
  for (int n : {4, 5, 6, 7, 8})
    CHECK(degwalk::mixing_time_exact(cycle_graph(n)) ==
          oracle::mixing_time(n, to_oracle(cycle_graph(n))));
  for (int rep = 0; rep < 20; ++rep) {
    int n = 3 + static_cast<int>(rng.below(6));
    auto g = random_connected(n, static_cast<int>(rng.below(4)), rng);
    CHECK(degwalk::mixing_time_exact(g) == oracle::mixing_time(n, to_oracle(g)));
  }
}

TEST_CASE("sampled mixing covers all starts on small components") {
  auto g = cycle_graph(9);
  degwalk::Rng rng(302);
  auto full = degwalk::mixing_time_sampled(g, 9, rng);
  CHECK(full.exact);
  CHECK(full.tau == degwalk::mixing_time_exact(g));
  auto part = degwalk::mixing_time_sampled(g, 3, rng);
  CHECK_FALSE(part.exact);
  CHECK(part.starts == 3);
  CHECK(part.tau <= full.tau);
  CHECK(part.tau == full.tau);  // vertex-transitive: every start agrees
}

TEST_CASE("mixing guard aborts runaway iterations") {
  CHECK_THROWS_AS(degwalk::mixing_time_from(cycle_graph(64), 0, 3),
                  std::runtime_error);
}

TEST_CASE("walk analysis of the 8-cycle against hand values") {
  degwalk::WalkOptions opt;
  auto rep = degwalk::analyze_walks(cycle_graph(8), opt);
  REQUIRE(rep.components.size() == 1);
  const auto& c = rep.components[0];
  CHECK(c.n == 8);
  CHECK(c.m == 8);
  CHECK(c.diameter == 4);
  CHECK(c.diameter_exact);
  CHECK(c.tau_exact);
  CHECK(c.tau == oracle::mixing_time(8, to_oracle(cycle_graph(8))));
  REQUIRE(c.profile.size() == 3);  // x = 2, 4, 8
  CHECK(c.profile[0].value == doctest::Approx(1.0));
  CHECK(c.profile[1].value == doctest::Approx(0.5));
  CHECK(c.profile[2].value == doctest::Approx(0.25));
  CHECK(c.inv_cond_sum == doctest::Approx(7.0));
  CHECK(c.inv_cond_sq_sum == doctest::Approx(21.0));
  CHECK(c.peres.lhs == doctest::Approx(static_cast<double>(c.tau)));
  CHECK(c.peres.rhs == doctest::Approx(8.0 * 4 * 8));
  CHECK(c.peres.pass);
  CHECK(c.diam_cond.rhs == doctest::Approx(14.0));
  CHECK(c.diam_cond.pass);
  CHECK(c.mix_cond.lhs == doctest::Approx(static_cast<double>(c.tau) / 21.0));
  CHECK(c.mix_cond.pass);
  CHECK_FALSE(c.mix_cond.trivial);
}

TEST_CASE("a lone edge yields a trivial profile but honest bounds") {
  degwalk::WalkOptions opt;
  auto rep = degwalk::analyze_walks(Multigraph(2, {{0, 1}}), opt);
  REQUIRE(rep.components.size() == 1);
  const auto& c = rep.components[0];
  CHECK(c.profile.empty());  // degree mass 2 admits no x = 2^j window
  CHECK(c.diam_cond.trivial);
  CHECK(c.diam_cond.pass);  // diameter 1 needs no conductance certificate
  CHECK(c.mix_cond.trivial);
  CHECK(c.mix_cond.pass);
  CHECK(c.peres.pass);
}

TEST_CASE("disconnected graphs are analyzed per component") {
  Multigraph g(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 3}});
  degwalk::WalkOptions opt;
  auto rep = degwalk::analyze_walks(g, opt);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].n == 3);
  CHECK(rep.components[1].n == 4);
  CHECK(rep.components[1].diameter == 2);
  CHECK(rep.n == 7);
  CHECK(rep.m == 7);
}

TEST_CASE("reports serialize to JSON and CSV") {
  auto report = degwalk::analyze_walks(cycle_graph(6), degwalk::WalkOptions{});
  auto j = nlohmann::json::parse(degwalk::walk_report_json(report));
  REQUIRE(j.contains("components"));
  CHECK(j["n"] == 6);
  CHECK(j["components"][0]["diameter"] == 3);
  std::string csv = degwalk::walk_report_csv(report);
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 2);  // header plus one component row
  CHECK(csv.find("diameter") != std::string::npos);
}

TEST_CASE("heuristic profile engages above the exact cutoff") {
  degwalk::WalkOptions opt;
  opt.exact_cond_cutoff = 4;  // force the sweep on an 8-vertex component
  auto rep = degwalk::analyze_walks(cycle_graph(8), opt);
  const auto& c = rep.components[0];
  REQUIRE(c.profile.size() == 3);
  for (const auto& entry : c.profile) CHECK_FALSE(entry.exact);
  // Sweeps from every vertex find the optimal arcs of a cycle.
  CHECK(c.profile[2].value == doctest::Approx(0.25));
}
