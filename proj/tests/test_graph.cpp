#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "multigraph.hpp"
#include "oracles.hpp"
#include "rng.hpp"

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

// Uniform random connected simple graph on n vertices with m extra edges
// beyond a random spanning tree.
Multigraph random_connected(int n, int extra, degwalk::Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> missing;
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<int>(rng.below(v)), v});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::find(edges.begin(), edges.end(), std::make_pair(i, j)) ==
          edges.end())
        missing.push_back({i, j});
  for (int k = 0; k < extra && !missing.empty(); ++k) {
    size_t pick = rng.below(missing.size());
    edges.push_back(missing[pick]);
    missing.erase(missing.begin() + static_cast<long>(pick));
  }
  return Multigraph(n, edges);
}

oracle::EdgeList to_oracle(const Multigraph& g) {
  oracle::EdgeList out;
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

}  // namespace

TEST_CASE("text round trip with 1-based labels, comments and blank lines") {
  auto g = Multigraph::from_text("# a triangle\n1 2\n\n2 3\n3 1\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.is_simple());
  auto h = Multigraph::from_text(g.to_text());
  CHECK(h.n() == 3);
  CHECK(oracle::edge_key(to_oracle(h)) == oracle::edge_key(to_oracle(g)));
}

TEST_CASE("from_text rejects malformed lines with their line number") {
  bool threw = false;
  try {
    Multigraph::from_text("1 2\n2 x\n");
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(threw);
  CHECK_THROWS_AS(Multigraph::from_text("0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(Multigraph::from_text("1 2 3\n"), std::invalid_argument);
}

TEST_CASE("loops and parallel edges are recognized and weighted") {
  Multigraph g(2, {{0, 0}, {0, 1}});
  CHECK_FALSE(g.is_simple());
  CHECK(g.degree(0) == 3);  // a loop adds two to its endpoint
  CHECK(g.degree(1) == 1);
  CHECK(g.m() == 2);
  Multigraph p(2, {{0, 1}, {1, 0}});
  CHECK_FALSE(p.is_simple());
  CHECK(p.degree(0) == 2);
}

TEST_CASE("components and split_components keep original labels") {
  Multigraph g(7, {{0, 1}, {1, 2}, {2, 0}, {4, 5}, {5, 6}, {6, 4}});
  auto comps = g.components();
  REQUIRE(comps.size() == 3);  // vertex 3 is isolated
  CHECK(comps[0] == std::vector<int>{0, 1, 2});
  CHECK(comps[1] == std::vector<int>{3});
  CHECK(comps[2] == std::vector<int>{4, 5, 6});
  auto pieces = g.split_components();
  REQUIRE(pieces.size() == 3);
  CHECK(pieces[2].orig == std::vector<int>{4, 5, 6});
  CHECK(pieces[2].graph.m() == 3);
  CHECK(pieces[1].graph.n() == 1);
  CHECK(pieces[1].graph.m() == 0);
}

TEST_CASE("set statistics on an arc of a cycle") {
  auto g = cycle_graph(8);
  auto st = degwalk::set_stats(g, {0, 1});
  CHECK(st.d_s == 4);
  CHECK(st.out_s == 2);
  CHECK(st.ex_s == 2);  // d_s - 2|S| + 2
  CHECK(st.cond == doctest::Approx(0.5));
  CHECK_THROWS_AS(degwalk::set_stats(g, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(degwalk::set_stats(g, {}), std::invalid_argument);
}

TEST_CASE("exact diameter matches Floyd-Warshall") {
  CHECK(degwalk::diameter_exact(cycle_graph(8)) == 4);
  CHECK(degwalk::diameter_exact(complete_graph(5)) == 1);
  degwalk::Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 3 + static_cast<int>(rng.below(9));
    auto g = random_connected(n, static_cast<int>(rng.below(4)), rng);
    CHECK(degwalk::diameter_exact(g) == oracle::diameter(n, to_oracle(g)));
  }
  Multigraph disconnected(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(degwalk::diameter_exact(disconnected), std::invalid_argument);
}

TEST_CASE("diameter lower bound is sound and within a factor two") {
  degwalk::Rng rng(12);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 3 + static_cast<int>(rng.below(10));
    auto g = random_connected(n, static_cast<int>(rng.below(5)), rng);
    int64_t exact = degwalk::diameter_exact(g);
    int64_t lb = degwalk::diameter_lower_bound(g);
    CHECK(lb <= exact);
    CHECK(exact <= 2 * lb);  // any eccentricity is at least half the diameter
  }
  // Double sweep is exact on paths.
  std::vector<std::pair<int, int>> path;
  for (int i = 0; i < 9; ++i) path.push_back({i, i + 1});
  CHECK(degwalk::diameter_lower_bound(Multigraph(10, path)) == 9);
}

TEST_CASE("exact conductance profile matches subset enumeration") {
  auto c8 = cycle_graph(8);
  CHECK(degwalk::cond_profile_exact(c8, 2) == doctest::Approx(1.0));
  CHECK(degwalk::cond_profile_exact(c8, 4) == doctest::Approx(0.5));
  CHECK(degwalk::cond_profile_exact(c8, 8) == doctest::Approx(0.25));
  auto k4 = complete_graph(4);
  CHECK(degwalk::cond_profile_exact(k4, 6) == doctest::Approx(2.0 / 3.0));

  degwalk::Rng rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 3 + static_cast<int>(rng.below(8));
    auto g = random_connected(n, static_cast<int>(rng.below(6)), rng);
    for (int64_t x : {int64_t{2}, int64_t{4}, int64_t{8}, int64_t{16}}) {
      double got = degwalk::cond_profile_exact(g, x);
      double want = oracle::conductance(n, to_oracle(g), x);
      if (std::isinf(want)) {
        CHECK(std::isinf(got));
      } else {
        CHECK(got == doctest::Approx(want));
      }
    }
  }
}

TEST_CASE("heuristic conductance never undershoots the exact value") {
  degwalk::Rng rng(14);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 4 + static_cast<int>(rng.below(8));
    auto g = random_connected(n, static_cast<int>(rng.below(6)), rng);
    std::vector<int64_t> xs = {2, 4, 8, 16};
    auto heur = degwalk::cond_profile_heuristic_all(g, xs);
    for (size_t i = 0; i < xs.size(); ++i) {
      double exact = degwalk::cond_profile_exact(g, xs[i]);
      if (std::isinf(exact)) {
        CHECK(std::isinf(heur[i]));
      } else {
        CHECK(heur[i] >= exact - 1e-12);
      }
    }
  }
}

TEST_CASE("conductance enumeration respects its budget and size limits") {
  auto g = complete_graph(30);
  CHECK_THROWS_AS(degwalk::cond_profile_exact(g, 512, 100), std::length_error);
  Multigraph big(70, {{0, 1}});
  CHECK_THROWS_AS(degwalk::cond_profile_exact(big, 2), std::length_error);
}

TEST_CASE("cycle and multicycle component counts") {
  // Triangle, theta-like double cycle, path: one bare cycle, one multicycle.
  Multigraph g(10, {{0, 1},
                    {1, 2},
                    {2, 0},
                    {3, 4},
                    {4, 5},
                    {5, 3},
                    {3, 5},
                    {7, 8},
                    {8, 9}});
  CHECK(degwalk::cycle_component_count(g) == 1);
  CHECK(degwalk::multicycle_component_count(g) == 1);
  CHECK(degwalk::cycle_component_count(cycle_graph(5)) == 1);
  CHECK(degwalk::multicycle_component_count(complete_graph(4)) == 1);
  CHECK(degwalk::multicycle_component_count(cycle_graph(5)) == 0);
}
