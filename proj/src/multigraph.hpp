#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace degwalk {

struct SetStats {
  int64_t d_s = 0;    // degree mass of S, loops counted twice
  int64_t out_s = 0;  // edges with exactly one endpoint in S
  int64_t ex_s = 0;   // d_s - 2|S| + 2
  double cond = 0.0;  // out_s / d_s
};

// Undirected multigraph on vertices 0..n-1. Loops and parallel edges are
// allowed; a loop contributes 2 to its endpoint's degree and 1 to m().
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(int64_t n, std::vector<std::pair<int, int>> edges);

  // Text form: one edge per line, "u v", 1-based labels.
  static Multigraph from_text(const std::string& text);
  std::string to_text() const;

  int64_t n() const { return n_; }
  int64_t m() const { return static_cast<int64_t>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int64_t degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  int64_t degree_mass() const { return 2 * m(); }

  // Neighbour multiset of v as (neighbour, edge id); a loop occurs twice.
  const int* adj_begin(int v) const { return adj_.data() + offsets_[v]; }
  const int* adj_end(int v) const { return adj_.data() + offsets_[v + 1]; }

  bool is_simple() const;
  std::vector<int64_t> degree_vector() const;

  std::vector<std::vector<int>> components() const;
  std::vector<struct GraphPiece> split_components() const;

  // BFS distances from source; unreachable vertices get -1.
  std::vector<int64_t> bfs_distances(int source) const;

 private:
  int64_t n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int64_t> offsets_;
  std::vector<int> adj_;
};

// Connected component relabelled to 0..k-1, original ids kept alongside.
struct GraphPiece {
  Multigraph graph;
  std::vector<int> orig;
};

SetStats set_stats(const Multigraph& g, const std::vector<int>& s);

// Exact diameter by all-pairs BFS; the graph must be connected.
int64_t diameter_exact(const Multigraph& comp);
// Iterated double-sweep lower bound; exact on trees, never above the truth.
int64_t diameter_lower_bound(const Multigraph& comp);

// Minimum of out(S)/d(S) over connected S with x/2 <= d(S) <= min(x, d(V)/2).
// Returns +infinity when no connected set falls in the window.
// The exact version enumerates connected vertex subsets and requires
// n <= 64; enumeration stops with std::length_error past the budget.
double cond_profile_exact(const Multigraph& comp, int64_t x,
                          uint64_t budget = 400000000ULL);
// Upper bound from BFS balls and sweep prefixes grown from every vertex.
double cond_profile_heuristic(const Multigraph& comp, int64_t x);
std::vector<double> cond_profile_heuristic_all(const Multigraph& comp,
                                               const std::vector<int64_t>& xs);

// Number of components that are bare cycles: every degree 2, connected.
int64_t cycle_component_count(const Multigraph& g);
// Components with at least two independent cycles (edges >= vertices + 1).
int64_t multicycle_component_count(const Multigraph& g);

}  // namespace degwalk
