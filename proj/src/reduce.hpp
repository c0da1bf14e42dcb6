#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "multigraph.hpp"

namespace degwalk {

enum class EdgeColour { kRed, kYellow, kGreen };

// Edge of the reduced multigraph J: a maximal path of the input whose
// interior vertices all have degree 2. Red carries 0 interior vertices,
// yellow 1, green 2 or more. Length (edge count) is internal.size() + 1.
struct ReducedEdge {
  int u = 0, v = 0;
  EdgeColour colour = EdgeColour::kRed;
  std::vector<int> internal;  // interior vertices in path order from u to v
};

struct ColouredReduction {
  int64_t n = 0;  // vertex count of the reduced graph's preimage
  int64_t m = 0;
  std::vector<std::vector<int>> cycles;  // deleted cycle components, cyclic order
  std::vector<int> j_vertices;           // original labels, degree != 2
  std::vector<ReducedEdge> edges;

  // Compact view of J; vertex k corresponds to j_vertices[k].
  Multigraph j_graph() const;
};

struct ColourHistogram {
  int64_t red = 0, yellow = 0, green = 0;
  std::map<int64_t, int64_t> green_by_length;
};

// Deletes cycle components and contracts maximal degree-2 paths. The input
// must be simple; then J has no parallel red edges and no red or yellow
// loop, and |E(J)| = m - n2 where n2 counts degree-2 vertices.
ColouredReduction coloured_reduction(const Multigraph& g);

// Inverse of coloured_reduction up to labelled edge multisets.
Multigraph reconstruct(const ColouredReduction& r);

ColourHistogram colour_histogram(const ColouredReduction& r);

// Tree hanging off the core; edges include the attachment edge at root.
struct Decoration {
  int root = 0;
  std::vector<std::pair<int, int>> edges;
};

// Core: maximal subgraph of minimum degree 2 (iterated removal of degree
// <= 1 vertices). Kernel: homeomorphic reduction of the core, minimum
// degree 3 with loops counting twice. Cores of unicyclic components are
// bare cycles and sit outside the kernel.
struct KernelEdge {
  int u = 0, v = 0;
  std::vector<int> internal;  // core path interior, degree 2 in the core
};

struct KernelDecomposition {
  int64_t n = 0;
  std::vector<int> kernel_vertices;  // core degree >= 3, original labels
  std::vector<KernelEdge> kernel_edges;
  std::vector<std::vector<int>> core_cycles;  // bare cycles of the core
  std::vector<std::vector<std::pair<int, int>>> acyclic;  // tree components
  std::vector<Decoration> decorations;

  Multigraph kernel_graph() const;  // compact, follows kernel_vertices order
};

KernelDecomposition core_and_kernel(const Multigraph& g);

// Inverse of core_and_kernel up to labelled edge multisets.
Multigraph reassemble(const KernelDecomposition& k);

}  // namespace degwalk
