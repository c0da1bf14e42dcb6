#include "reduce.hpp"

#include <algorithm>
#include <stdexcept>

namespace degwalk {

namespace {

struct EdgeAdj {
  std::vector<std::vector<std::pair<int, int>>> nbr;  // (to, edge id)

  EdgeAdj(int64_t n, const std::vector<std::pair<int, int>>& edges) : nbr(n) {
    for (size_t e = 0; e < edges.size(); ++e) {
      auto [u, v] = edges[e];
      nbr[u].emplace_back(v, static_cast<int>(e));
      nbr[v].emplace_back(u, static_cast<int>(e));
    }
  }
};

// Shared contraction pass: peels off bare-cycle components, then walks
// maximal degree-2 paths between the remaining branch and leaf vertices.
struct Contraction {
  std::vector<std::vector<int>> cycles;
  std::vector<int> keep;  // vertices with degree not in {0, 2}
  std::vector<ReducedEdge> edges;
};

Contraction contract_paths(int64_t n, const std::vector<std::pair<int, int>>& edge_list,
                           const std::vector<int64_t>& deg) {
  EdgeAdj adj(n, edge_list);
  Contraction out;
  std::vector<char> used(edge_list.size(), 0);
  std::vector<char> on_cycle_comp(n, 0);

  // Bare cycle components: every vertex of the component has degree 2.
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int64_t s = 0; s < n; ++s) {
    if (seen[s] || deg[s] == 0) continue;
    stack.assign(1, static_cast<int>(s));
    seen[s] = 1;
    std::vector<int> comp;
    bool all_two = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      if (deg[u] != 2) all_two = false;
      for (auto [w, e] : adj.nbr[u]) {
        (void)e;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (!all_two) continue;
    for (int v : comp) on_cycle_comp[v] = 1;
    // Order the component around the cycle starting from its least vertex.
    int start = *std::min_element(comp.begin(), comp.end());
    std::vector<int> order{start};
    int prev_edge = -1, cur = start;
    do {
      bool advanced = false;
      for (auto [w, e] : adj.nbr[cur]) {
        if (e == prev_edge || used[e]) continue;
        used[e] = 1;
        prev_edge = e;
        cur = w;
        advanced = true;
        break;
      }
      if (!advanced) throw std::logic_error("cycle walk failed to advance");
      if (cur != start) order.push_back(cur);
    } while (cur != start);
    out.cycles.push_back(std::move(order));
  }

  for (int64_t u = 0; u < n; ++u)
    if (deg[u] >= 1 && deg[u] != 2 && !on_cycle_comp[u])
      out.keep.push_back(static_cast<int>(u));

  for (int u : out.keep) {
    for (auto [w, e] : adj.nbr[u]) {
      if (used[e]) continue;
      used[e] = 1;
      ReducedEdge re;
      re.u = u;
      int prev_edge = e, cur = w;
      while (deg[cur] == 2) {
        re.internal.push_back(cur);
        bool advanced = false;
        for (auto [w2, e2] : adj.nbr[cur]) {
          if (e2 == prev_edge) continue;
          used[e2] = 1;
          prev_edge = e2;
          cur = w2;
          advanced = true;
          break;
        }
        if (!advanced) throw std::logic_error("path walk failed to advance");
      }
      re.v = cur;
      size_t k = re.internal.size();
      re.colour = (k == 0) ? EdgeColour::kRed
                           : (k == 1 ? EdgeColour::kYellow : EdgeColour::kGreen);
      out.edges.push_back(std::move(re));
    }
  }
  return out;
}

}  // namespace

Multigraph ColouredReduction::j_graph() const {
  std::vector<int> local(n, -1);
  for (size_t i = 0; i < j_vertices.size(); ++i) local[j_vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  es.reserve(edges.size());
  for (const auto& e : edges) es.emplace_back(local[e.u], local[e.v]);
  return Multigraph(static_cast<int64_t>(j_vertices.size()), std::move(es));
}

ColouredReduction coloured_reduction(const Multigraph& g) {
  if (!g.is_simple())
    throw std::invalid_argument("coloured reduction is defined for simple graphs");
  ColouredReduction r;
  r.n = g.n();
  r.m = g.m();
  auto deg = g.degree_vector();
  Contraction c = contract_paths(g.n(), g.edges(), deg);
  r.cycles = std::move(c.cycles);
  r.j_vertices = std::move(c.keep);
  r.edges = std::move(c.edges);
  return r;
}

Multigraph reconstruct(const ColouredReduction& r) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& cyc : r.cycles) {
    if (cyc.size() < 3)
      throw std::invalid_argument("cycle component shorter than 3");
    for (size_t i = 0; i < cyc.size(); ++i)
      edges.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  for (const auto& e : r.edges) {
    size_t k = e.internal.size();
    bool ok = (e.colour == EdgeColour::kRed && k == 0) ||
              (e.colour == EdgeColour::kYellow && k == 1) ||
              (e.colour == EdgeColour::kGreen && k >= 2);
    if (!ok) throw std::invalid_argument("edge colour inconsistent with its length");
    int prev = e.u;
    for (int w : e.internal) {
      edges.emplace_back(prev, w);
      prev = w;
    }
    edges.emplace_back(prev, e.v);
  }
  return Multigraph(r.n, std::move(edges));
}

ColourHistogram colour_histogram(const ColouredReduction& r) {
  ColourHistogram h;
  for (const auto& e : r.edges) {
    switch (e.colour) {
      case EdgeColour::kRed:
        ++h.red;
        break;
      case EdgeColour::kYellow:
        ++h.yellow;
        break;
      case EdgeColour::kGreen:
        ++h.green;
        ++h.green_by_length[static_cast<int64_t>(e.internal.size()) + 1];
        break;
    }
  }
  return h;
}

Multigraph KernelDecomposition::kernel_graph() const {
  std::vector<int> local(n, -1);
  for (size_t i = 0; i < kernel_vertices.size(); ++i)
    local[kernel_vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  es.reserve(kernel_edges.size());
  for (const auto& e : kernel_edges) es.emplace_back(local[e.u], local[e.v]);
  return Multigraph(static_cast<int64_t>(kernel_vertices.size()), std::move(es));
}

KernelDecomposition core_and_kernel(const Multigraph& g) {
  if (!g.is_simple())
    throw std::invalid_argument("core decomposition is defined for simple graphs");
  KernelDecomposition out;
  out.n = g.n();
  const auto& edge_list = g.edges();
  EdgeAdj adj(g.n(), edge_list);

  // Peel degree <= 1 vertices; record the live edge each removal follows.
  auto deg = g.degree_vector();
  std::vector<char> removed(g.n(), 0);
  std::vector<char> edge_dead(edge_list.size(), 0);
  std::vector<int> parent(g.n(), -1);       // vertex the peel edge leads to
  std::vector<int> parent_edge(g.n(), -1);  // its edge id
  std::vector<int> queue;
  for (int64_t v = 0; v < g.n(); ++v)
    if (deg[v] <= 1 && g.degree(static_cast<int>(v)) > 0)
      queue.push_back(static_cast<int>(v));
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (removed[v]) continue;
    removed[v] = 1;
    for (auto [w, e] : adj.nbr[v]) {
      if (edge_dead[e] || removed[w]) continue;
      edge_dead[e] = 1;
      parent[v] = w;
      parent_edge[v] = e;
      if (--deg[w] <= 1) queue.push_back(w);
    }
  }

  // Host of each removed vertex: the core vertex its parent chain reaches,
  // or -1 inside an all-tree component.
  std::vector<int> host(g.n(), -2);
  std::vector<int> chain;
  for (int64_t v0 = 0; v0 < g.n(); ++v0) {
    if (!removed[v0] || host[v0] != -2) continue;
    chain.clear();
    int v = static_cast<int>(v0);
    while (v != -1 && removed[v] && host[v] == -2) {
      chain.push_back(v);
      v = parent[v];
    }
    int h = (v == -1) ? -1 : (removed[v] ? host[v] : v);
    for (int u : chain) host[u] = h;
  }

  // Decorations grouped by core root; tree components grouped by component.
  std::vector<int> deco_index(g.n(), -1);
  for (int64_t v = 0; v < g.n(); ++v) {
    if (!removed[v] || host[v] < 0 || parent_edge[v] < 0) continue;
    int root = host[v];
    if (deco_index[root] < 0) {
      deco_index[root] = static_cast<int>(out.decorations.size());
      out.decorations.push_back(Decoration{root, {}});
    }
    out.decorations[deco_index[root]].edges.push_back(edge_list[parent_edge[v]]);
  }
  {
    std::vector<int> comp_index(g.n(), -1);
    for (const auto& comp : g.components()) {
      bool all_removed = true;
      for (int v : comp)
        if (!removed[v]) {
          all_removed = false;
          break;
        }
      if (!all_removed || g.degree(comp[0]) == 0) continue;
      int idx = static_cast<int>(out.acyclic.size());
      out.acyclic.emplace_back();
      for (int v : comp) comp_index[v] = idx;
    }
    for (size_t e = 0; e < edge_list.size(); ++e) {
      int u = edge_list[e].first;
      if (comp_index[u] >= 0) out.acyclic[comp_index[u]].push_back(edge_list[e]);
    }
  }

  // Core subgraph and its homeomorphic reduction.
  std::vector<std::pair<int, int>> core_edges;
  for (size_t e = 0; e < edge_list.size(); ++e) {
    auto [u, v] = edge_list[e];
    if (!removed[u] && !removed[v]) core_edges.push_back(edge_list[e]);
  }
  std::vector<int64_t> core_deg(g.n(), 0);
  for (const auto& [u, v] : core_edges) {
    core_deg[u]++;
    core_deg[v]++;
  }
  Contraction c = contract_paths(g.n(), core_edges, core_deg);
  out.core_cycles = std::move(c.cycles);
  out.kernel_vertices = std::move(c.keep);
  for (auto& e : c.edges)
    out.kernel_edges.push_back(KernelEdge{e.u, e.v, std::move(e.internal)});
  return out;
}

Multigraph reassemble(const KernelDecomposition& k) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& cyc : k.core_cycles) {
    if (cyc.size() < 3)
      throw std::invalid_argument("core cycle shorter than 3");
    for (size_t i = 0; i < cyc.size(); ++i)
      edges.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  for (const auto& e : k.kernel_edges) {
    int prev = e.u;
    for (int w : e.internal) {
      edges.emplace_back(prev, w);
      prev = w;
    }
    edges.emplace_back(prev, e.v);
  }
  for (const auto& d : k.decorations)
    edges.insert(edges.end(), d.edges.begin(), d.edges.end());
  for (const auto& t : k.acyclic) edges.insert(edges.end(), t.begin(), t.end());
  return Multigraph(k.n, std::move(edges));
}

}  // namespace degwalk
