#include "multigraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace degwalk {

Multigraph::Multigraph(int64_t n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  offsets_.assign(n_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    offsets_[u + 1]++;
    offsets_[v + 1]++;
  }
  for (int64_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adj_.assign(offsets_[n_], 0);
  std::vector<int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
}

Multigraph Multigraph::from_text(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  int64_t n = 0;
  std::istringstream in(text);
  std::string line;
  int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                  ": expected 'u v'");
    if (u < 1 || v < 1)
      throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                  ": labels are 1-based");
    n = std::max<int64_t>(n, std::max(u, v));
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  return Multigraph(n, std::move(edges));
}

std::string Multigraph::to_text() const {
  std::string out;
  for (const auto& [u, v] : edges_) {
    int a = std::min(u, v), b = std::max(u, v);
    out += std::to_string(a + 1);
    out.push_back(' ');
    out += std::to_string(b + 1);
    out.push_back('\n');
  }
  return out;
}

bool Multigraph::is_simple() const {
  std::vector<std::pair<int, int>> norm;
  norm.reserve(edges_.size());
  for (const auto& [u, v] : edges_) {
    if (u == v) return false;
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  return std::adjacent_find(norm.begin(), norm.end()) == norm.end();
}

std::vector<int64_t> Multigraph::degree_vector() const {
  std::vector<int64_t> d(n_);
  for (int64_t v = 0; v < n_; ++v) d[v] = degree(static_cast<int>(v));
  return d;
}

std::vector<std::vector<int>> Multigraph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(n_, 0);
  std::vector<int> queue;
  for (int64_t s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    queue.assign(1, static_cast<int>(s));
    seen[s] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (const int* p = adj_begin(u); p != adj_end(u); ++p) {
        if (!seen[*p]) {
          seen[*p] = 1;
          queue.push_back(*p);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    out.push_back(queue);
  }
  return out;
}

std::vector<GraphPiece> Multigraph::split_components() const {
  std::vector<GraphPiece> pieces;
  auto comps = components();
  std::vector<int> local(n_, -1);
  for (auto& comp : comps) {
    for (size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    std::vector<char> mark(n_, 0);
    for (int v : comp) mark[v] = 1;
    for (const auto& [u, v] : edges_)
      if (mark[u]) edges.emplace_back(local[u], local[v]);
    pieces.push_back(GraphPiece{Multigraph(static_cast<int64_t>(comp.size()), std::move(edges)),
                           comp});
  }
  return pieces;
}

std::vector<int64_t> Multigraph::bfs_distances(int source) const {
  if (source < 0 || source >= n_) throw std::invalid_argument("bad BFS source");
  std::vector<int64_t> dist(n_, -1);
  std::vector<int> queue;
  queue.reserve(n_);
  queue.push_back(source);
  dist[source] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (const int* p = adj_begin(u); p != adj_end(u); ++p) {
      if (dist[*p] < 0) {
        dist[*p] = dist[u] + 1;
        queue.push_back(*p);
      }
    }
  }
  return dist;
}

SetStats set_stats(const Multigraph& g, const std::vector<int>& s) {
  if (s.empty()) throw std::invalid_argument("set_stats: empty set");
  std::vector<char> in(g.n(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("set_stats: vertex out of range");
    if (in[v]) throw std::invalid_argument("set_stats: duplicate vertex");
    in[v] = 1;
  }
  SetStats st;
  for (int v : s) st.d_s += g.degree(v);
  int64_t internal = 0;
  for (const auto& [u, v] : g.edges())
    if (in[u] && in[v]) ++internal;
  st.out_s = st.d_s - 2 * internal;
  st.ex_s = st.d_s - 2 * static_cast<int64_t>(s.size()) + 2;
  if (st.d_s == 0) throw std::invalid_argument("set_stats: zero degree mass");
  st.cond = static_cast<double>(st.out_s) / static_cast<double>(st.d_s);
  return st;
}

int64_t diameter_exact(const Multigraph& comp) {
  int64_t best = 0;
  for (int v = 0; v < comp.n(); ++v) {
    auto dist = comp.bfs_distances(v);
    for (int64_t d : dist) {
      if (d < 0) throw std::invalid_argument("diameter_exact: graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

int64_t diameter_lower_bound(const Multigraph& comp) {
  if (comp.n() == 0) return 0;
  int start = 0;
  int64_t best = 0;
  for (int round = 0; round < 4; ++round) {
    auto dist = comp.bfs_distances(start);
    int far = start;
    int64_t far_d = 0;
    for (int v = 0; v < comp.n(); ++v) {
      if (dist[v] < 0) throw std::invalid_argument("diameter bound: graph is disconnected");
      if (dist[v] > far_d) {
        far_d = dist[v];
        far = v;
      }
    }
    if (far_d <= best) break;
    best = far_d;
    start = far;
  }
  return best;
}

namespace {

struct MaskGraph {
  int n = 0;
  std::vector<int64_t> deg;
  std::vector<uint64_t> nbr_mask;           // neighbours, self excluded
  std::vector<std::vector<int>> nbr_list;   // with multiplicity, loops excluded
  std::vector<int64_t> loops;

  explicit MaskGraph(const Multigraph& g)
      : n(static_cast<int>(g.n())), deg(g.n()), nbr_mask(g.n(), 0),
        nbr_list(g.n()), loops(g.n(), 0) {
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    for (const auto& [u, v] : g.edges()) {
      if (u == v) {
        loops[u]++;
        continue;
      }
      nbr_mask[u] |= uint64_t{1} << v;
      nbr_mask[v] |= uint64_t{1} << u;
      nbr_list[u].push_back(v);
      nbr_list[v].push_back(u);
    }
  }

  int64_t edges_into(int u, uint64_t s) const {
    int64_t c = 0;
    for (int w : nbr_list[u])
      if (s & (uint64_t{1} << w)) ++c;
    return c;
  }
};

struct CondSearch {
  const MaskGraph& mg;
  int64_t lo2;  // window test: 2*d(S) >= x, i.e. 2*dS >= lo2
  int64_t hi;
  uint64_t budget;
  uint64_t visited = 0;
  double best = std::numeric_limits<double>::infinity();

  void rec(uint64_t s, uint64_t ext, uint64_t banned, int64_t ds, int64_t inside) {
    if (++visited > budget)
      throw std::length_error("conductance enumeration budget exceeded");
    if (2 * ds >= lo2 && ds <= hi) {
      double c = static_cast<double>(ds - 2 * inside) / static_cast<double>(ds);
      best = std::min(best, c);
    }
    uint64_t todo = ext;
    while (todo) {
      int u = std::countr_zero(todo);
      uint64_t ubit = uint64_t{1} << u;
      todo &= todo - 1;
      int64_t ds2 = ds + mg.deg[u];
      if (ds2 <= hi) {
        uint64_t child_ext = todo | (mg.nbr_mask[u] & ~(s | banned | ubit | todo));
        rec(s | ubit, child_ext, banned, ds2, inside + mg.edges_into(u, s) + mg.loops[u]);
      }
      banned |= ubit;
    }
  }
};

}  // namespace

double cond_profile_exact(const Multigraph& comp, int64_t x, uint64_t budget) {
  if (x < 1) throw std::invalid_argument("conductance scale must be >= 1");
  if (comp.n() > 64)
    throw std::length_error("exact conductance needs a component with <= 64 vertices");
  MaskGraph mg(comp);
  int64_t hi = std::min(x, comp.degree_mass() / 2);
  CondSearch search{mg, x, hi, budget};
  for (int v = 0; v < mg.n; ++v) {
    uint64_t vbit = uint64_t{1} << v;
    uint64_t banned = vbit - 1;  // roots below v own their sets already
    if (mg.deg[v] > hi) continue;
    search.rec(vbit, mg.nbr_mask[v] & ~banned, banned, mg.deg[v], mg.loops[v]);
  }
  return search.best;
}

namespace {

// Sweep prefixes of a BFS order from each start. Prefixes are connected and
// include every BFS ball, so the minimum over them upper-bounds the profile.
void sweep_from(const Multigraph& comp, int start, const std::vector<int64_t>& xs,
                std::vector<double>& mins) {
  const int64_t n = comp.n();
  const int64_t half_mass = comp.degree_mass() / 2;
  std::vector<int64_t> pos(n, -1);
  std::vector<int> order;
  order.reserve(n);
  order.push_back(start);
  pos[start] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    int u = order[head];
    for (const int* p = comp.adj_begin(u); p != comp.adj_end(u); ++p) {
      if (pos[*p] < 0) {
        pos[*p] = static_cast<int64_t>(order.size());
        order.push_back(*p);
      }
    }
  }
  std::vector<int64_t> dmass(order.size());
  std::vector<double> cond(order.size());
  int64_t ds = 0, inside = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    int u = order[k];
    int64_t into = 0, self = 0;
    for (const int* p = comp.adj_begin(u); p != comp.adj_end(u); ++p) {
      if (*p == u)
        ++self;
      else if (pos[*p] < static_cast<int64_t>(k))
        ++into;
    }
    ds += comp.degree(u);
    inside += into + self / 2;
    dmass[k] = ds;
    cond[k] = static_cast<double>(ds - 2 * inside) / static_cast<double>(ds);
  }
  for (size_t xi = 0; xi < xs.size(); ++xi) {
    int64_t x = xs[xi];
    int64_t hi = std::min(x, half_mass);
    if (2 * hi < x) continue;  // window empty
    // Window: 2*d >= x and d <= hi.
    auto first = std::lower_bound(dmass.begin(), dmass.end(), (x + 1) / 2);
    auto last = std::upper_bound(dmass.begin(), dmass.end(), hi);
    for (auto it = first; it < last; ++it)
      mins[xi] = std::min(mins[xi], cond[it - dmass.begin()]);
  }
}

}  // namespace

std::vector<double> cond_profile_heuristic_all(const Multigraph& comp,
                                               const std::vector<int64_t>& xs) {
  for (int64_t x : xs)
    if (x < 1) throw std::invalid_argument("conductance scale must be >= 1");
  std::vector<double> mins(xs.size(), std::numeric_limits<double>::infinity());
  for (int v = 0; v < comp.n(); ++v) sweep_from(comp, v, xs, mins);
  return mins;
}

double cond_profile_heuristic(const Multigraph& comp, int64_t x) {
  return cond_profile_heuristic_all(comp, {x})[0];
}

int64_t cycle_component_count(const Multigraph& g) {
  int64_t count = 0;
  for (const auto& comp : g.components()) {
    bool all_two = true;
    for (int v : comp)
      if (g.degree(v) != 2) {
        all_two = false;
        break;
      }
    if (all_two) ++count;
  }
  return count;
}

int64_t multicycle_component_count(const Multigraph& g) {
  int64_t count = 0;
  for (const auto& comp : g.components()) {
    int64_t mass = 0;
    for (int v : comp) mass += g.degree(v);
    int64_t m_c = mass / 2;
    if (m_c >= static_cast<int64_t>(comp.size()) + 1) ++count;
  }
  return count;
}

}  // namespace degwalk
