#include "imcsp/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1), level_(n), iter_(n) {}

  void add(int from, int to, Capacity cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  Capacity run(int s, int t) {
    Capacity total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (Capacity pushed = dfs(s, t, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    return total;
  }

  std::vector<std::uint8_t> reachable(int s) const {
    std::vector<std::uint8_t> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          stack.push_back(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct E {
    int to;
    int next;
    Capacity cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Capacity dfs(int u, int t, Capacity limit) {
    if (u == t) return limit;
    for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
      const int v = edges_[e].to;
      if (edges_[e].cap > 0 && level_[v] == level_[u] + 1) {
        const Capacity got = dfs(v, t, std::min(limit, edges_[e].cap));
        if (got > 0) {
          edges_[e].cap -= got;
          edges_[e ^ 1].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<E> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

MinCutResult max_flow_min_cut(const FlowNetwork& network) {
  const int n = network.num_vertices;
  if (network.source < 0 || network.source >= n || network.sink < 0 || network.sink >= n)
    fail(ErrorKind::Structural, "source or sink out of range");
  if (network.source == network.sink) fail(ErrorKind::Structural, "source equals sink");
  Dinic dinic(n);
  for (const auto& arc : network.arcs) {
    if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n)
      fail(ErrorKind::Structural, "arc endpoint out of range");
    if (arc.capacity < 0) fail(ErrorKind::Structural, "negative capacity");
    dinic.add(arc.from, arc.to, arc.capacity);
  }
  MinCutResult out;
  out.value = dinic.run(network.source, network.sink);
  out.in_source_side = dinic.reachable(network.source);
  return out;
}

void WeightedHypergraph::validate() const {
  if (num_vertices < 0) fail(ErrorKind::Structural, "negative vertex count");
  if (static_cast<int>(weights.size()) != num_vertices)
    fail(ErrorKind::Structural, "weight vector length differs from vertex count");
  for (const auto& e : hyperedges) {
    if (e.empty()) fail(ErrorKind::Structural, "empty hyperedge");
    for (int v : e)
      if (v < 0 || v >= num_vertices)
        fail(ErrorKind::Structural, "hyperedge vertex " + std::to_string(v) + " out of range");
  }
}

std::int64_t misvw_objective(const WeightedHypergraph& hypergraph,
                             const std::vector<std::uint8_t>& selected) {
  std::int64_t value = 0;
  for (const auto& e : hypergraph.hyperedges)
    if (std::all_of(e.begin(), e.end(), [&](int v) { return selected[v] != 0; })) ++value;
  for (int v = 0; v < hypergraph.num_vertices; ++v)
    if (selected[v]) value -= hypergraph.weights[v];
  return value;
}

// Closure network: hyperedges are profit-1 items requiring their vertices.
// Negative weights are profits, positive weights are costs. The source side of
// the residual-reachable cut is the inclusion-minimal optimal closure, which is
// also the lexicographically smallest optimal characteristic vector.
MisVwResult solve_mis_vw(const WeightedHypergraph& hypergraph) {
  hypergraph.validate();
  const int nv = hypergraph.num_vertices;
  const int ne = static_cast<int>(hypergraph.hyperedges.size());
  FlowNetwork net;
  net.num_vertices = 2 + nv + ne;
  net.source = 0;
  net.sink = 1;
  Capacity finite = ne;
  for (int w : hypergraph.weights) finite += std::abs(w);
  const Capacity inf = finite + 1;
  for (int v = 0; v < nv; ++v) {
    const int w = hypergraph.weights[v];
    if (w > 0) net.add_arc(2 + v, net.sink, w);
    if (w < 0) net.add_arc(net.source, 2 + v, -static_cast<Capacity>(w));
  }
  for (int e = 0; e < ne; ++e) {
    const int node = 2 + nv + e;
    net.add_arc(net.source, node, 1);
    for (int v : hypergraph.hyperedges[e]) net.add_arc(node, 2 + v, inf);
  }
  const auto cut = max_flow_min_cut(net);
  MisVwResult out;
  out.selected.assign(nv, 0);
  for (int v = 0; v < nv; ++v) out.selected[v] = cut.in_source_side[2 + v];
  out.objective = misvw_objective(hypergraph, out.selected);
  // total profit minus cut value must equal the evaluated objective
  Capacity profit = ne;
  for (int w : hypergraph.weights)
    if (w < 0) profit += -w;
  if (profit - cut.value != out.objective)
    fail(ErrorKind::Internal, "closure value disagrees with the evaluated objective");
  return out;
}

}  // namespace imcsp
