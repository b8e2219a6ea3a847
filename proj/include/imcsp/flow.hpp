#pragma once

// Integer max-flow (Dinic) and the maximum-weight-closure solver for the
// weighted hypergraph selection problem.

#include <cstdint>
#include <vector>

namespace imcsp {

using Capacity = std::int64_t;

struct Arc {
  int from;
  int to;
  Capacity capacity;
};

struct FlowNetwork {
  int num_vertices = 0;
  int source = 0;
  int sink = 1;
  std::vector<Arc> arcs;

  int add_vertex() { return num_vertices++; }
  void add_arc(int from, int to, Capacity capacity) { arcs.push_back({from, to, capacity}); }
  /// Two opposite arcs of the same capacity.
  void add_edge(int u, int v, Capacity capacity) {
    add_arc(u, v, capacity);
    add_arc(v, u, capacity);
  }
};

struct MinCutResult {
  Capacity value = 0;
  /// in_source_side[v] is 1 when v is reachable from the source in the final residual network.
  std::vector<std::uint8_t> in_source_side;
};

/// Throws on negative capacities, s == t or out-of-range endpoints.
MinCutResult max_flow_min_cut(const FlowNetwork& network);

struct WeightedHypergraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> hyperedges;
  std::vector<int> weights;

  void validate() const;
};

struct MisVwResult {
  std::vector<std::uint8_t> selected;  // characteristic vector of V_0
  std::int64_t objective = 0;
};

/// |E(H[V_0])| - w(V_0) for a given selection.
std::int64_t misvw_objective(const WeightedHypergraph& hypergraph,
                             const std::vector<std::uint8_t>& selected);

/// Exact maximizer; among optima returns the lexicographically smallest characteristic vector.
MisVwResult solve_mis_vw(const WeightedHypergraph& hypergraph);

}  // namespace imcsp
