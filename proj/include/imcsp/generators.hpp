#pragma once

// Seeded random instances for tests and the `gen` command. Every generated
// proposal is built around a hidden assignment, so the promise holds.

#include <cstdint>

#include "imcsp/core.hpp"
#include "imcsp/cut_solver.hpp"
#include "imcsp/flow.hpp"

namespace imcsp {

struct AndParams {
  int max_arity = 3;
  int num_vars = 8;
  int num_clauses = 10;
  int k = 2;
};

struct GeneratedInstance {
  Instance instance;
  ProposedSolution proposal;
  Assignment hidden;  // an assignment within distance k of P
};

/// Conjunctions of 1..max_arity distinct literals; P is C(hidden) with up to k
/// memberships toggled.
GeneratedInstance generate_and_instance(std::uint64_t seed, const AndParams& params);

struct CutParams {
  int num_vertices = 6;
  int num_edges = 9;  // at least num_vertices - 1; a spanning tree comes first
  int k = 2;
  double loop_probability = 0.0;
};

struct GeneratedCut {
  CutInstance instance;
  Partition hidden;
};

/// Connected signed multigraph; P is C(hidden) with up to k memberships toggled.
GeneratedCut generate_cut_instance(std::uint64_t seed, const CutParams& params);

/// Homogeneous 2AE instance (clauses x = y and x != y) from a random graph.
GeneratedInstance generate_2ae_instance(std::uint64_t seed, const CutParams& params);

struct HypergraphParams {
  int num_vertices = 8;
  int num_hyperedges = 10;
  int max_edge_size = 3;
  int min_weight = -3;
  int max_weight = 3;
};

/// Hyperedges of 1..max_edge_size distinct vertices, uniform integer weights.
WeightedHypergraph generate_hypergraph(std::uint64_t seed, const HypergraphParams& params);

}  // namespace imcsp
