#pragma once

// Exhaustive reference solvers. These stay deliberately simple; every solver in
// the library is tested against them.

#include <cstddef>
#include <optional>
#include <vector>

#include "imcsp/core.hpp"
#include "imcsp/cut_solver.hpp"
#include "imcsp/flow.hpp"
#include "imcsp/reductions.hpp"

namespace imcsp {

inline constexpr int kOracleMaxVars = 24;
inline constexpr int kOracleMaxHypergraphVertices = 20;
inline constexpr int kOracleMaxGraphVertices = 20;

/// Witnesses are the lexicographically smallest optimal assignments.
struct OracleReport {
  std::size_t global_optimum = 0;
  Assignment global_witness;
  bool promise_holds = false;
  /// max |C(β)| over β with |C(β) Δ P| ≤ k; 0 when the promise fails.
  std::size_t neighborhood_optimum = 0;
  Assignment neighborhood_witness;
};

OracleReport brute_force_improve(const Instance& instance, const ProposedSolution& proposal);

struct MinCspReport {
  std::size_t min_cost = 0;
  Assignment witness;
};
MinCspReport brute_force_mincsp(const Instance& instance);

/// Every β with |C(β) Δ P| ≤ k and |C(β)| ≥ threshold, in lexicographic order.
std::vector<Assignment> good_neighbors(const Instance& instance, const ProposedSolution& proposal,
                                       std::size_t threshold);

MisVwResult brute_force_misvw(const WeightedHypergraph& hypergraph);

/// Over the 2^(n-1) partitions with vertex 0 in A; witnesses are partitions.
OracleReport brute_force_cut(const CutInstance& inst);

/// An s-t cut touching at most l pairs, as a sorted edge list, if one exists.
std::optional<std::vector<std::size_t>> brute_force_paired_cut(const PairedMinCutInstance& src);

/// A multicolored independent set, if one exists.
std::optional<std::vector<int>> brute_force_mcis(const MulticoloredISInstance& src);

}  // namespace imcsp
