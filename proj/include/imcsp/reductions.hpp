#pragma once

// Instance transformations behind the hardness results, with decoders that
// turn good assignments back into source certificates, and seeded generators
// for the two source problems.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "imcsp/core.hpp"

namespace imcsp {

struct ReducedInstance {
  Instance instance;
  ProposedSolution proposal;
};

// ---- source problems -------------------------------------------------------

struct DirectedEdge {
  int u;
  int v;
};

/// DAG with s, t, l, a pairing of the edges and 2l arc-disjoint s-t paths
/// (lists of edge indices) that together use every edge exactly once.
struct PairedMinCutInstance {
  int num_vertices = 0;
  int s = 0;
  int t = 1;
  int l = 0;
  std::vector<DirectedEdge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> paths;

  void validate() const;
};

/// Removing Z leaves no directed s-t path.
bool is_st_cut(const PairedMinCutInstance& src, const std::vector<std::size_t>& cut);
/// Number of pairs with at least one edge in Z.
std::size_t pairs_touched(const PairedMinCutInstance& src, const std::vector<std::size_t>& cut);

struct MulticoloredISInstance {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> parts;

  int l() const { return static_cast<int>(parts.size()); }
  /// Parts nonempty, disjoint and covering; optionally no isolated vertex.
  void validate(bool forbid_isolated = true) const;
};

/// One vertex per part, pairwise non-adjacent.
bool is_multicolored_independent_set(const MulticoloredISInstance& src, const std::vector<int>& set);

// ---- reductions ------------------------------------------------------------

/// P = every clause, budget k.
ReducedInstance mincsp_to_improve(const Instance& instance, int k);

/// Every AE clause gains a fresh variable equal to its first scope variable.
/// Accepts mixed arities; the result has every arity raised by one.
ReducedInstance pad_ae(const Instance& instance, const ProposedSolution& proposal);

/// Pads shorter AE clauses until every clause has arity r.
ReducedInstance lift_ae_union(const Instance& instance, const ProposedSolution& proposal, int r);

/// Edge clauses x_u = x_v (in P), one 4AE clause per pair, l+1 copies of
/// x_s != x_t; k = 4l+1. Variable i is vertex i.
ReducedInstance paired_cut_to_4ae(const PairedMinCutInstance& src);

/// 5 copies per edge clause, 2 copies of each of the four 3AE clauses per
/// pair, 2l+1 copies of x_s != x_t; k = 20l+1.
ReducedInstance paired_cut_to_3ae(const PairedMinCutInstance& src);

/// Unit clause not-x_u per vertex, 2 copies of x_u or x_v per edge and per
/// same-part pair (in P); k = l. Throws on isolated vertices.
ReducedInstance mcis_to_2sat(const MulticoloredISInstance& src);

/// 1- and 2-clauses to SymRel(r, {r-1, r}) clauses over r-2 shared fresh
/// variables that occur only positively. A unit clause repeats its variable.
ReducedInstance twosat_to_le1(const Instance& instance, const ProposedSolution& proposal, int r);

// ---- decoders --------------------------------------------------------------

/// Z = {(u,v) : x_u != x_v} when the assignment beats |P|; validated strictly.
std::optional<std::vector<std::size_t>> decode_paired_cut(const Assignment& assignment,
                                                         const PairedMinCutInstance& src,
                                                         const ReducedInstance& reduced);

/// Zero set of the assignment when its value reaches |P| + l; validated strictly.
std::optional<std::vector<int>> decode_mcis(const Assignment& assignment,
                                            const MulticoloredISInstance& src,
                                            const ReducedInstance& reduced);

// ---- generators ------------------------------------------------------------

struct PairedCutParams {
  int l = 1;
  int internal_vertices = 4;
  int max_path_length = 2;  // internal vertices per path
};

/// 2l increasing-rank paths through a shared vertex order, random pairing.
/// l = 1 with max_path_length = 0 is the two-parallel-edge toy.
PairedMinCutInstance generate_paired_cut(std::uint64_t seed, const PairedCutParams& params);

struct McisParams {
  int l = 2;
  int vertices = 4;
  double edge_probability = 0.4;
};

/// Random cross-part edges; isolated vertices get one extra edge.
MulticoloredISInstance generate_mcis(std::uint64_t seed, const McisParams& params);

}  // namespace imcsp
