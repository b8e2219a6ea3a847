#pragma once

// Improving cuts in signed multigraphs (the 2AE case): translation from CSP
// instances, exact MinCSP(2AE) via iterative compression, the edge-to-vertex
// preprocessing, and the terminal recursion built on (k,q)-balanced cuts.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "imcsp/core.hpp"
#include "imcsp/options.hpp"

namespace imcsp {

using EdgeId = std::size_t;
/// side[v] == 0 puts v into A (or X), 1 into B (or Y).
using Partition = std::vector<std::uint8_t>;

struct CutEdge {
  EdgeId id;
  int u;
  int v;
  std::uint8_t type;  // 1: wants to be cut, 0: wants to stay uncut

  bool is_loop() const { return u == v; }
};

struct CutInstance {
  int num_vertices = 0;
  std::vector<CutEdge> edges;
  IdSet proposed;
  int k = 0;

  void validate() const;
  bool connected() const;
};

bool edge_satisfied(const CutEdge& e, const Partition& side);
IdSet satisfied_edges(const std::vector<CutEdge>& edges, const Partition& side);
std::size_t satisfied_edge_count(const std::vector<CutEdge>& edges, const Partition& side);
/// E(A,B); loops are never cut.
IdSet cut_edges(const std::vector<CutEdge>& edges, const Partition& side);

// ---- translation -----------------------------------------------------------

struct CutTranslation {
  std::vector<CutInstance> components;
  /// components[i] vertex j is variable component_vars[i][j]
  std::vector<std::vector<int>> component_vars;
  int num_vars = 0;

  Assignment lift(const std::vector<Partition>& partitions) const;
};

/// One instance per connected component of the variable graph; variables with
/// no clause are left out and get value 0 on lifting. Edge ids are clause ids.
CutTranslation csp_to_cut(const Instance& instance, const ProposedSolution& proposal);

/// Inverse direction, for graph inputs: one 2AE clause per edge.
Instance cut_to_csp(const CutInstance& cut, ProposedSolution& proposal);

// ---- MinCSP(2AE) -------------------------------------------------------------

struct MinUnsatResult {
  Partition side;
  std::size_t unsatisfied = 0;
};

/// Exact minimum number of unsatisfied edges over all partitions.
MinUnsatResult min_unsat_partition(int num_vertices, const std::vector<CutEdge>& edges);

/// A partition with at most k unsatisfied edges, if one exists.
std::optional<Partition> mincsp_2ae(int num_vertices, const std::vector<CutEdge>& edges, int k);

struct VertexSolution {
  Partition side;
  int budget = 0;
};

/// Partition satisfying a largest satisfiable subset of P, with the budget
/// min(3k, k + |C(A,B) Δ P|).
VertexSolution edge_to_vertex_solution(const CutInstance& inst);

// ---- terminal problem --------------------------------------------------------

struct TerminalEdge {
  int u;
  int v;
  std::uint8_t type;
  bool marked = false;
};

struct TerminalInstance {
  int num_vertices = 0;
  std::vector<TerminalEdge> edges;  // no loops
  Partition base;                   // (A,B); P = C(A,B)
  std::vector<int> terminals;       // distinct, sorted
  int k = 0;
  std::int64_t q = 0;

  std::size_t unmarked_count() const;
  /// Marked edges pairwise disjoint or parallel.
  bool marked_is_matching() const;
  bool connected() const;
};

struct TableEntry {
  Partition side;
  std::size_t value = 0;     // |C(X,Y)|
  std::size_t distance = 0;  // |C(A,B) Δ C(X,Y)|
};

/// f is a bit mask: bit i is the side of terminals[i]. Each vector has k+1
/// slots; slot k'' holds the best entry found with distance <= k''.
using SolutionTable = std::map<std::uint32_t, std::vector<std::optional<TableEntry>>>;

struct CutStats {
  std::size_t recurse_steps = 0;
  std::size_t no_progress_fallbacks = 0;
  std::size_t kq_searches = 0;
  std::size_t kq_cuts_found = 0;
  std::size_t colorings_tried = 0;
  std::size_t mincut_calls = 0;
  std::size_t exact_kq_fallbacks = 0;
  int max_depth = 0;
  bool timed_out = false;
};

std::size_t terminal_value(const TerminalInstance& ti, const Partition& side);
std::size_t terminal_distance(const TerminalInstance& ti, const Partition& side);
bool consistent_with_marked(const TerminalInstance& ti, const Partition& side);

/// Returns the L side of a (k,q)-balanced cut, or nothing.
std::optional<std::vector<std::uint8_t>> find_kq_cut(const TerminalInstance& ti,
                                                    const SolverOptions& options, CutStats& stats);

/// Direct check of the three (k,q)-cut conditions.
bool is_kq_cut(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_l);

SolutionTable solve_terminal_no_kqcut(const TerminalInstance& ti, const SolverOptions& options,
                                      CutStats& stats);

struct RecurseLog {
  std::vector<int> vertex_map;  // current vertex -> reduced vertex
  std::size_t ell = 0;          // unmarked edges inside L
  std::size_t contracted = 0;
  std::size_t marked = 0;
  std::int64_t decrease = 0;    // drop in unmarked edges
};

struct RecurseResult {
  TerminalInstance reduced;
  RecurseLog log;
};

RecurseResult recurse_step(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_l,
                           const SolverOptions& options, CutStats& stats, int depth);

SolutionTable solve_terminal(const TerminalInstance& ti, const SolverOptions& options,
                             CutStats& stats, int depth = 0);

/// Every present entry is consistent with its f and M and within its k''.
bool table_is_valid(const TerminalInstance& ti, const SolutionTable& table);

/// Literal q = k^2 2^(2k+2), saturating at INT64_MAX.
std::int64_t default_q(int k);

struct CutResult {
  Partition side;
  std::size_t value = 0;
  CutStats stats;
};

/// Handles disconnected graphs and loops; every component uses budget inst.k.
CutResult cut_improve(const CutInstance& inst, const SolverOptions& options = {});

struct TwoAeResult {
  Assignment assignment;
  std::size_t value = 0;
  CutStats stats;
};

/// Homogeneous 2AE instance through the translation and cut_improve.
TwoAeResult solve_2ae(const Instance& instance, const ProposedSolution& proposal,
                      const SolverOptions& options = {});

}  // namespace imcsp
