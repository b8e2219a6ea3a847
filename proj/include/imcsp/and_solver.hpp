#pragma once

// Improving solutions of instances whose clauses are conjunctions of literals
// (any arity up to r): value-assignment branching on conflicting literals,
// renormalization around a P-satisfying assignment, and color coding over flip
// classes with the weighted hypergraph subproblem.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "imcsp/coloring.hpp"
#include "imcsp/core.hpp"
#include "imcsp/flow.hpp"
#include "imcsp/options.hpp"

namespace imcsp {

/// Clauses are conjunctions; literal i is positive when negation[i] == 0.
/// Variables keep their original indices; fixed[v] is -1 for free variables.
struct AndInstance {
  Instance instance;
  std::vector<std::int8_t> fixed;
  IdSet proposed;
  int k = 0;

  int free_count() const;
};

/// Converts a conjunctive instance (including sym-mode SymRel(r,{0}) and
/// SymRel(r,{r}) clauses) into AND form. Throws a precondition error otherwise.
AndInstance make_and_instance(const Instance& instance, const ProposedSolution& proposal);

/// Clause-by-clause restriction to v = a; the budget drops when a P clause
/// becomes unsatisfiable or a non-P clause becomes always true.
AndInstance assign_value(const AndInstance& inst, int v, std::uint8_t a);

/// Smallest variable occurring positively in one P clause and negatively in another.
std::optional<int> find_conflict_variable(const AndInstance& inst);

/// Satisfies every P literal, other free variables 0, fixed variables kept.
/// Returns nothing when P has conflicting literals.
std::optional<Assignment> find_assignment_satisfying_P(const AndInstance& inst);

/// P' = C(α), k' = k + |P Δ C(α)|.
AndInstance renormalize(const AndInstance& inst, const Assignment& alpha);

struct FlipClassHypergraph {
  WeightedHypergraph hypergraph;
  std::vector<std::vector<int>> classes;  // class id -> variables
  std::vector<ClauseId> hyperedge_clause;  // hyperedge index -> clause id
};

/// color[v] over the full variable range; only free variables with color 1 form L_1.
FlipClassHypergraph build_flip_hypergraph(const AndInstance& inst, const Assignment& alpha,
                                          const std::vector<std::uint8_t>& color);

/// Flips every variable of the selected classes in alpha.
Assignment apply_flip(const FlipClassHypergraph& flip, const Assignment& alpha,
                      const std::vector<std::uint8_t>& selected);

struct AndStats {
  std::size_t colorings_tried = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  int max_depth = 0;
  bool timed_out = false;
};

struct AndLeafEvent {
  const AndInstance& before;  // instance handed to the leaf solver
  const Assignment& alpha;    // its P-satisfying assignment
  const AndInstance& after;   // renormalized instance
};

struct AndOptions : SolverOptions {
  std::function<void(const AndLeafEvent&)> on_leaf;
};

/// Requires alpha to satisfy P of an already renormalized instance.
Assignment solve_satisfiable_P(const AndInstance& inst, const Assignment& alpha,
                               const AndOptions& options, AndStats& stats);

struct AndResult {
  Assignment assignment;
  std::size_t value = 0;
  AndStats stats;
};

AndResult branch_solve(const AndInstance& inst, const AndOptions& options);

/// Entry point on a plain instance and proposal.
AndResult solve_and(const Instance& instance, const ProposedSolution& proposal,
                    const AndOptions& options = {});

}  // namespace imcsp
