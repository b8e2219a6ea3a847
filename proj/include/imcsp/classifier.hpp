#pragma once

// Dichotomy classification of SymLang-N(r, S) and the generic relation checks
// used to cross-validate it.

#include <cstdint>
#include <string>
#include <vector>

#include "imcsp/core.hpp"

namespace imcsp {

/// Explicit truth table; tuple bit i is coordinate i.
struct RelationTable {
  int arity = 0;
  std::vector<std::uint32_t> tuples;  // sorted, unique

  static RelationTable from_tuples(int arity, std::vector<std::uint32_t> tuples);
  static RelationTable symmetric(const SymmetricLanguage& language,
                                 std::uint32_t negation_mask = 0);
  bool contains(std::uint32_t tuple) const;
};

struct Graph {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> adj;  // adjacency matrix

  explicit Graph(int vertices = 0) : n(vertices), adj(vertices, std::vector<std::uint8_t>(vertices, 0)) {}
  void add_edge(int u, int v) { adj[u][v] = adj[v][u] = 1; }
  bool has_edge(int u, int v) const { return adj[u][v] != 0; }
  std::size_t edge_count() const;
  bool is_complete() const;
  bool is_empty() const;
};

struct Digraph {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> adj;

  explicit Digraph(int vertices = 0) : n(vertices), adj(vertices, std::vector<std::uint8_t>(vertices, 0)) {}
  bool has_arc(int u, int v) const { return adj[u][v] != 0; }
  Graph underlying() const;
};

Graph gaifman_graph(const RelationTable& relation);
Digraph arrow_graph(const RelationTable& relation);
bool is_2k2_free(const Graph& graph);
bool is_bijunctive(const RelationTable& relation);

enum class IhsbSign { Plus, Minus };
bool is_ihsb(const RelationTable& relation, IhsbSign sign);

/// The family check: every member R ⊕ b of the language has the property.
bool language_is_bijunctive(const SymmetricLanguage& language);
bool language_is_ihsb(const SymmetricLanguage& language, IhsbSign sign);

enum class Verdict { Trivial, FptAnd, Fpt2AE, W1Hard };

struct ClassificationVerdict {
  Verdict label;
  std::string certificate;  // "trivial", "rAND", "2AE", "rAE_r>=3", "le1_r>=2", "MinCSP_hard"
};

std::string verdict_name(Verdict verdict);

/// Dichotomy-table lookup, cross-checked against the generic checks for r <= 6.
ClassificationVerdict classify(const SymmetricLanguage& language);
ClassificationVerdict classify(int arity, const std::vector<int>& counts);

/// Condition for MinCSP fixed-parameter tractability of the family:
/// (bijunctive and Gaifman graph 2K2-free) or (IHS-B and arrow graph 2K2-free).
bool mincsp_fpt_condition(const SymmetricLanguage& language);

}  // namespace imcsp
