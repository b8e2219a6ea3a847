#pragma once

// JSON forms of instances, graphs, source problems and hypergraphs. Parse
// failures raise schema errors.

#include <string>

#include <json.hpp>

#include "imcsp/core.hpp"
#include "imcsp/cut_solver.hpp"
#include "imcsp/flow.hpp"
#include "imcsp/reductions.hpp"

namespace imcsp {

using Json = nlohmann::json;

struct ParsedInstance {
  Instance instance;
  ProposedSolution proposal;
  std::string mode;  // "sym", "and" or "mixed"
};

/// mode "sym": shared r and S; "and": each clause a conjunction over its scope
/// (neg[i] = 1 negates literal i); "mixed": each clause carries its own r and S.
ParsedInstance instance_from_json(const Json& j);
/// Picks "sym" when every clause has the same (r, S), else "and" when every
/// clause is SymRel(r', {r'}), else "mixed".
Json instance_to_json(const Instance& instance, const ProposedSolution& proposal);

bool is_graph_json(const Json& j);
/// {"edges":[{"u","v","type","in_P"}], "k", optional "num_vertices"}.
CutInstance graph_from_json(const Json& j);
Json graph_to_json(const CutInstance& graph);

PairedMinCutInstance paired_cut_from_json(const Json& j);
Json paired_cut_to_json(const PairedMinCutInstance& src);

MulticoloredISInstance mcis_from_json(const Json& j);
Json mcis_to_json(const MulticoloredISInstance& src);

WeightedHypergraph hypergraph_from_json(const Json& j);
Json hypergraph_to_json(const WeightedHypergraph& h);

Json ids_to_json(const IdSet& ids);
Json bits_to_json(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> bits_from_json(const Json& j);

/// dump(2) plus a trailing newline.
std::string to_text(const Json& j);
Json parse_text(const std::string& text);

}  // namespace imcsp
