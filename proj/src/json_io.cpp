#include "imcsp/json_io.hpp"

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

template <class F>
auto schema_guard(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Schema, std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Structural) fail(ErrorKind::Schema, std::string(what) + ": " + e.what());
    throw;
  }
}

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) fail(ErrorKind::Schema, std::string(what) + ": expected a JSON object");
}

std::vector<int> int_list(const Json& j) { return j.get<std::vector<int>>(); }

std::vector<std::uint8_t> bit_list(const Json& j) {
  std::vector<std::uint8_t> out;
  for (const auto& x : j) {
    const int v = x.is_boolean() ? static_cast<int>(x.get<bool>()) : x.get<int>();
    if (v != 0 && v != 1) fail(ErrorKind::Schema, "bit vectors may only hold 0 and 1");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

SymmetricLanguage language_from(const Json& r, const Json& s) {
  const auto counts = int_list(s);
  return SymmetricLanguage::from_counts(r.get<int>(), counts);
}

}  // namespace

ParsedInstance instance_from_json(const Json& j) {
  return schema_guard("instance", [&] {
    require_object(j, "instance");
    ParsedInstance out;
    out.mode = j.value("mode", std::string("sym"));
    if (out.mode != "sym" && out.mode != "and" && out.mode != "mixed")
      fail(ErrorKind::Schema, "mode must be \"sym\", \"and\" or \"mixed\"");
    out.instance.num_vars = j.at("num_vars").get<int>();
    const int k = j.at("k").get<int>();
    if (k < 0) fail(ErrorKind::Schema, "k must be nonnegative");
    out.proposal.budget = k;
    std::optional<SymmetricLanguage> shared;
    if (out.mode == "sym") shared = language_from(j.at("r"), j.at("S"));
    const int max_r = out.mode == "and" && j.contains("r") ? j.at("r").get<int>() : -1;
    const auto& clauses = j.at("clauses");
    if (!clauses.is_array()) fail(ErrorKind::Schema, "clauses must be an array");
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      const auto& c = clauses[i];
      require_object(c, "clause");
      auto scope = int_list(c.at("scope"));
      auto neg = c.contains("neg") ? bit_list(c.at("neg")) : std::vector<std::uint8_t>(scope.size(), 0);
      if (neg.size() != scope.size())
        fail(ErrorKind::Schema, "clause " + std::to_string(i) + ": neg and scope lengths differ");
      if (out.mode == "sym") {
        out.instance.clauses.push_back(make_clause(i, *shared, std::move(scope), std::move(neg)));
      } else if (out.mode == "and") {
        if (scope.empty()) fail(ErrorKind::Schema, "clause " + std::to_string(i) + ": empty scope");
        if (max_r >= 0 && static_cast<int>(scope.size()) > max_r)
          fail(ErrorKind::Schema, "clause " + std::to_string(i) + ": arity exceeds r");
        out.instance.clauses.push_back(make_conjunction(i, std::move(scope), std::move(neg)));
      } else {
        out.instance.clauses.push_back(make_clause(i, language_from(c.at("r"), c.at("S")), std::move(scope), std::move(neg)));
      }
      if (c.value("in_P", false)) out.proposal.clause_ids.insert(i);
    }
    out.instance.validate();
    return out;
  });
}

Json instance_to_json(const Instance& instance, const ProposedSolution& proposal) {
  Json j;
  bool same = !instance.clauses.empty();
  bool conj = true;
  for (const auto& c : instance.clauses) {
    same = same && c.language == instance.clauses.front().language;
    conj = conj && c.language.mask() == (1U << c.language.arity());
  }
  std::string mode = same ? "sym" : (conj ? "and" : "mixed");
  if (instance.clauses.empty()) mode = "and";
  j["mode"] = mode;
  j["num_vars"] = instance.num_vars;
  j["k"] = proposal.budget;
  if (mode == "sym") {
    j["r"] = instance.clauses.front().language.arity();
    j["S"] = instance.clauses.front().language.counts();
  } else if (mode == "and") {
    j["r"] = instance.max_arity();
  }
  Json cl = Json::array();
  for (std::size_t i = 0; i < instance.clauses.size(); ++i) {
    const auto& c = instance.clauses[i];
    if (c.id != i) fail(ErrorKind::Structural, "clause ids must equal positions for JSON output");
    Json e;
    e["scope"] = c.scope;
    e["neg"] = bits_to_json(c.negation);
    e["in_P"] = proposal.clause_ids.contains(c.id);
    if (mode == "mixed") {
      e["r"] = c.language.arity();
      e["S"] = c.language.counts();
    }
    cl.push_back(std::move(e));
  }
  j["clauses"] = std::move(cl);
  return j;
}

bool is_graph_json(const Json& j) { return j.is_object() && j.contains("edges") && !j.contains("clauses"); }

CutInstance graph_from_json(const Json& j) {
  return schema_guard("graph", [&] {
    require_object(j, "graph");
    CutInstance g;
    g.k = j.at("k").get<int>();
    int n = 0;
    const auto& edges = j.at("edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      require_object(e, "edge");
      const int type = e.at("type").get<int>();
      if (type != 0 && type != 1) fail(ErrorKind::Schema, "edge type must be 0 or 1");
      g.edges.push_back(CutEdge{i, e.at("u").get<int>(), e.at("v").get<int>(), static_cast<std::uint8_t>(type)});
      n = std::max({n, g.edges.back().u + 1, g.edges.back().v + 1});
      if (e.value("in_P", false)) g.proposed.insert(i);
    }
    g.num_vertices = j.contains("num_vertices") ? j.at("num_vertices").get<int>() : n;
    g.validate();
    return g;
  });
}

Json graph_to_json(const CutInstance& graph) {
  Json j;
  j["num_vertices"] = graph.num_vertices;
  j["k"] = graph.k;
  Json edges = Json::array();
  for (const auto& e : graph.edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"type", e.type}, {"in_P", graph.proposed.contains(e.id)}});
  j["edges"] = std::move(edges);
  return j;
}

PairedMinCutInstance paired_cut_from_json(const Json& j) {
  return schema_guard("paired cut", [&] {
    require_object(j, "paired cut");
    PairedMinCutInstance src;
    src.num_vertices = j.at("num_vertices").get<int>();
    src.s = j.at("s").get<int>();
    src.t = j.at("t").get<int>();
    src.l = j.at("l").get<int>();
    for (const auto& e : j.at("edges")) src.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    for (const auto& p : j.at("pairs")) src.pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    for (const auto& p : j.at("paths")) src.paths.push_back(p.get<std::vector<std::size_t>>());
    src.validate();
    return src;
  });
}

Json paired_cut_to_json(const PairedMinCutInstance& src) {
  Json j;
  j["kind"] = "paired-cut";
  j["num_vertices"] = src.num_vertices;
  j["s"] = src.s;
  j["t"] = src.t;
  j["l"] = src.l;
  Json edges = Json::array();
  for (const auto& e : src.edges) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  Json pairs = Json::array();
  for (const auto& [a, b] : src.pairs) pairs.push_back({a, b});
  j["pairs"] = std::move(pairs);
  j["paths"] = src.paths;
  return j;
}

MulticoloredISInstance mcis_from_json(const Json& j) {
  return schema_guard("mcis", [&] {
    require_object(j, "mcis");
    MulticoloredISInstance src;
    src.num_vertices = j.at("num_vertices").get<int>();
    for (const auto& e : j.at("edges")) src.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& p : j.at("parts")) src.parts.push_back(int_list(p));
    src.validate(false);
    return src;
  });
}

Json mcis_to_json(const MulticoloredISInstance& src) {
  Json j;
  j["kind"] = "mcis";
  j["num_vertices"] = src.num_vertices;
  Json edges = Json::array();
  for (const auto& [u, v] : src.edges) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["parts"] = src.parts;
  return j;
}

WeightedHypergraph hypergraph_from_json(const Json& j) {
  return schema_guard("hypergraph", [&] {
    require_object(j, "hypergraph");
    WeightedHypergraph h;
    h.num_vertices = j.at("num_vertices").get<int>();
    for (const auto& e : j.at("hyperedges")) h.hyperedges.push_back(int_list(e));
    h.weights = int_list(j.at("weights"));
    h.validate();
    return h;
  });
}

Json hypergraph_to_json(const WeightedHypergraph& h) {
  Json j;
  j["num_vertices"] = h.num_vertices;
  j["hyperedges"] = h.hyperedges;
  j["weights"] = h.weights;
  return j;
}

Json ids_to_json(const IdSet& ids) { return Json(std::vector<ClauseId>(ids.begin(), ids.end())); }

Json bits_to_json(const std::vector<std::uint8_t>& bits) {
  Json j = Json::array();
  for (auto b : bits) j.push_back(static_cast<int>(b));
  return j;
}

std::vector<std::uint8_t> bits_from_json(const Json& j) {
  return schema_guard("bit vector", [&] { return bit_list(j); });
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Schema, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace imcsp
