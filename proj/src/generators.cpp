#include "imcsp/generators.hpp"

#include <algorithm>
#include <random>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// Toggle between 0 and k memberships of a set drawn from `universe` ids.
IdSet perturb(std::mt19937_64& rng, IdSet base, std::size_t universe, int k) {
  if (universe == 0) return base;
  const int flips = static_cast<int>(below(rng, static_cast<std::uint64_t>(k) + 1));
  std::vector<std::size_t> ids(universe);
  for (std::size_t i = 0; i < universe; ++i) ids[i] = i;
  for (int i = 0; i < flips && i < static_cast<int>(universe); ++i) {
    std::swap(ids[i], ids[i + below(rng, universe - i)]);
    if (!base.erase(ids[i])) base.insert(ids[i]);
  }
  return base;
}

}  // namespace

GeneratedInstance generate_and_instance(std::uint64_t seed, const AndParams& params) {
  if (params.max_arity < 1 || params.num_vars < 1 || params.num_clauses < 0 || params.k < 0)
    fail(ErrorKind::Structural, "and generator: bad parameters");
  std::mt19937_64 rng(seed);
  GeneratedInstance out;
  out.instance.num_vars = params.num_vars;
  const int top = std::min(params.max_arity, params.num_vars);
  std::vector<int> pool(params.num_vars);
  for (int c = 0; c < params.num_clauses; ++c) {
    const int r = 1 + static_cast<int>(below(rng, top));
    for (int i = 0; i < params.num_vars; ++i) pool[i] = i;
    std::vector<int> scope;
    std::vector<std::uint8_t> neg;
    for (int i = 0; i < r; ++i) {
      std::swap(pool[i], pool[i + below(rng, params.num_vars - i)]);
      scope.push_back(pool[i]);
      neg.push_back(static_cast<std::uint8_t>(rng() & 1U));
    }
    out.instance.clauses.push_back(make_conjunction(static_cast<ClauseId>(c), std::move(scope), std::move(neg)));
  }
  out.hidden.resize(params.num_vars);
  for (auto& x : out.hidden) x = static_cast<std::uint8_t>(rng() & 1U);
  out.proposal.clause_ids = perturb(rng, satisfied_set(out.instance, out.hidden), out.instance.clauses.size(), params.k);
  out.proposal.budget = params.k;
  return out;
}

GeneratedCut generate_cut_instance(std::uint64_t seed, const CutParams& params) {
  const int n = params.num_vertices;
  if (n < 1 || params.k < 0 || params.num_edges < n - 1)
    fail(ErrorKind::Structural, "cut generator: need at least n-1 edges");
  std::mt19937_64 rng(seed);
  GeneratedCut out;
  auto& g = out.instance;
  g.num_vertices = n;
  g.k = params.k;
  auto add = [&](int u, int v) {
    g.edges.push_back(CutEdge{g.edges.size(), u, v, static_cast<std::uint8_t>(rng() & 1U)});
  };
  for (int v = 1; v < n; ++v) add(static_cast<int>(below(rng, v)), v);
  while (static_cast<int>(g.edges.size()) < params.num_edges) {
    const int u = static_cast<int>(below(rng, n));
    if (coin(rng, params.loop_probability)) {
      add(u, u);
      continue;
    }
    if (n < 2) {
      add(u, u);
      continue;
    }
    int v = static_cast<int>(below(rng, n - 1));
    if (v >= u) ++v;
    add(std::min(u, v), std::max(u, v));
  }
  out.hidden.resize(n);
  for (auto& x : out.hidden) x = static_cast<std::uint8_t>(rng() & 1U);
  g.proposed = perturb(rng, satisfied_edges(g.edges, out.hidden), g.edges.size(), params.k);
  g.validate();
  return out;
}

GeneratedInstance generate_2ae_instance(std::uint64_t seed, const CutParams& params) {
  auto cut = generate_cut_instance(seed, params);
  GeneratedInstance out;
  out.instance = cut_to_csp(cut.instance, out.proposal);
  out.hidden = cut.hidden;
  return out;
}

WeightedHypergraph generate_hypergraph(std::uint64_t seed, const HypergraphParams& params) {
  if (params.num_vertices < 1 || params.num_hyperedges < 0 || params.max_edge_size < 1 ||
      params.min_weight > params.max_weight)
    fail(ErrorKind::Structural, "hypergraph generator: bad parameters");
  std::mt19937_64 rng(seed);
  WeightedHypergraph h;
  h.num_vertices = params.num_vertices;
  const int top = std::min(params.max_edge_size, params.num_vertices);
  std::vector<int> pool(params.num_vertices);
  for (int e = 0; e < params.num_hyperedges; ++e) {
    const int size = 1 + static_cast<int>(below(rng, top));
    for (int i = 0; i < params.num_vertices; ++i) pool[i] = i;
    for (int i = 0; i < size; ++i) std::swap(pool[i], pool[i + below(rng, params.num_vertices - i)]);
    std::vector<int> edge(pool.begin(), pool.begin() + size);
    std::sort(edge.begin(), edge.end());
    h.hyperedges.push_back(std::move(edge));
  }
  const auto span = static_cast<std::uint64_t>(params.max_weight - params.min_weight + 1);
  for (int v = 0; v < params.num_vertices; ++v)
    h.weights.push_back(params.min_weight + static_cast<int>(below(rng, span)));
  return h;
}

}  // namespace imcsp
