#include "imcsp/cut_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "imcsp/coloring.hpp"
#include "imcsp/error.hpp"
#include "imcsp/flow.hpp"

namespace imcsp {

namespace {

constexpr int kExactKqMaxVertices = 20;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Component label per vertex, numbered by first occurrence.
template <class EdgeRange, class Keep>
std::vector<int> component_labels(int n, const EdgeRange& edges, Keep&& keep) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (keep(i)) uf.unite(edges[i].u, edges[i].v);
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

bool is_cut(const TerminalEdge& e, const Partition& side) { return side[e.u] != side[e.v]; }

bool satisfied(const TerminalEdge& e, const Partition& side) {
  return is_cut(e, side) == (e.type == 1);
}

bool connected_subset(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_set,
                      std::uint8_t which) {
  int start = -1;
  int total = 0;
  for (int v = 0; v < ti.num_vertices; ++v)
    if (in_set[v] == which) {
      if (start < 0) start = v;
      ++total;
    }
  if (total == 0) return false;
  std::vector<std::vector<int>> adj(ti.num_vertices);
  for (const auto& e : ti.edges)
    if (in_set[e.u] == which && in_set[e.v] == which) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<std::uint8_t> seen(ti.num_vertices, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == total;
}

std::size_t unmarked_inside(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_set,
                            std::uint8_t which) {
  std::size_t c = 0;
  for (const auto& e : ti.edges)
    if (!e.marked && in_set[e.u] == which && in_set[e.v] == which) ++c;
  return c;
}

std::uint32_t terminal_mask(const TerminalInstance& ti, const Partition& side) {
  std::uint32_t f = 0;
  for (std::size_t i = 0; i < ti.terminals.size(); ++i)
    if (side[ti.terminals[i]]) f |= 1U << i;
  return f;
}

bool better_entry(std::size_t value, const Partition& side, const std::optional<TableEntry>& cur) {
  if (!cur) return true;
  return value > cur->value || (value == cur->value && lex_less(side, cur->side));
}

void offer(SolutionTable& table, const TerminalInstance& ti, std::uint32_t f, int slot,
           const Partition& side, std::size_t value, std::size_t distance) {
  auto& slots = table[f];
  if (slots.empty()) slots.resize(ti.k + 1);
  if (better_entry(value, side, slots[slot])) slots[slot] = TableEntry{side, value, distance};
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::int64_t>::max() / b) return std::numeric_limits<std::int64_t>::max();
  return a * b;
}

// Minimum cut separating two vertex sets with unit edge capacities.
MinCutResult separate(const TerminalInstance& ti, const std::vector<int>& src,
                      const std::vector<int>& dst) {
  FlowNetwork net;
  net.num_vertices = ti.num_vertices + 2;
  net.source = ti.num_vertices;
  net.sink = ti.num_vertices + 1;
  const Capacity inf = static_cast<Capacity>(ti.edges.size()) + 1;
  for (const auto& e : ti.edges) net.add_edge(e.u, e.v, 1);
  for (int v : src) net.add_arc(net.source, v, inf);
  for (int v : dst) net.add_arc(v, net.sink, inf);
  return max_flow_min_cut(net);
}

std::optional<std::vector<std::uint8_t>> exact_kq_search(const TerminalInstance& ti) {
  const int n = ti.num_vertices;
  if (n > kExactKqMaxVertices)
    fail(ErrorKind::Capacity, "no coloring family fits the cap and the graph is too large for the exact search");
  std::vector<std::uint8_t> in_l(n);
  // vertex 0 always in L
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << (n - 1)); ++mask) {
    in_l[0] = 1;
    for (int v = 1; v < n; ++v) in_l[v] = ((mask >> (v - 1)) & 1U) ? 0 : 1;
    if (is_kq_cut(ti, in_l)) return in_l;
  }
  return std::nullopt;
}

}  // namespace

// ---- cut instances ---------------------------------------------------------

void CutInstance::validate() const {
  if (num_vertices < 0) fail(ErrorKind::Structural, "negative vertex count");
  if (k < 0) fail(ErrorKind::Structural, "budget k must be nonnegative");
  IdSet ids;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
      fail(ErrorKind::Structural, "edge " + std::to_string(e.id) + ": endpoint out of range");
    if (e.type > 1) fail(ErrorKind::Structural, "edge " + std::to_string(e.id) + ": type must be 0 or 1");
    if (!ids.insert(e.id).second) fail(ErrorKind::Structural, "duplicate edge id " + std::to_string(e.id));
  }
  for (auto id : proposed)
    if (!ids.contains(id)) fail(ErrorKind::Structural, "proposed edge id " + std::to_string(id) + " is unknown");
}

bool CutInstance::connected() const {
  if (num_vertices <= 1) return true;
  const auto label = component_labels(num_vertices, edges, [](std::size_t) { return true; });
  return *std::max_element(label.begin(), label.end()) == 0;
}

bool edge_satisfied(const CutEdge& e, const Partition& side) {
  if (e.is_loop()) return e.type == 0;
  return (side[e.u] != side[e.v]) == (e.type == 1);
}

IdSet satisfied_edges(const std::vector<CutEdge>& edges, const Partition& side) {
  IdSet out;
  for (const auto& e : edges)
    if (edge_satisfied(e, side)) out.insert(e.id);
  return out;
}

std::size_t satisfied_edge_count(const std::vector<CutEdge>& edges, const Partition& side) {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [&](const CutEdge& e) { return edge_satisfied(e, side); }));
}

IdSet cut_edges(const std::vector<CutEdge>& edges, const Partition& side) {
  IdSet out;
  for (const auto& e : edges)
    if (!e.is_loop() && side[e.u] != side[e.v]) out.insert(e.id);
  return out;
}

// ---- translation -----------------------------------------------------------

CutTranslation csp_to_cut(const Instance& instance, const ProposedSolution& proposal) {
  instance.validate();
  validate_proposal(instance, proposal);
  const int n = instance.num_vars;
  std::vector<CutEdge> all;
  for (const auto& c : instance.clauses) {
    const auto m = c.language.mask();
    if (c.arity() != 2 || (m != 0b101U && m != 0b010U))
      fail(ErrorKind::Precondition, "clause " + std::to_string(c.id) + " over " +
                                        c.language.describe() + " is not a 2AE clause");
    const bool same_neg = c.negation[0] == c.negation[1];
    const std::uint8_t type = (m == 0b101U) == same_neg ? 0 : 1;
    all.push_back(CutEdge{c.id, c.scope[0], c.scope[1], type});
  }
  std::vector<std::uint8_t> used(n, 0);
  for (const auto& e : all) used[e.u] = used[e.v] = 1;
  const auto label = component_labels(n, all, [](std::size_t) { return true; });

  CutTranslation out;
  out.num_vars = n;
  std::vector<int> comp_of_label(n, -1);
  std::vector<int> local(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!used[v]) continue;
    if (comp_of_label[label[v]] < 0) {
      comp_of_label[label[v]] = static_cast<int>(out.components.size());
      out.components.emplace_back();
      out.component_vars.emplace_back();
    }
    const int c = comp_of_label[label[v]];
    local[v] = static_cast<int>(out.component_vars[c].size());
    out.component_vars[c].push_back(v);
  }
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    out.components[c].num_vertices = static_cast<int>(out.component_vars[c].size());
    out.components[c].k = proposal.budget;
  }
  for (const auto& e : all) {
    const int c = comp_of_label[label[e.u]];
    auto& comp = out.components[c];
    comp.edges.push_back(CutEdge{e.id, local[e.u], local[e.v], e.type});
    if (proposal.clause_ids.contains(e.id)) comp.proposed.insert(e.id);
  }
  return out;
}

Assignment CutTranslation::lift(const std::vector<Partition>& partitions) const {
  if (partitions.size() != components.size())
    fail(ErrorKind::Structural, "one partition per component is required");
  Assignment out(num_vars, 0);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (std::size_t j = 0; j < component_vars[c].size(); ++j)
      out[component_vars[c][j]] = partitions[c][j];
  return out;
}

Instance cut_to_csp(const CutInstance& cut, ProposedSolution& proposal) {
  cut.validate();
  Instance out;
  out.num_vars = cut.num_vertices;
  const SymmetricLanguage eq(2, 0b101U);
  for (const auto& e : cut.edges)
    out.clauses.push_back(make_clause(e.id, eq, {e.u, e.v}, {0, e.type}));
  proposal.clause_ids = cut.proposed;
  proposal.budget = cut.k;
  return out;
}

// ---- MinCSP(2AE) -----------------------------------------------------------

// Edge bipartization by iterative compression on the all-type-1 gadget graph.
// Each compression step starts from a partition c that cuts every edge except
// the set F; for every flip pattern on the endpoints of F it solves a
// unit-capacity min cut in G - F, which yields the exact optimum for the prefix.
MinUnsatResult min_unsat_partition(int num_vertices, const std::vector<CutEdge>& edges) {
  std::size_t loop_cost = 0;
  std::vector<std::pair<int, int>> gadget;
  int total = num_vertices;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
      fail(ErrorKind::Structural, "edge endpoint out of range");
    if (e.is_loop()) {
      loop_cost += e.type == 1;
    } else if (e.type == 1) {
      gadget.emplace_back(e.u, e.v);
    } else {
      const int w = total++;
      gadget.emplace_back(e.u, w);
      gadget.emplace_back(w, e.v);
    }
  }
  Partition sigma(total, 0);
  std::size_t cost = 0;
  for (std::size_t i = 0; i < gadget.size(); ++i) {
    if (sigma[gadget[i].first] != sigma[gadget[i].second]) continue;
    // sigma leaves exactly F = {violated edges among the first i+1} unsatisfied
    std::vector<std::size_t> violated;
    std::vector<std::uint8_t> in_f(i + 1, 0);
    for (std::size_t j = 0; j <= i; ++j)
      if (sigma[gadget[j].first] == sigma[gadget[j].second]) {
        violated.push_back(j);
        in_f[j] = 1;
      }
    std::vector<int> w_set;
    for (auto j : violated) {
      w_set.push_back(gadget[j].first);
      w_set.push_back(gadget[j].second);
    }
    std::sort(w_set.begin(), w_set.end());
    w_set.erase(std::unique(w_set.begin(), w_set.end()), w_set.end());
    const std::size_t lower = violated.size() - 1;
    std::size_t best = violated.size();
    Partition best_sigma = sigma;
    const int wn = static_cast<int>(w_set.size());
    std::vector<std::uint8_t> flip(total, 0);
    for (std::uint64_t pat = 0; pat < (std::uint64_t{1} << (wn - 1)) && best > lower; ++pat) {
      for (int x = 0; x < wn; ++x) flip[w_set[x]] = x == 0 ? 0 : ((pat >> (x - 1)) & 1U);
      std::size_t bad_f = 0;
      for (auto j : violated) {
        const int a = gadget[j].first;
        const int b = gadget[j].second;
        bad_f += (sigma[a] ^ flip[a]) == (sigma[b] ^ flip[b]);
      }
      if (bad_f >= best) continue;
      FlowNetwork net;
      net.num_vertices = total + 2;
      net.source = total;
      net.sink = total + 1;
      const Capacity inf = static_cast<Capacity>(i + 2);
      for (std::size_t j = 0; j <= i; ++j)
        if (!in_f[j]) net.add_edge(gadget[j].first, gadget[j].second, 1);
      for (int x : w_set) {
        if (flip[x]) net.add_arc(x, net.sink, inf);
        else net.add_arc(net.source, x, inf);
      }
      const auto cut = max_flow_min_cut(net);
      const std::size_t value = bad_f + static_cast<std::size_t>(cut.value);
      if (value < best) {
        best = value;
        for (int v = 0; v < total; ++v) best_sigma[v] = sigma[v] ^ (cut.in_source_side[v] ? 0 : 1);
      }
    }
    sigma = std::move(best_sigma);
    cost = best;
  }
  MinUnsatResult out;
  out.side.assign(sigma.begin(), sigma.begin() + num_vertices);
  out.unsatisfied = edges.size() - satisfied_edge_count(edges, out.side);
  if (out.unsatisfied != cost + loop_cost)
    fail(ErrorKind::Internal, "iterative compression produced an inconsistent partition");
  return out;
}

std::optional<Partition> mincsp_2ae(int num_vertices, const std::vector<CutEdge>& edges, int k) {
  auto best = min_unsat_partition(num_vertices, edges);
  if (k < 0 || best.unsatisfied > static_cast<std::size_t>(k)) return std::nullopt;
  return best.side;
}

VertexSolution edge_to_vertex_solution(const CutInstance& inst) {
  std::vector<CutEdge> p_edges;
  for (const auto& e : inst.edges)
    if (inst.proposed.contains(e.id)) p_edges.push_back(e);
  VertexSolution out;
  out.side = min_unsat_partition(inst.num_vertices, p_edges).side;
  const auto delta = neighborhood_distance(satisfied_edges(inst.edges, out.side), inst.proposed);
  const long long loose = static_cast<long long>(inst.k) + static_cast<long long>(delta);
  out.budget = static_cast<int>(std::min<long long>(3LL * inst.k, loose));
  return out;
}

// ---- terminal problem ----------------------------------------------------

std::size_t TerminalInstance::unmarked_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const TerminalEdge& e) { return !e.marked; }));
}

bool TerminalInstance::marked_is_matching() const {
  std::vector<std::pair<int, int>> m;
  for (const auto& e : edges)
    if (e.marked) m.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m[i] == m[j]) continue;
      if (m[i].first == m[j].first || m[i].first == m[j].second || m[i].second == m[j].first ||
          m[i].second == m[j].second)
        return false;
    }
  return true;
}

bool TerminalInstance::connected() const {
  if (num_vertices <= 1) return true;
  const auto label = component_labels(num_vertices, edges, [](std::size_t) { return true; });
  return *std::max_element(label.begin(), label.end()) == 0;
}

std::size_t terminal_value(const TerminalInstance& ti, const Partition& side) {
  return static_cast<std::size_t>(std::count_if(
      ti.edges.begin(), ti.edges.end(), [&](const TerminalEdge& e) { return satisfied(e, side); }));
}

std::size_t terminal_distance(const TerminalInstance& ti, const Partition& side) {
  return static_cast<std::size_t>(std::count_if(ti.edges.begin(), ti.edges.end(), [&](const TerminalEdge& e) {
    return is_cut(e, side) != is_cut(e, ti.base);
  }));
}

bool consistent_with_marked(const TerminalInstance& ti, const Partition& side) {
  return std::all_of(ti.edges.begin(), ti.edges.end(), [&](const TerminalEdge& e) {
    return !e.marked || (is_cut(e, side) && is_cut(e, ti.base));
  });
}

std::int64_t default_q(int k) {
  if (k < 0) return 0;
  if (2 * k + 2 >= 62) return std::numeric_limits<std::int64_t>::max();
  return sat_mul(static_cast<std::int64_t>(k) * k, std::int64_t{1} << (2 * k + 2));
}

bool is_kq_cut(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_l) {
  std::size_t crossing = 0;
  for (const auto& e : ti.edges) crossing += in_l[e.u] != in_l[e.v];
  if (crossing > static_cast<std::size_t>(std::max(ti.k, 0))) return false;
  if (!connected_subset(ti, in_l, 1) || !connected_subset(ti, in_l, 0)) return false;
  const auto q = static_cast<std::size_t>(std::max<std::int64_t>(ti.q, 0));
  return unmarked_inside(ti, in_l, 1) >= q && unmarked_inside(ti, in_l, 0) >= q;
}

std::optional<std::vector<std::uint8_t>> find_kq_cut(const TerminalInstance& ti,
                                                    const SolverOptions& options, CutStats& stats) {
  ++stats.kq_searches;
  const int n = ti.num_vertices;
  const int m = static_cast<int>(ti.edges.size());
  if (n < 2) return std::nullopt;
  const std::int64_t q = std::max<std::int64_t>(ti.q, 0);
  if (static_cast<std::int64_t>(ti.unmarked_count()) < 2 * std::min<std::int64_t>(q, std::int64_t{1} << 40))
    return std::nullopt;
  const int a = static_cast<int>(std::min<std::int64_t>(m, 2 * (3 * q + 1)));
  const int b = std::min(m, std::max(ti.k, 0));

  ColoringConfig config = options.coloring;
  if (config.mode == ColoringMode::Exhaustive && exhaustive_family_size(m, a, b) > config.cap) {
    if (n <= kExactKqMaxVertices) {
      ++stats.exact_kq_fallbacks;
      return exact_kq_search(ti);
    }
    config.mode = ColoringMode::Randomized;
  }
  const auto family = build_coloring_family(m, a, b, config);

  std::set<std::vector<int>> seen_labelings;
  std::set<std::pair<std::vector<int>, std::vector<int>>> probed;
  for (const auto& chi : family.colorings) {
    if (options.deadline.expired()) {
      stats.timed_out = true;
      break;
    }
    auto label = component_labels(n, ti.edges, [&](std::size_t i) { return chi[i] != 0; });
    if (!seen_labelings.insert(label).second) continue;
    const int comps = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<int>> members(comps);
    for (int v = 0; v < n; ++v) members[label[v]].push_back(v);
    std::vector<std::size_t> inside(comps, 0);
    for (const auto& e : ti.edges)
      if (!e.marked && label[e.u] == label[e.v]) ++inside[label[e.u]];
    std::vector<int> big;
    for (int c = 0; c < comps; ++c)
      if (static_cast<std::int64_t>(inside[c]) >= q) big.push_back(c);
    for (std::size_t i = 0; i < big.size(); ++i)
      for (std::size_t j = i + 1; j < big.size(); ++j) {
        const auto& src = members[big[i]];
        const auto& dst = members[big[j]];
        if (!probed.emplace(src, dst).second) continue;
        ++stats.mincut_calls;
        const auto cut = separate(ti, src, dst);
        if (cut.value > ti.k) continue;
        std::vector<std::uint8_t> in_l(cut.in_source_side.begin(), cut.in_source_side.begin() + n);
        if (!connected_subset(ti, in_l, 1) || !connected_subset(ti, in_l, 0))
          fail(ErrorKind::Internal, "minimum cut in a connected graph has a disconnected side");
        if (is_kq_cut(ti, in_l)) return in_l;
      }
  }
  return std::nullopt;
}

SolutionTable solve_terminal_no_kqcut(const TerminalInstance& ti, const SolverOptions& options,
                                      CutStats& stats) {
  const int n = ti.num_vertices;
  const int k = std::max(ti.k, 0);
  const std::int64_t q = std::max<std::int64_t>(ti.q, 0);
  const std::int64_t big = sat_mul(k + 1, sat_mul(2, q) + 2);
  const int a = static_cast<int>(std::min<std::int64_t>(n, big));
  const int b = std::min(n, k);
  const auto family = build_coloring_family(n, a, b, options.coloring);
  const std::size_t base_value = terminal_value(ti, ti.base);
  std::vector<int> term_index(n, -1);
  for (std::size_t i = 0; i < ti.terminals.size(); ++i) term_index[ti.terminals[i]] = static_cast<int>(i);

  SolutionTable table;
  for (std::uint8_t mirror = 0; mirror < 2; ++mirror) {
    Partition base = ti.base;
    for (auto& s : base) s ^= mirror;
    for (const auto& chi : family.colorings) {
      if (options.deadline.expired()) {
        stats.timed_out = true;
        return table;
      }
      ++stats.colorings_tried;
      const auto label = component_labels(
          n, ti.edges, [&](std::size_t i) { return chi[ti.edges[i].u] && chi[ti.edges[i].v]; });
      const int comps = n == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
      std::vector<int> weight(comps, 0);
      std::vector<int> gain(comps, 0);
      std::vector<std::uint8_t> forbidden(comps, 0);
      std::vector<std::uint32_t> tmask(comps, 0);
      std::vector<std::uint8_t> is_one(comps, 0);
      std::uint32_t fixed_bits = 0;
      for (int v = 0; v < n; ++v) {
        if (chi[v]) is_one[label[v]] = 1;
        if (term_index[v] >= 0) {
          if (chi[v]) tmask[label[v]] |= 1U << term_index[v];
          else if (base[v]) fixed_bits |= 1U << term_index[v];
        }
      }
      for (const auto& e : ti.edges) {
        for (int end = 0; end < 2; ++end) {
          const int x = end ? e.v : e.u;
          const int y = end ? e.u : e.v;
          if (!chi[x] || (chi[y] && label[y] == label[x])) continue;
          // boundary edge of x's component; flipping the component toggles its cut status
          ++weight[label[x]];
          gain[label[x]] += satisfied(e, base) ? -1 : 1;
          if (e.marked) forbidden[label[x]] = 1;
        }
      }
      std::uint32_t base_bits = fixed_bits;
      for (int v = 0; v < n; ++v)
        if (term_index[v] >= 0 && chi[v] && base[v]) base_bits |= 1U << term_index[v];

      // knapsack over free components with positive gain
      std::vector<int> items;
      std::vector<int> tcomps;
      for (int c = 0; c < comps; ++c) {
        if (!is_one[c] || forbidden[c] || weight[c] > k) continue;
        if (tmask[c]) tcomps.push_back(c);
        else if (gain[c] > 0) items.push_back(c);
      }
      // terminal components that cannot flip still fix their terminals at the base side
      const int ni = static_cast<int>(items.size());
      std::vector<std::vector<int>> dp(ni + 1, std::vector<int>(k + 1, 0));
      for (int i = 0; i < ni; ++i)
        for (int cap = 0; cap <= k; ++cap) {
          dp[i + 1][cap] = dp[i][cap];
          const int w = weight[items[i]];
          if (w <= cap) dp[i + 1][cap] = std::max(dp[i + 1][cap], dp[i][cap - w] + gain[items[i]]);
        }
      std::vector<std::vector<int>> choice(k + 1);
      for (int cap = 0; cap <= k; ++cap) {
        int c = cap;
        for (int i = ni; i > 0; --i)
          if (dp[i][c] != dp[i - 1][c]) {
            choice[cap].push_back(items[i - 1]);
            c -= weight[items[i - 1]];
          }
      }
      const int nt = static_cast<int>(tcomps.size());
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << nt); ++sub) {
        int w = 0;
        int g = 0;
        std::uint32_t f = base_bits;
        for (int i = 0; i < nt; ++i)
          if ((sub >> i) & 1U) {
            w += weight[tcomps[i]];
            g += gain[tcomps[i]];
            f ^= tmask[tcomps[i]];
          }
        if (w > k) continue;
        for (int slot = w; slot <= k; ++slot) {
          const long long predicted = static_cast<long long>(base_value) + g + dp[ni][slot - w];
          auto it = table.find(f);
          if (it != table.end() && it->second[slot] &&
              static_cast<long long>(it->second[slot]->value) > predicted)
            continue;
          Partition side = base;
          std::vector<std::uint8_t> flip_comp(comps, 0);
          for (int i = 0; i < nt; ++i)
            if ((sub >> i) & 1U) flip_comp[tcomps[i]] = 1;
          for (int c : choice[slot - w]) flip_comp[c] = 1;
          for (int v = 0; v < n; ++v)
            if (chi[v] && flip_comp[label[v]]) side[v] ^= 1;
          const auto value = terminal_value(ti, side);
          const auto distance = terminal_distance(ti, side);
          if (static_cast<long long>(value) != predicted || distance > static_cast<std::size_t>(slot))
            fail(ErrorKind::Internal, "component flip accounting disagrees with direct evaluation");
          offer(table, ti, f, slot, side, value, distance);
        }
      }
    }
  }
  return table;
}

RecurseResult recurse_step(const TerminalInstance& ti, const std::vector<std::uint8_t>& in_l_arg,
                           const SolverOptions& options, CutStats& stats, int depth) {
  const int n = ti.num_vertices;
  std::vector<std::uint8_t> in_l = in_l_arg;
  std::size_t tl = 0;
  for (int t : ti.terminals) tl += in_l[t];
  if (tl > ti.terminals.size() - tl)
    for (auto& x : in_l) x ^= 1;

  // sub-instance on G(L)
  std::vector<int> local(n, -1);
  TerminalInstance sub;
  for (int v = 0; v < n; ++v)
    if (in_l[v]) {
      local[v] = sub.num_vertices++;
      sub.base.push_back(ti.base[v]);
    }
  std::vector<std::size_t> sub_to_edge;
  std::vector<std::uint8_t> boundary(n, 0);
  for (std::size_t i = 0; i < ti.edges.size(); ++i) {
    const auto& e = ti.edges[i];
    if (in_l[e.u] && in_l[e.v]) {
      sub.edges.push_back(TerminalEdge{local[e.u], local[e.v], e.type, e.marked});
      sub_to_edge.push_back(i);
    } else if (in_l[e.u] != in_l[e.v]) {
      boundary[in_l[e.u] ? e.u : e.v] = 1;
    }
  }
  for (int v = 0; v < n; ++v)
    if (in_l[v] && (boundary[v] || std::binary_search(ti.terminals.begin(), ti.terminals.end(), v)))
      sub.terminals.push_back(local[v]);
  sub.k = ti.k;
  sub.q = ti.q;
  if (sub.terminals.size() > 32) fail(ErrorKind::Guard, "more than 32 terminals");

  const auto sub_table = solve_terminal(sub, options, stats, depth + 1);
  std::vector<std::uint8_t> touched(sub.edges.size(), 0);
  for (const auto& [f, slots] : sub_table)
    for (const auto& entry : slots) {
      if (!entry) continue;
      for (std::size_t j = 0; j < sub.edges.size(); ++j)
        if (is_cut(sub.edges[j], entry->side) != is_cut(sub.edges[j], sub.base)) touched[j] = 1;
    }

  RecurseResult out;
  out.log.ell = sub.unmarked_count();
  std::vector<std::uint8_t> marked(ti.edges.size());
  for (std::size_t i = 0; i < ti.edges.size(); ++i) marked[i] = ti.edges[i].marked;
  UnionFind uf(n);
  for (std::size_t j = 0; j < sub.edges.size(); ++j) {
    if (sub.edges[j].marked || touched[j]) continue;
    const auto& e = ti.edges[sub_to_edge[j]];
    if (is_cut(e, ti.base)) {
      marked[sub_to_edge[j]] = 1;
      ++out.log.marked;
    } else {
      uf.unite(e.u, e.v);
      ++out.log.contracted;
    }
  }
  // keep M a matching: two marked edges at a vertex force their far ends together
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> partner(n, -1);
    for (std::size_t i = 0; i < ti.edges.size(); ++i) {
      if (!marked[i]) continue;
      const int a = uf.find(ti.edges[i].u);
      const int b = uf.find(ti.edges[i].v);
      if (a == b) fail(ErrorKind::Internal, "a marked edge was contracted");
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (partner[x] < 0) partner[x] = y;
        else if (uf.find(partner[x]) != uf.find(y)) changed |= uf.unite(partner[x], y);
      }
    }
  }

  auto& red = out.reduced;
  std::vector<int> class_index(n, -1);
  out.log.vertex_map.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (class_index[r] < 0) {
      class_index[r] = red.num_vertices++;
      red.base.push_back(ti.base[v]);
    } else if (red.base[class_index[r]] != ti.base[v]) {
      fail(ErrorKind::Internal, "contraction merged vertices from different sides");
    }
    out.log.vertex_map[v] = class_index[r];
  }
  for (std::size_t i = 0; i < ti.edges.size(); ++i) {
    const auto& e = ti.edges[i];
    const int a = out.log.vertex_map[e.u];
    const int b = out.log.vertex_map[e.v];
    if (a == b) continue;  // uncut in the base and in every lifted solution
    red.edges.push_back(TerminalEdge{a, b, e.type, marked[i] != 0});
  }
  for (int t : ti.terminals) red.terminals.push_back(out.log.vertex_map[t]);
  std::sort(red.terminals.begin(), red.terminals.end());
  red.terminals.erase(std::unique(red.terminals.begin(), red.terminals.end()), red.terminals.end());
  red.k = ti.k;
  red.q = ti.q;
  out.log.decrease = static_cast<std::int64_t>(ti.unmarked_count()) -
                     static_cast<std::int64_t>(red.unmarked_count());
  ++stats.recurse_steps;
  if (options.on_recurse_step) options.on_recurse_step(red);
  return out;
}

SolutionTable solve_terminal(const TerminalInstance& ti, const SolverOptions& options,
                             CutStats& stats, int depth) {
  stats.max_depth = std::max(stats.max_depth, depth);
  if (ti.terminals.size() > 32) fail(ErrorKind::Guard, "more than 32 terminals");
  const auto cut = find_kq_cut(ti, options, stats);
  if (!cut) return solve_terminal_no_kqcut(ti, options, stats);
  ++stats.kq_cuts_found;
  const auto step = recurse_step(ti, *cut, options, stats, depth);
  if (step.log.decrease <= 0) {
    ++stats.no_progress_fallbacks;
    return solve_terminal_no_kqcut(ti, options, stats);
  }
  const auto reduced_table = solve_terminal(step.reduced, options, stats, depth + 1);
  SolutionTable table;
  for (const auto& [f_reduced, slots] : reduced_table)
    for (int slot = 0; slot < static_cast<int>(slots.size()); ++slot) {
      if (!slots[slot]) continue;
      Partition side(ti.num_vertices);
      for (int v = 0; v < ti.num_vertices; ++v) side[v] = slots[slot]->side[step.log.vertex_map[v]];
      offer(table, ti, terminal_mask(ti, side), slot, side, terminal_value(ti, side),
            terminal_distance(ti, side));
    }
  return table;
}

bool table_is_valid(const TerminalInstance& ti, const SolutionTable& table) {
  for (const auto& [f, slots] : table)
    for (std::size_t slot = 0; slot < slots.size(); ++slot) {
      const auto& entry = slots[slot];
      if (!entry) continue;
      if (terminal_mask(ti, entry->side) != f) return false;
      if (!consistent_with_marked(ti, entry->side)) return false;
      if (terminal_distance(ti, entry->side) > slot) return false;
      if (terminal_value(ti, entry->side) != entry->value) return false;
    }
  return true;
}

// ---- top level -------------------------------------------------------------

CutResult cut_improve(const CutInstance& inst, const SolverOptions& options) {
  inst.validate();
  const int n = inst.num_vertices;
  CutResult out;
  out.side.assign(n, 0);
  const auto label = component_labels(n, inst.edges, [](std::size_t) { return true; });
  const int comps = n == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<int>> members(comps);
  for (int v = 0; v < n; ++v) members[label[v]].push_back(v);
  std::vector<int> local(n);
  for (const auto& mem : members)
    for (std::size_t j = 0; j < mem.size(); ++j) local[mem[j]] = static_cast<int>(j);

  for (int c = 0; c < comps; ++c) {
    CutInstance comp;
    comp.num_vertices = static_cast<int>(members[c].size());
    comp.k = inst.k;
    for (const auto& e : inst.edges)
      if (label[e.u] == c) {
        comp.edges.push_back(CutEdge{e.id, local[e.u], local[e.v], e.type});
        if (inst.proposed.contains(e.id)) comp.proposed.insert(e.id);
      }
    const auto vs = edge_to_vertex_solution(comp);
    TerminalInstance ti;
    ti.num_vertices = comp.num_vertices;
    ti.base = vs.side;
    ti.k = vs.budget;
    ti.q = options.q_override ? *options.q_override : default_q(vs.budget);
    for (const auto& e : comp.edges)
      if (!e.is_loop()) ti.edges.push_back(TerminalEdge{e.u, e.v, e.type, false});
    Partition best = vs.side;
    std::size_t best_value = terminal_value(ti, best);
    const auto table = solve_terminal(ti, options, out.stats);
    for (const auto& [f, slots] : table)
      for (const auto& entry : slots)
        if (entry && (entry->value > best_value || (entry->value == best_value && lex_less(entry->side, best)))) {
          best = entry->side;
          best_value = entry->value;
        }
    for (std::size_t j = 0; j < members[c].size(); ++j) out.side[members[c][j]] = best[j];
  }
  out.value = satisfied_edge_count(inst.edges, out.side);
  return out;
}

TwoAeResult solve_2ae(const Instance& instance, const ProposedSolution& proposal,
                      const SolverOptions& options) {
  const auto translation = csp_to_cut(instance, proposal);
  std::vector<Partition> parts;
  TwoAeResult out;
  for (const auto& comp : translation.components) {
    auto r = cut_improve(comp, options);
    parts.push_back(std::move(r.side));
    out.stats.recurse_steps += r.stats.recurse_steps;
    out.stats.no_progress_fallbacks += r.stats.no_progress_fallbacks;
    out.stats.kq_searches += r.stats.kq_searches;
    out.stats.kq_cuts_found += r.stats.kq_cuts_found;
    out.stats.colorings_tried += r.stats.colorings_tried;
    out.stats.mincut_calls += r.stats.mincut_calls;
    out.stats.exact_kq_fallbacks += r.stats.exact_kq_fallbacks;
    out.stats.max_depth = std::max(out.stats.max_depth, r.stats.max_depth);
    out.stats.timed_out = out.stats.timed_out || r.stats.timed_out;
  }
  out.assignment = translation.lift(parts);
  out.value = satisfied_count(instance, out.assignment);
  return out;
}

}  // namespace imcsp
