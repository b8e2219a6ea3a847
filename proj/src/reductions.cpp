#include "imcsp/reductions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

std::uint32_t ae_mask(int r) { return 1U | (1U << r); }

bool is_ae_clause(const Clause& c) {
  return c.arity() >= 1 && c.language.mask() == ae_mask(c.arity());
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

struct Builder {
  ReducedInstance out;
  void add(int r, std::uint32_t mask, std::vector<int> scope, std::vector<std::uint8_t> neg, bool in_p) {
    const ClauseId id = out.instance.clauses.size();
    out.instance.clauses.push_back(make_clause(id, SymmetricLanguage(r, mask), std::move(scope), std::move(neg)));
    if (in_p) out.proposal.clause_ids.insert(id);
  }
};

}  // namespace

// ---- source problems -------------------------------------------------------

void PairedMinCutInstance::validate() const {
  const int n = num_vertices;
  if (n < 2 || s < 0 || s >= n || t < 0 || t >= n || s == t)
    fail(ErrorKind::Structural, "paired cut: s and t must be distinct vertices");
  if (l < 1) fail(ErrorKind::Structural, "paired cut: l must be positive");
  for (const auto& e : edges)
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
      fail(ErrorKind::Structural, "paired cut: bad edge endpoint");
  // acyclic
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges) {
    ++indeg[e.v];
    out[e.u].push_back(e.v);
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t seen = 0;
  while (seen < queue.size()) {
    const int u = queue[seen++];
    for (int w : out[u])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  if (queue.size() != static_cast<std::size_t>(n)) fail(ErrorKind::Structural, "paired cut: graph has a cycle");

  std::vector<int> pair_uses(edges.size(), 0);
  for (const auto& [a, b] : pairs) {
    if (a >= edges.size() || b >= edges.size() || a == b)
      fail(ErrorKind::Structural, "paired cut: bad pair");
    ++pair_uses[a];
    ++pair_uses[b];
  }
  if (std::any_of(pair_uses.begin(), pair_uses.end(), [](int x) { return x != 1; }))
    fail(ErrorKind::Structural, "paired cut: pairs must partition the edges");

  if (paths.size() != static_cast<std::size_t>(2 * l))
    fail(ErrorKind::Structural, "paired cut: expected exactly 2l paths");
  std::vector<int> path_uses(edges.size(), 0);
  for (const auto& path : paths) {
    if (path.empty()) fail(ErrorKind::Structural, "paired cut: empty path");
    int at = s;
    for (auto e : path) {
      if (e >= edges.size() || edges[e].u != at) fail(ErrorKind::Structural, "paired cut: path is not a walk from s");
      ++path_uses[e];
      at = edges[e].v;
    }
    if (at != t) fail(ErrorKind::Structural, "paired cut: path does not end at t");
  }
  if (std::any_of(path_uses.begin(), path_uses.end(), [](int x) { return x != 1; }))
    fail(ErrorKind::Structural, "paired cut: paths must partition the edges");
}

bool is_st_cut(const PairedMinCutInstance& src, const std::vector<std::size_t>& cut) {
  std::vector<std::uint8_t> removed(src.edges.size(), 0);
  for (auto e : cut) {
    if (e >= src.edges.size()) fail(ErrorKind::Structural, "cut edge out of range");
    removed[e] = 1;
  }
  std::vector<std::uint8_t> reach(src.num_vertices, 0);
  reach[src.s] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < src.edges.size(); ++i)
      if (!removed[i] && reach[src.edges[i].u] && !reach[src.edges[i].v]) {
        reach[src.edges[i].v] = 1;
        changed = true;
      }
  }
  return !reach[src.t];
}

std::size_t pairs_touched(const PairedMinCutInstance& src, const std::vector<std::size_t>& cut) {
  std::set<std::size_t> in(cut.begin(), cut.end());
  std::size_t c = 0;
  for (const auto& [a, b] : src.pairs) c += in.contains(a) || in.contains(b);
  return c;
}

void MulticoloredISInstance::validate(bool forbid_isolated) const {
  if (num_vertices < 1) fail(ErrorKind::Structural, "mcis: no vertices");
  std::vector<int> part_of(num_vertices, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) fail(ErrorKind::Structural, "mcis: empty part");
    for (int v : parts[i]) {
      if (v < 0 || v >= num_vertices || part_of[v] >= 0)
        fail(ErrorKind::Structural, "mcis: parts must be disjoint and in range");
      part_of[v] = static_cast<int>(i);
    }
  }
  if (std::count(part_of.begin(), part_of.end(), -1) > 0)
    fail(ErrorKind::Structural, "mcis: parts must cover every vertex");
  std::vector<int> degree(num_vertices, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices || u == v)
      fail(ErrorKind::Structural, "mcis: bad edge");
    ++degree[u];
    ++degree[v];
  }
  if (forbid_isolated)
    for (int v = 0; v < num_vertices; ++v)
      if (degree[v] == 0)
        fail(ErrorKind::Precondition, "mcis: vertex " + std::to_string(v) + " is isolated");
}

bool is_multicolored_independent_set(const MulticoloredISInstance& src, const std::vector<int>& set) {
  std::vector<std::uint8_t> in(src.num_vertices, 0);
  for (int v : set) {
    if (v < 0 || v >= src.num_vertices || in[v]) return false;
    in[v] = 1;
  }
  for (const auto& part : src.parts)
    if (std::count_if(part.begin(), part.end(), [&](int v) { return in[v] != 0; }) != 1) return false;
  return std::none_of(src.edges.begin(), src.edges.end(),
                      [&](const auto& e) { return in[e.first] && in[e.second]; });
}

// ---- reductions ------------------------------------------------------------

ReducedInstance mincsp_to_improve(const Instance& instance, int k) {
  instance.validate();
  if (k < 0) fail(ErrorKind::Structural, "budget k must be nonnegative");
  return ReducedInstance{instance, ProposedSolution{instance.all_ids(), k}};
}

ReducedInstance pad_ae(const Instance& instance, const ProposedSolution& proposal) {
  instance.validate();
  validate_proposal(instance, proposal);
  ReducedInstance out;
  out.instance.num_vars = instance.num_vars + static_cast<int>(instance.clauses.size());
  out.proposal = proposal;
  for (std::size_t i = 0; i < instance.clauses.size(); ++i) {
    const auto& c = instance.clauses[i];
    if (!is_ae_clause(c))
      fail(ErrorKind::Precondition, "clause " + std::to_string(c.id) + " over " + c.language.describe() +
                                        " is not an all-equal clause");
    auto scope = c.scope;
    auto neg = c.negation;
    scope.push_back(instance.num_vars + static_cast<int>(i));
    neg.push_back(c.negation[0]);
    const int r = c.arity() + 1;
    out.instance.clauses.push_back(make_clause(c.id, SymmetricLanguage(r, ae_mask(r)), std::move(scope), std::move(neg)));
  }
  return out;
}

ReducedInstance lift_ae_union(const Instance& instance, const ProposedSolution& proposal, int r) {
  instance.validate();
  validate_proposal(instance, proposal);
  ReducedInstance out;
  out.proposal = proposal;
  int next = instance.num_vars;
  for (const auto& c : instance.clauses) {
    if (!is_ae_clause(c))
      fail(ErrorKind::Precondition, "clause " + std::to_string(c.id) + " is not an all-equal clause");
    if (c.arity() > r) fail(ErrorKind::Precondition, "clause arity exceeds the target arity");
    auto scope = c.scope;
    auto neg = c.negation;
    while (static_cast<int>(scope.size()) < r) {
      scope.push_back(next++);
      neg.push_back(c.negation[0]);
    }
    out.instance.clauses.push_back(make_clause(c.id, SymmetricLanguage(r, ae_mask(r)), std::move(scope), std::move(neg)));
  }
  out.instance.num_vars = next;
  return out;
}

ReducedInstance paired_cut_to_4ae(const PairedMinCutInstance& src) {
  src.validate();
  Builder b;
  b.out.instance.num_vars = src.num_vertices;
  for (const auto& e : src.edges) b.add(2, ae_mask(2), {e.u, e.v}, {0, 0}, true);
  for (const auto& [i, j] : src.pairs) {
    const auto& e1 = src.edges[i];
    const auto& e2 = src.edges[j];
    // x_u1 = not x_v1 = x_u2 = not x_v2
    b.add(4, ae_mask(4), {e1.u, e1.v, e2.u, e2.v}, {0, 1, 0, 1}, false);
  }
  for (int c = 0; c < src.l + 1; ++c) b.add(2, ae_mask(2), {src.s, src.t}, {0, 1}, false);
  b.out.proposal.budget = 4 * src.l + 1;
  return b.out;
}

ReducedInstance paired_cut_to_3ae(const PairedMinCutInstance& src) {
  src.validate();
  Builder b;
  b.out.instance.num_vars = src.num_vertices;
  for (const auto& e : src.edges)
    for (int c = 0; c < 5; ++c) b.add(2, ae_mask(2), {e.u, e.v}, {0, 0}, true);
  for (const auto& [i, j] : src.pairs) {
    const int u1 = src.edges[i].u, v1 = src.edges[i].v;
    const int u2 = src.edges[j].u, v2 = src.edges[j].v;
    // drop one variable of the 4AE pair clause, in the order v1, u1, v2, u2
    const std::vector<std::pair<std::vector<int>, std::vector<std::uint8_t>>> triples = {
        {{u1, u2, v2}, {0, 0, 1}},
        {{v1, u2, v2}, {1, 0, 1}},
        {{u1, v1, u2}, {0, 1, 0}},
        {{u1, v1, v2}, {0, 1, 1}},
    };
    for (const auto& [scope, neg] : triples)
      for (int c = 0; c < 2; ++c) b.add(3, ae_mask(3), scope, neg, false);
  }
  for (int c = 0; c < 2 * src.l + 1; ++c) b.add(2, ae_mask(2), {src.s, src.t}, {0, 1}, false);
  b.out.proposal.budget = 20 * src.l + 1;
  return b.out;
}

ReducedInstance mcis_to_2sat(const MulticoloredISInstance& src) {
  src.validate(true);
  Builder b;
  b.out.instance.num_vars = src.num_vertices;
  for (int u = 0; u < src.num_vertices; ++u) b.add(1, 0b10U, {u}, {1}, false);
  const std::uint32_t or_mask = 0b110U;  // at least one true literal
  for (const auto& [u, v] : src.edges)
    for (int c = 0; c < 2; ++c) b.add(2, or_mask, {u, v}, {0, 0}, true);
  for (const auto& part : src.parts)
    for (std::size_t i = 0; i < part.size(); ++i)
      for (std::size_t j = i + 1; j < part.size(); ++j)
        for (int c = 0; c < 2; ++c) b.add(2, or_mask, {part[i], part[j]}, {0, 0}, true);
  b.out.proposal.budget = src.l();
  return b.out;
}

ReducedInstance twosat_to_le1(const Instance& instance, const ProposedSolution& proposal, int r) {
  instance.validate();
  validate_proposal(instance, proposal);
  if (r < 3) fail(ErrorKind::Precondition, "target arity must be at least 3");
  ReducedInstance out;
  out.proposal = proposal;
  out.instance.num_vars = instance.num_vars + (r - 2);
  const std::uint32_t le1 = (1U << r) | (1U << (r - 1));
  for (const auto& c : instance.clauses) {
    auto neg = c.negation;
    const auto m = c.language.mask();
    // disjunctions, written either as {≥1 true} or as {≥1 false} with flipped literals
    if (c.arity() == 2 && m == 0b011U) {
      for (auto& x : neg) x ^= 1;
    } else if (c.arity() == 1 && m == 0b01U) {
      neg[0] ^= 1;
    } else if (!((c.arity() == 2 && m == 0b110U) || (c.arity() == 1 && m == 0b10U))) {
      fail(ErrorKind::Precondition, "clause " + std::to_string(c.id) + " over " + c.language.describe() +
                                        " is not a 1- or 2-clause");
    }
    std::vector<int> scope = c.scope;
    if (c.arity() == 1) {
      scope.push_back(c.scope[0]);
      neg.push_back(neg[0]);
    }
    for (int i = 0; i < r - 2; ++i) {
      scope.push_back(instance.num_vars + i);
      neg.push_back(0);
    }
    out.instance.clauses.push_back(make_clause(c.id, SymmetricLanguage(r, le1), std::move(scope), std::move(neg)));
  }
  return out;
}

// ---- decoders --------------------------------------------------------------

std::optional<std::vector<std::size_t>> decode_paired_cut(const Assignment& assignment,
                                                         const PairedMinCutInstance& src,
                                                         const ReducedInstance& reduced) {
  if (assignment.size() != static_cast<std::size_t>(reduced.instance.num_vars) ||
      reduced.instance.num_vars < src.num_vertices)
    fail(ErrorKind::Structural, "assignment length does not match the reduced instance");
  const auto value = satisfied_count(reduced.instance, assignment);
  if (value <= reduced.proposal.clause_ids.size()) return std::nullopt;
  std::vector<std::size_t> cut;
  for (std::size_t i = 0; i < src.edges.size(); ++i)
    if (assignment[src.edges[i].u] != assignment[src.edges[i].v]) cut.push_back(i);
  if (!is_st_cut(src, cut))
    fail(ErrorKind::Internal, "decoded edge set is not an s-t cut");
  if (pairs_touched(src, cut) > static_cast<std::size_t>(src.l))
    fail(ErrorKind::Internal, "decoded cut touches more than l pairs");
  return cut;
}

std::optional<std::vector<int>> decode_mcis(const Assignment& assignment, const MulticoloredISInstance& src,
                                            const ReducedInstance& reduced) {
  if (assignment.size() != static_cast<std::size_t>(reduced.instance.num_vars) ||
      reduced.instance.num_vars != src.num_vertices)
    fail(ErrorKind::Structural, "assignment length does not match the reduced instance");
  const auto value = satisfied_count(reduced.instance, assignment);
  if (value < reduced.proposal.clause_ids.size() + static_cast<std::size_t>(src.l())) return std::nullopt;
  std::vector<int> zeros;
  for (int v = 0; v < src.num_vertices; ++v)
    if (!assignment[v]) zeros.push_back(v);
  if (!is_multicolored_independent_set(src, zeros))
    fail(ErrorKind::Internal, "decoded zero set is not a multicolored independent set");
  return zeros;
}

// ---- generators ------------------------------------------------------------

PairedMinCutInstance generate_paired_cut(std::uint64_t seed, const PairedCutParams& params) {
  if (params.l < 1 || params.internal_vertices < 0 || params.max_path_length < 0)
    fail(ErrorKind::Structural, "paired cut generator: bad parameters");
  std::mt19937_64 rng(seed);
  const int paths = 2 * params.l;
  const int room = std::min(params.max_path_length, params.internal_vertices);
  std::vector<std::vector<int>> chosen;
  for (;;) {
    chosen.assign(paths, {});
    std::size_t edges = 0;
    for (auto& path : chosen) {
      const int len = static_cast<int>(below(rng, room + 1));
      std::vector<int> pool(params.internal_vertices);
      for (int i = 0; i < params.internal_vertices; ++i) pool[i] = i;
      for (int i = 0; i < len; ++i) std::swap(pool[i], pool[i + below(rng, pool.size() - i)]);
      path.assign(pool.begin(), pool.begin() + len);
      std::sort(path.begin(), path.end());
      edges += path.size() + 1;
    }
    if (edges % 2 == 0) break;
  }
  // keep only internal vertices that some path uses, in rank order
  std::vector<int> index(params.internal_vertices, -1);
  for (const auto& path : chosen)
    for (int v : path) index[v] = 0;
  PairedMinCutInstance out;
  out.s = 0;
  out.t = 1;
  out.l = params.l;
  out.num_vertices = 2;
  for (int v = 0; v < params.internal_vertices; ++v)
    if (index[v] == 0) index[v] = out.num_vertices++;
  for (const auto& path : chosen) {
    std::vector<std::size_t> ids;
    int at = out.s;
    for (int v : path) {
      ids.push_back(out.edges.size());
      out.edges.push_back({at, index[v]});
      at = index[v];
    }
    ids.push_back(out.edges.size());
    out.edges.push_back({at, out.t});
    out.paths.push_back(std::move(ids));
  }
  std::vector<std::size_t> order(out.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);
  for (std::size_t i = 0; i + 1 < order.size(); i += 2)
    out.pairs.emplace_back(std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]));
  std::sort(out.pairs.begin(), out.pairs.end());
  out.validate();
  return out;
}

MulticoloredISInstance generate_mcis(std::uint64_t seed, const McisParams& params) {
  if (params.l < 2 || params.vertices < params.l)
    fail(ErrorKind::Structural, "mcis generator: need l >= 2 and at least l vertices");
  std::mt19937_64 rng(seed);
  const int n = params.vertices;
  std::vector<int> part_of(n);
  for (int v = 0; v < n; ++v) part_of[v] = v < params.l ? v : static_cast<int>(below(rng, params.l));
  MulticoloredISInstance out;
  out.num_vertices = n;
  out.parts.assign(params.l, {});
  for (int v = 0; v < n; ++v) out.parts[part_of[v]].push_back(v);
  std::vector<int> degree(n, 0);
  const auto threshold = static_cast<std::uint64_t>(params.edge_probability * 9007199254740992.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v] && (rng() >> 11) < threshold) {
        out.edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
  for (int u = 0; u < n; ++u) {
    if (degree[u] > 0) continue;
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
      if (part_of[v] != part_of[u]) others.push_back(v);
    const int v = others[below(rng, others.size())];
    out.edges.emplace_back(std::min(u, v), std::max(u, v));
    ++degree[u];
    ++degree[v];
  }
  out.validate(true);
  return out;
}

}  // namespace imcsp
