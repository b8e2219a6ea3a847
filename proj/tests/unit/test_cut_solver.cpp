#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "imcsp/cut_solver.hpp"
#include "imcsp/generators.hpp"
#include "imcsp/oracle.hpp"
#include "support.hpp"

using namespace imcsp;
using namespace imcsp::test;

namespace {

CutInstance cycle(int n, std::uint8_t type, IdSet proposed, int k) {
  CutInstance g;
  g.num_vertices = n;
  g.k = k;
  for (int i = 0; i < n; ++i) g.edges.push_back(CutEdge{static_cast<EdgeId>(i), i, (i + 1) % n, type});
  g.proposed = std::move(proposed);
  return g;
}

Partition bits_partition(int n, std::uint32_t bits) {
  Partition p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>((bits >> i) & 1U);
  return p;
}

std::size_t brute_min_unsat(int n, const std::vector<CutEdge>& edges) {
  std::size_t best = edges.size();
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits)
    best = std::min(best, edges.size() - satisfied_edge_count(edges, bits_partition(n, bits)));
  return best;
}

TerminalInstance two_cliques(std::int64_t q) {
  TerminalInstance ti;
  ti.num_vertices = 8;
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) ti.edges.push_back(TerminalEdge{base + i, base + j, 0});
  ti.edges.push_back(TerminalEdge{3, 4, 0});
  ti.base.assign(8, 0);
  ti.k = 1;
  ti.q = q;
  return ti;
}

TerminalInstance random_terminal(std::mt19937_64& rng) {
  TerminalInstance ti;
  const int n = 2 + static_cast<int>(rng() % 7);
  ti.num_vertices = n;
  ti.k = static_cast<int>(rng() % 4);
  ti.q = 1 + static_cast<std::int64_t>(rng() % 4);
  for (int v = 1; v < n; ++v)
    ti.edges.push_back(TerminalEdge{static_cast<int>(rng() % v), v, static_cast<std::uint8_t>(rng() & 1U)});
  const int extra = static_cast<int>(rng() % 6);
  for (int i = 0; i < extra; ++i) {
    const int u = static_cast<int>(rng() % n);
    const int v = static_cast<int>(rng() % n);
    if (u != v) ti.edges.push_back(TerminalEdge{u, v, static_cast<std::uint8_t>(rng() & 1U)});
  }
  ti.base.resize(n);
  for (auto& x : ti.base) x = static_cast<std::uint8_t>(rng() & 1U);
  std::vector<int> used(n, 0);
  for (auto& e : ti.edges)
    if (ti.base[e.u] != ti.base[e.v] && !used[e.u] && !used[e.v] && rng() % 3 == 0) {
      e.marked = true;
      used[e.u] = used[e.v] = 1;
    }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % static_cast<std::uint64_t>(i + 1)]);
  const int nt = static_cast<int>(rng() % std::min(n, 4));
  ti.terminals.assign(order.begin(), order.begin() + nt);
  std::sort(ti.terminals.begin(), ti.terminals.end());
  return ti;
}

// Largest value over partitions with the given terminal mask, marked edges cut, distance <= slot.
std::optional<std::size_t> brute_entry(const TerminalInstance& ti, std::uint32_t f, std::size_t slot) {
  std::optional<std::size_t> best;
  for (std::uint32_t bits = 0; bits < (1U << ti.num_vertices); ++bits) {
    const auto s = bits_partition(ti.num_vertices, bits);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < ti.terminals.size(); ++i)
      if (s[ti.terminals[i]]) mask |= 1U << i;
    if (mask != f || !consistent_with_marked(ti, s) || terminal_distance(ti, s) > slot) continue;
    best = std::max(best.value_or(0), terminal_value(ti, s));
  }
  return best;
}

void check_table_exact(const TerminalInstance& ti, const SolutionTable& table) {
  REQUIRE(table_is_valid(ti, table));
  for (std::uint32_t f = 0; f < (1U << ti.terminals.size()); ++f)
    for (std::size_t slot = 0; slot <= static_cast<std::size_t>(ti.k); ++slot) {
      const auto want = brute_entry(ti, f, slot);
      const auto it = table.find(f);
      std::optional<std::size_t> got;
      if (it != table.end() && slot < it->second.size() && it->second[slot]) got = it->second[slot]->value;
      CHECK(got == want);
    }
}

}  // namespace

TEST_CASE("2AE instance to graph") {
  Instance eq;
  eq.num_vars = 2;
  eq.clauses = {sym(0, 2, {0, 2}, {0, 1})};
  auto t = csp_to_cut(eq, ProposedSolution{{0}, 0});
  REQUIRE(t.components.size() == 1);
  REQUIRE(t.components[0].edges.size() == 1);
  CHECK(t.components[0].edges[0].type == 0);
  CHECK(t.components[0].proposed == IdSet{0});

  Instance path;
  path.num_vars = 3;
  path.clauses = {sym(0, 2, {1}, {0, 1}), sym(1, 2, {1}, {1, 2})};
  t = csp_to_cut(path, ProposedSolution{{}, 0});
  REQUIRE(t.components.size() == 1);
  CHECK(t.components[0].edges.size() == 2);
  for (const auto& e : t.components[0].edges) CHECK(e.type == 1);

  // negated literals flip the edge type; x != not-y is x = y
  Instance neg;
  neg.num_vars = 2;
  neg.clauses = {sym(0, 2, {1}, {0, 1}, {0, 1})};
  CHECK(csp_to_cut(neg, ProposedSolution{{}, 0}).components[0].edges[0].type == 0);

  Instance bad;
  bad.num_vars = 3;
  bad.clauses = {sym(0, 3, {0, 3}, {0, 1, 2})};
  CHECK(error_kind_of([&] { csp_to_cut(bad, ProposedSolution{{}, 0}); }) == ErrorKind::Precondition);
}

TEST_CASE("graph round trip preserves satisfied sets") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = generate_2ae_instance(seed, CutParams{2 + static_cast<int>(seed % 7), 8, 2, 0.1});
    const auto t = csp_to_cut(g.instance, g.proposal);
    std::mt19937_64 rng(seed);
    std::vector<Partition> parts;
    std::size_t value = 0;
    for (const auto& c : t.components) {
      Partition p(c.num_vertices);
      for (auto& x : p) x = static_cast<std::uint8_t>(rng() & 1U);
      value += satisfied_edge_count(c.edges, p);
      parts.push_back(std::move(p));
    }
    CHECK(satisfied_count(g.instance, t.lift(parts)) == value);
  }
}

TEST_CASE("satisfied edges") {
  CutInstance g = cycle(3, 0, {}, 0);
  CHECK(satisfied_edges(g.edges, {0, 0, 0}).size() == 3);
  std::vector<CutEdge> one{CutEdge{0, 0, 1, 1}};
  CHECK(satisfied_edges(one, {0, 1}) == IdSet{0});
  CHECK(satisfied_edges(one, {1, 1}).empty());
  std::vector<CutEdge> loops{CutEdge{0, 0, 0, 0}, CutEdge{1, 0, 0, 1}};
  CHECK(satisfied_edges(loops, {1}) == IdSet{0});
}

TEST_CASE("edge set identity: C(A,B) delta C(X,Y) equals E(A,B) delta E(X,Y)") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    const auto g = generate_cut_instance(rng(), CutParams{3 + static_cast<int>(rng() % 6), 10, 1, 0.0}).instance;
    const auto a = bits_partition(g.num_vertices, static_cast<std::uint32_t>(rng()));
    const auto b = bits_partition(g.num_vertices, static_cast<std::uint32_t>(rng()));
    CHECK(neighborhood_distance(satisfied_edges(g.edges, a), satisfied_edges(g.edges, b)) ==
          neighborhood_distance(cut_edges(g.edges, a), cut_edges(g.edges, b)));
  }
}

TEST_CASE("minimum unsatisfied partitions") {
  CHECK(min_unsat_partition(4, cycle(4, 1, {}, 0).edges).unsatisfied == 0);
  CHECK(min_unsat_partition(3, cycle(3, 1, {}, 0).edges).unsatisfied == 1);
  CHECK(mincsp_2ae(3, cycle(3, 1, {}, 0).edges, 0) == std::nullopt);
  CHECK(mincsp_2ae(3, cycle(3, 1, {}, 0).edges, 1).has_value());
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 9);
    std::vector<CutEdge> edges;
    const int m = static_cast<int>(rng() % 14);
    for (int i = 0; i < m; ++i)
      edges.push_back(CutEdge{static_cast<EdgeId>(i), static_cast<int>(rng() % n), static_cast<int>(rng() % n),
                              static_cast<std::uint8_t>(rng() & 1U)});
    const auto r = min_unsat_partition(n, edges);
    CHECK(r.unsatisfied == brute_min_unsat(n, edges));
    CHECK(edges.size() - satisfied_edge_count(edges, r.side) == r.unsatisfied);
  }
}

TEST_CASE("vertex solution from a proposed edge set") {
  auto g = cycle(4, 1, {}, 1);
  const Partition star{0, 1, 0, 1};
  g.proposed = satisfied_edges(g.edges, star);
  auto vs = edge_to_vertex_solution(g);
  CHECK(satisfied_edges(g.edges, vs.side) == g.proposed);

  const auto tri = cycle(3, 1, {0, 1, 2}, 1);
  vs = edge_to_vertex_solution(tri);
  CHECK(satisfied_edge_count(tri.edges, vs.side) >= 2);
  CHECK(vs.budget <= 3);

  // some partition as good as the neighborhood optimum lies within the budget
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto c = generate_cut_instance(seed, CutParams{2 + static_cast<int>(seed % 7), 9, static_cast<int>(seed % 4), 0});
    const auto v = edge_to_vertex_solution(c.instance);
    const auto sat = satisfied_edges(c.instance.edges, v.side);
    CHECK(v.budget <= 3 * c.instance.k);
    const auto target = brute_force_cut(c.instance).neighborhood_optimum;
    bool found = false;
    for (std::uint32_t bits = 0; bits < (1U << c.instance.num_vertices) && !found; ++bits) {
      const auto s = satisfied_edges(c.instance.edges, bits_partition(c.instance.num_vertices, bits));
      found = s.size() >= target && neighborhood_distance(s, sat) <= static_cast<std::size_t>(v.budget);
    }
    CHECK_MESSAGE(found, "seed ", seed);
  }
}

TEST_CASE("balanced cut search") {
  CutStats stats;
  const SolverOptions opts;
  auto ti = two_cliques(6);
  const auto cut = find_kq_cut(ti, opts, stats);
  REQUIRE(cut.has_value());
  CHECK(is_kq_cut(ti, *cut));
  const int left = static_cast<int>(std::count(cut->begin(), cut->end(), 1));
  CHECK(left == 4);
  CHECK((*cut)[3] != (*cut)[4]);

  TerminalInstance k5;
  k5.num_vertices = 5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.edges.push_back(TerminalEdge{i, j, 1});
  k5.base.assign(5, 0);
  k5.k = 3;
  k5.q = 1;
  CHECK_FALSE(find_kq_cut(k5, opts, stats).has_value());

  TerminalInstance k2;
  k2.num_vertices = 2;
  k2.edges = {TerminalEdge{0, 1, 1}};
  k2.base = {0, 0};
  k2.k = 1;
  k2.q = 1;
  CHECK_FALSE(find_kq_cut(k2, opts, stats).has_value());
}

TEST_CASE("balanced cuts agree with bipartition enumeration") {
  std::mt19937_64 rng(12);
  CutStats stats;
  for (int t = 0; t < 300; ++t) {
    auto ti = random_terminal(rng);
    ti.q = 1 + static_cast<std::int64_t>(rng() % 3);
    bool exists = false;
    for (std::uint32_t bits = 1; bits + 1 < (1U << ti.num_vertices) && !exists; ++bits)
      exists = is_kq_cut(ti, bits_partition(ti.num_vertices, bits));
    const auto found = find_kq_cut(ti, SolverOptions{}, stats);
    CHECK(found.has_value() == exists);
    if (found) CHECK(is_kq_cut(ti, *found));
  }
}

TEST_CASE("recursion on the two-clique graph") {
  CutStats stats;
  const SolverOptions opts;
  auto ti = two_cliques(6);
  const auto cut = find_kq_cut(ti, opts, stats);
  REQUIRE(cut.has_value());
  const auto step = recurse_step(ti, *cut, opts, stats, 0);
  CHECK(step.reduced.marked_is_matching());
  CHECK(step.log.decrease > 0);
  CHECK(step.reduced.unmarked_count() < ti.unmarked_count());
  // the bridge (3,4) survives unmarked in the reduced graph
  const int a = step.log.vertex_map[3];
  const int b = step.log.vertex_map[4];
  CHECK(a != b);
  bool bridge = false;
  for (const auto& e : step.reduced.edges)
    bridge = bridge || (std::min(e.u, e.v) == std::min(a, b) && std::max(e.u, e.v) == std::max(a, b));
  CHECK(bridge);
}

TEST_CASE("terminal tables are exact on small instances") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 150; ++t) {
    const auto ti = random_terminal(rng);
    CutStats stats;
    check_table_exact(ti, solve_terminal_no_kqcut(ti, SolverOptions{}, stats));
    check_table_exact(ti, solve_terminal(ti, SolverOptions{}, stats));
  }
}

TEST_CASE("marked edges stay a matching through every recursion step") {
  std::size_t steps = 0;
  SolverOptions opts;
  opts.q_override = 2;
  opts.on_recurse_step = [&](const TerminalInstance& reduced) {
    ++steps;
    CHECK(reduced.marked_is_matching());
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = generate_cut_instance(seed, CutParams{6 + static_cast<int>(seed % 5), 16, 1 + static_cast<int>(seed % 3), 0});
    cut_improve(g.instance, opts);
  }
  CHECK(steps > 0);
}

TEST_CASE("cut_improve toys") {
  CutInstance single;
  single.num_vertices = 2;
  single.edges = {CutEdge{0, 0, 1, 0}};
  single.proposed = {0};
  auto r = cut_improve(single);
  CHECK(r.value == 1);
  CHECK(r.side[0] == r.side[1]);

  auto tri = cycle(3, 1, {}, 2);
  tri.proposed = satisfied_edges(tri.edges, {1, 0, 0});
  CHECK(cut_improve(tri).value == 2);

  auto c5 = cycle(5, 1, {}, 2);
  c5.proposed = satisfied_edges(c5.edges, {0, 1, 0, 1, 0});
  CHECK(brute_force_cut(c5).neighborhood_optimum == 4);
  CHECK(cut_improve(c5).value == 4);

  auto all = cycle(3, 1, {0, 1, 2}, 1);
  CHECK(cut_improve(all).value >= 2);
}

TEST_CASE("cut_improve matches the oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const auto g = generate_cut_instance(seed, CutParams{n, n - 1 + static_cast<int>(seed % 7), static_cast<int>(seed % 4), 0.05});
    const auto o = brute_force_cut(g.instance);
    REQUIRE(o.promise_holds);
    SolverOptions opts;
    opts.q_override = 1 + static_cast<std::int64_t>(seed % 8);
    const auto r = cut_improve(g.instance, opts);
    CHECK_MESSAGE(r.value >= o.neighborhood_optimum, "seed ", seed);
    CHECK(r.value == satisfied_edge_count(g.instance.edges, r.side));
  }
}

TEST_CASE("2AE solver matches the oracle through the translation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = generate_2ae_instance(seed, CutParams{2 + static_cast<int>(seed % 6), 8, static_cast<int>(seed % 3), 0});
    const auto o = brute_force_improve(g.instance, g.proposal);
    const auto r = solve_2ae(g.instance, g.proposal);
    CHECK(r.value >= o.neighborhood_optimum);
    CHECK(r.value == satisfied_count(g.instance, r.assignment));
  }
}

TEST_CASE("default q and guards") {
  CHECK(default_q(1) == 16);
  CHECK(default_q(2) == 256);
  CutInstance bad;
  bad.num_vertices = 2;
  bad.edges = {CutEdge{0, 0, 2, 0}};
  CHECK(error_kind_of([&] { cut_improve(bad); }) == ErrorKind::Structural);
}
