#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "imcsp/and_solver.hpp"
#include "imcsp/generators.hpp"
#include "imcsp/oracle.hpp"
#include "imcsp/reductions.hpp"
#include "support.hpp"

using namespace imcsp;
using namespace imcsp::test;

namespace {

PairedMinCutInstance toy_paired() {
  PairedMinCutInstance p;
  p.num_vertices = 2;
  p.l = 1;
  p.edges = {{0, 1}, {0, 1}};
  p.pairs = {{0, 1}};
  p.paths = {{0}, {1}};
  return p;
}

std::size_t count_language(const Instance& inst, int r, std::uint32_t mask) {
  std::size_t n = 0;
  for (const auto& c : inst.clauses) n += c.arity() == r && c.language.mask() == mask;
  return n;
}

// Binary clauses x = y, and x != y written as x = not-y.
bool is_inequality(const Clause& c) {
  return c.arity() == 2 && ((c.language.mask() == 0b101U && c.negation[0] != c.negation[1]) ||
                            (c.language.mask() == 0b010U && c.negation[0] == c.negation[1]));
}
std::size_t count_inequalities(const Instance& inst) {
  return static_cast<std::size_t>(std::count_if(inst.clauses.begin(), inst.clauses.end(), is_inequality));
}
std::size_t count_equalities(const Instance& inst) {
  std::size_t n = 0;
  for (const auto& c : inst.clauses) n += c.arity() == 2 && (c.language.mask() == 0b101U || c.language.mask() == 0b010U) && !is_inequality(c);
  return n;
}

Instance random_ae(std::mt19937_64& rng) {
  Instance inst;
  inst.num_vars = 2 + static_cast<int>(rng() % 4);
  const int m = 1 + static_cast<int>(rng() % 5);
  for (int c = 0; c < m; ++c) {
    const int r = 2 + static_cast<int>(rng() % 2);
    std::vector<int> scope;
    std::vector<std::uint8_t> neg;
    for (int i = 0; i < r; ++i) {
      scope.push_back(static_cast<int>(rng() % inst.num_vars));
      neg.push_back(static_cast<std::uint8_t>(rng() & 1U));
    }
    inst.clauses.push_back(make_clause(c, SymmetricLanguage(r, 1U | (1U << r)), scope, neg));
  }
  return inst;
}

// Best value over all subsets of satisfied sets within distance k of P.
std::optional<std::size_t> down_closure_optimum(const Instance& inst, const ProposedSolution& p) {
  std::optional<std::size_t> best;
  for (std::uint64_t bits = 0; bits < (1ULL << inst.num_vars); ++bits) {
    const auto s = satisfied_set(inst, all_assignments_at(inst.num_vars, bits));
    const std::vector<ClauseId> ids(s.begin(), s.end());
    for (std::uint32_t sub = 0; sub < (1U << ids.size()); ++sub) {
      IdSet t;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if ((sub >> i) & 1U) t.insert(ids[i]);
      if (neighborhood_distance(t, p.clause_ids) <= static_cast<std::size_t>(p.budget))
        best = std::max(best.value_or(0), t.size());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("MinCSP to ImproveMaxCSP") {
  Instance inst;
  inst.num_vars = 2;
  inst.clauses = {conj(0, {0}), conj(1, {1}), conj(2, {0, 1}, {1, 1})};
  const auto red = mincsp_to_improve(inst, 1);
  CHECK(red.proposal.clause_ids == IdSet{0, 1, 2});
  CHECK(red.proposal.budget == 1);

  Instance sat;
  sat.num_vars = 3;
  sat.clauses = {conj(0, {0, 1}), conj(1, {2}, {1})};
  const auto r0 = mincsp_to_improve(sat, 0);
  CHECK(cost(sat, solve_and(r0.instance, r0.proposal).assignment) == 0);

  // unsatisfiable within k = 1: the solver's answer must cost more than 1
  Instance hard;
  hard.num_vars = 1;
  hard.clauses = {conj(0, {0}), conj(1, {0}), conj(2, {0}, {1}), conj(3, {0}, {1})};
  const auto r1 = mincsp_to_improve(hard, 1);
  CHECK(brute_force_mincsp(hard).min_cost == 2);
  CHECK(cost(hard, solve_and(r1.instance, r1.proposal).assignment) > 1);
}

TEST_CASE("MinCSP oracle matches ImproveMaxCSP with P = C") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng, 1 + static_cast<int>(rng() % 6), static_cast<int>(rng() % 8), 3);
    const auto m = brute_force_mincsp(inst);
    const auto k = static_cast<int>(m.min_cost);
    const auto red = mincsp_to_improve(inst, k);
    const auto o = brute_force_improve(red.instance, red.proposal);
    CHECK(o.promise_holds);
    CHECK(inst.clauses.size() - o.neighborhood_optimum == m.min_cost);
  }
}

TEST_CASE("padding all-equal clauses") {
  Instance inst;
  inst.num_vars = 3;
  inst.clauses = {sym(0, 3, {0, 3}, {0, 1, 2}, {0, 1, 0})};
  const auto red = pad_ae(inst, ProposedSolution{{0}, 1});
  REQUIRE(red.instance.clauses.size() == 1);
  const auto& c = red.instance.clauses[0];
  CHECK(c.arity() == 4);
  CHECK(c.language.mask() == 0b10001U);
  CHECK(c.scope == std::vector<int>{0, 1, 2, 3});
  CHECK(c.negation == std::vector<std::uint8_t>{0, 1, 0, 0});
  CHECK(red.instance.num_vars == 4);

  const auto empty = pad_ae(Instance{}, ProposedSolution{});
  CHECK(empty.instance.clauses.empty());

  Instance bad;
  bad.num_vars = 2;
  bad.clauses = {sym(0, 2, {1}, {0, 1})};
  CHECK(error_kind_of([&] { pad_ae(bad, ProposedSolution{}); }) == ErrorKind::Precondition);
}

TEST_CASE("padded profiles equal the down-closed profile of the source") {
  std::mt19937_64 rng(3);
  std::size_t promise_holding = 0;
  std::size_t differs = 0;
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_ae(rng);
    ProposedSolution p;
    for (ClauseId c = 0; c < inst.clauses.size(); ++c)
      if (rng() & 1U) p.clause_ids.insert(c);
    p.budget = static_cast<int>(rng() % 3);
    const auto src = brute_force_improve(inst, p);
    for (const auto& red : {pad_ae(inst, p), lift_ae_union(inst, p, 5)}) {
      const auto o = brute_force_improve(red.instance, red.proposal);
      const auto want = down_closure_optimum(inst, p);
      CHECK(o.promise_holds == want.has_value());
      if (want) CHECK(o.neighborhood_optimum == *want);
      for (const auto& c : red.instance.clauses) CHECK(c.language.mask() == (1U | (1U << c.arity())));
    }
    if (src.promise_holds) {
      ++promise_holding;
      differs += brute_force_improve(pad_ae(inst, p).instance, p).neighborhood_optimum != src.neighborhood_optimum;
    }
  }
  // a padded clause can be broken by its fresh variable, so the source profile is not always kept
  MESSAGE("promise-holding sources whose padded optimum differs: ", differs, " of ", promise_holding);
  CHECK(differs < promise_holding);
}

TEST_CASE("paired cut to 4AE on the toy source") {
  const auto src = toy_paired();
  const auto red = paired_cut_to_4ae(src);
  CHECK(red.instance.clauses.size() == 5);
  CHECK(count_equalities(red.instance) == 2);
  CHECK(count_language(red.instance, 4, 0b10001U) == 1);
  CHECK(count_inequalities(red.instance) == 2);
  CHECK(red.proposal.clause_ids.size() == 2);
  CHECK(red.proposal.budget == 5);
  Assignment a(red.instance.num_vars, 0);
  CHECK(satisfied_set(red.instance, a) == red.proposal.clause_ids);
  a[src.t] = 1;
  CHECK(satisfied_count(red.instance, a) == 3);
  CHECK(brute_force_improve(red.instance, red.proposal).neighborhood_optimum == 3);
}

TEST_CASE("paired cut to 3AE on the toy source") {
  const auto src = toy_paired();
  const auto red = paired_cut_to_3ae(src);
  CHECK(count_equalities(red.instance) == 10);
  CHECK(count_language(red.instance, 3, 0b1001U) == 8);
  CHECK(count_inequalities(red.instance) == 3);
  CHECK(red.instance.clauses.size() == 21);
  CHECK(red.proposal.clause_ids.size() == 10);
  CHECK(red.proposal.budget == 21);
  const auto o = brute_force_improve(red.instance, red.proposal);
  CHECK(o.neighborhood_optimum == 11);
  const auto z = decode_paired_cut(o.neighborhood_witness, src, red);
  REQUIRE(z.has_value());
  CHECK(*z == std::vector<std::size_t>{0, 1});
  CHECK(pairs_touched(src, *z) == 1);
  CHECK_FALSE(decode_paired_cut(Assignment(red.instance.num_vars, 0), src, red).has_value());
}

TEST_CASE("a pair with exactly one cut edge satisfies exactly one triple clause") {
  const auto red = paired_cut_to_3ae(toy_paired());
  // triple clauses are those of arity 3; the toy pair uses variables s (0) and t (1) only,
  // so test the gadget directly on four fresh variables instead
  Instance gadget;
  gadget.num_vars = 4;  // u1 v1 u2 v2
  for (const auto& c : red.instance.clauses)
    if (c.arity() == 3) REQUIRE(c.language.mask() == 0b1001U);
  const std::vector<std::pair<std::vector<int>, std::vector<std::uint8_t>>> triples = {
      {{0, 2, 3}, {0, 0, 1}}, {{1, 2, 3}, {1, 0, 1}}, {{0, 1, 2}, {0, 1, 0}}, {{0, 1, 3}, {0, 1, 1}}};
  for (std::size_t i = 0; i < triples.size(); ++i)
    gadget.clauses.push_back(make_clause(i, SymmetricLanguage(3, 0b1001U), triples[i].first, triples[i].second));
  int relevant = 0;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto a = all_assignments_at(4, bits);
    const int cut = (a[0] != a[1]) + (a[2] != a[3]);
    if (cut != 1) continue;
    ++relevant;
    CHECK(satisfied_count(gadget, a) == 1);
  }
  CHECK(relevant == 8);
}

TEST_CASE("paired cut reductions scale with l") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PairedCutParams params{1 + static_cast<int>(seed % 2), 4, 2};
    const auto src = generate_paired_cut(seed, params);
    const auto r4 = paired_cut_to_4ae(src);
    const auto r3 = paired_cut_to_3ae(src);
    const std::size_t m = src.edges.size();
    const int l = src.l;
    CHECK(r4.proposal.budget == 4 * l + 1);
    CHECK(r3.proposal.budget == 20 * l + 1);
    CHECK(r4.instance.clauses.size() == m + src.pairs.size() + static_cast<std::size_t>(l + 1));
    CHECK(r3.instance.clauses.size() == 5 * m + 8 * src.pairs.size() + static_cast<std::size_t>(2 * l + 1));
    CHECK(r4.proposal.clause_ids.size() == m);
    CHECK(r3.proposal.clause_ids.size() == 5 * m);
    const Assignment zero(r3.instance.num_vars, 0);
    CHECK(satisfied_set(r3.instance, zero) == r3.proposal.clause_ids);
  }
}

TEST_CASE("paired cut validation") {
  auto p = toy_paired();
  CHECK_NOTHROW(p.validate());
  p.paths = {{0}};
  CHECK(error_kind_of([&] { p.validate(); }) == ErrorKind::Structural);
  p = toy_paired();
  p.edges.push_back({1, 0});
  CHECK(error_kind_of([&] { p.validate(); }) != static_cast<ErrorKind>(-1));
}

TEST_CASE("multicolored independent set to 2SAT") {
  MulticoloredISInstance m;
  m.num_vertices = 2;
  m.parts = {{0}, {1}};
  m.edges = {{0, 1}};
  const auto red = mcis_to_2sat(m);
  CHECK(red.proposal.budget == 2);
  CHECK(red.proposal.clause_ids.size() == 2);
  CHECK(red.instance.clauses.size() == 4);
  const auto o = brute_force_improve(red.instance, red.proposal);
  // one vertex at zero already gains a unit clause; no independent set means no |P| + l
  CHECK(o.neighborhood_optimum == 3);
  CHECK_FALSE(decode_mcis(o.neighborhood_witness, m, red).has_value());

  MulticoloredISInstance isolated;
  isolated.num_vertices = 2;
  isolated.parts = {{0}, {1}};
  CHECK(error_kind_of([&] { mcis_to_2sat(isolated); }) == ErrorKind::Precondition);
}

TEST_CASE("decoded zero sets are multicolored independent sets") {
  int solvable = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const McisParams params{2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed % 2) + static_cast<int>(seed % 3), 0.4};
    const auto src = generate_mcis(seed, params);
    const auto red = mcis_to_2sat(src);
    CHECK(red.proposal.budget == src.l());
    const auto o = brute_force_improve(red.instance, red.proposal);
    const bool exists = brute_force_mcis(src).has_value();
    const auto size_p = red.proposal.clause_ids.size();
    CHECK((o.neighborhood_optimum == size_p + static_cast<std::size_t>(src.l())) == exists);
    const auto set = decode_mcis(o.neighborhood_witness, src, red);
    CHECK(set.has_value() == exists);
    if (set) {
      CHECK(is_multicolored_independent_set(src, *set));
      ++solvable;
    }
  }
  CHECK(solvable > 0);
}

TEST_CASE("2SAT to at-most-one-false") {
  Instance inst;
  inst.num_vars = 2;
  inst.clauses = {make_clause(0, SymmetricLanguage(2, 0b110U), {0, 1}, {0, 0})};
  const auto red = twosat_to_le1(inst, ProposedSolution{{0}, 1}, 3);
  REQUIRE(red.instance.clauses.size() == 1);
  const auto& c = red.instance.clauses[0];
  CHECK(c.language.mask() == 0b1100U);
  CHECK(c.scope == std::vector<int>{0, 1, 2});
  CHECK(red.instance.num_vars == 3);
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    const auto a = all_assignments_at(3, bits);
    const bool want = (a[0] || a[1]) && (a[0] || a[2]) && (a[1] || a[2]);
    CHECK(eval_clause(c, a) == want);
  }
  CHECK(error_kind_of([&] { twosat_to_le1(inst, ProposedSolution{}, 2); }) == ErrorKind::Precondition);
}

TEST_CASE("at-most-one-false lifting keeps the profile of the independent-set instances") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const McisParams params{2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed % 2) + static_cast<int>(seed % 3), 0.4};
    const auto src = mcis_to_2sat(generate_mcis(seed, params));
    for (int r = 3; r <= 4; ++r) {
      const auto red = twosat_to_le1(src.instance, src.proposal, r);
      const auto a = brute_force_improve(src.instance, src.proposal);
      const auto b = brute_force_improve(red.instance, red.proposal);
      CHECK(a.promise_holds == b.promise_holds);
      CHECK(a.neighborhood_optimum == b.neighborhood_optimum);
      // every optimal neighbor sets the helpers to one
      for (const auto& g : good_neighbors(red.instance, red.proposal, b.neighborhood_optimum))
        for (int v = src.instance.num_vars; v < red.instance.num_vars; ++v) CHECK(g[v] == 1);
    }
  }
}

TEST_CASE("generators produce valid sources deterministically") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = generate_paired_cut(seed, PairedCutParams{2, 6, 3});
    CHECK_NOTHROW(a.validate());
    CHECK(a.paths.size() == 4);
    const auto b = generate_paired_cut(seed, PairedCutParams{2, 6, 3});
    CHECK(a.edges.size() == b.edges.size());
    CHECK(a.pairs == b.pairs);
    const auto m = generate_mcis(seed, McisParams{3, 6, 0.3});
    CHECK_NOTHROW(m.validate());
    CHECK(m.l() == 3);
  }
}
