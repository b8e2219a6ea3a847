#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imcsp/core.hpp"
#include "support.hpp"

using namespace imcsp;
using namespace imcsp::test;

TEST_CASE("eval_clause on small relations") {
  CHECK(eval_clause(sym(0, 2, {0, 2}, {0, 1}), {0, 0}));
  CHECK(eval_clause(sym(0, 3, {3}, {0, 1, 2}, {1, 0, 0}), {0, 1, 1}));
  CHECK_FALSE(eval_clause(sym(0, 2, {1}, {0, 1}), {1, 1}));
}

TEST_CASE("satisfied_set and cost") {
  Instance empty;
  CHECK(satisfied_set(empty, {}).empty());
  CHECK(cost(empty, {}) == 0);

  Instance inst;
  inst.num_vars = 2;
  inst.clauses = {sym(0, 2, {0, 2}, {0, 1}), sym(1, 2, {1}, {0, 1})};
  CHECK(satisfied_set(inst, {0, 0}) == IdSet{0});
  for (std::uint64_t bits = 0; bits < 4; ++bits) CHECK(cost(inst, all_assignments_at(2, bits)) == 1);
}

TEST_CASE("neighborhood distance") {
  CHECK(neighborhood_distance({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(neighborhood_distance({1, 2}, {2, 3}) == 2);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    IdSet a, b;
    for (ClauseId i = 0; i < 12; ++i) {
      if (rng() & 1U) a.insert(i);
      if (rng() & 1U) b.insert(i);
    }
    std::size_t manual = 0;
    for (auto x : a) manual += !b.contains(x);
    for (auto x : b) manual += !a.contains(x);
    CHECK(neighborhood_distance(a, b) == manual);
  }
}

TEST_CASE("normalize_language picks one representative per complement pair") {
  const std::vector<int> three{3};
  const std::vector<int> zero{0};
  CHECK(normalize_language(3, three) == normalize_language(3, zero));
  CHECK(normalize_language(3, three) == SymmetricLanguage::from_counts(3, three));
  CHECK(normalize_language(3, zero).is_conjunction());
  const std::vector<int> eq{0, 2};
  CHECK(normalize_language(2, eq) == SymmetricLanguage::from_counts(2, eq));
  const std::vector<int> odd{1, 3};
  CHECK(normalize_language(4, odd) == SymmetricLanguage::from_counts(4, odd));
}

TEST_CASE("is_good") {
  Instance inst;
  inst.num_vars = 1;
  inst.clauses = {conj(0, {0})};
  CHECK(is_good(inst, {0}, 0));
  CHECK(is_good(inst, {1}, 1));
  CHECK_FALSE(is_good(inst, {0}, 1));
}

TEST_CASE("random instances: set, count and cost agree with per-clause evaluation") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_instance(rng, 1 + static_cast<int>(rng() % 8), static_cast<int>(rng() % 15), 5);
    const auto a = random_assignment(rng, inst.num_vars);
    IdSet manual;
    for (const auto& c : inst.clauses)
      if (eval_clause(c, a)) manual.insert(c.id);
    CHECK(satisfied_set(inst, a) == manual);
    CHECK(satisfied_count(inst, a) == manual.size());
    CHECK(cost(inst, a) == inst.clauses.size() - manual.size());
  }
}

TEST_CASE("symmetric clauses ignore scope order") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int r = 1 + static_cast<int>(rng() % 5);
    SymmetricLanguage lang(r, static_cast<std::uint32_t>(rng() % (1ULL << (r + 1))));
    std::vector<int> scope(r);
    std::vector<std::uint8_t> neg(r);
    for (int i = 0; i < r; ++i) {
      scope[i] = static_cast<int>(rng() % 6);
      neg[i] = static_cast<std::uint8_t>(rng() & 1U);
    }
    auto a = random_assignment(rng, 6);
    const bool before = eval_clause(make_clause(0, lang, scope, neg), a);
    for (int i = r - 1; i > 0; --i) {
      const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(scope[i], scope[j]);
      std::swap(neg[i], neg[j]);
    }
    CHECK(eval_clause(make_clause(0, lang, scope, neg), a) == before);
    // flipping a variable and its literal sign leaves the clause value unchanged
    const int v = scope[0];
    a[v] ^= 1U;
    for (int i = 0; i < r; ++i)
      if (scope[i] == v) neg[i] ^= 1U;
    CHECK(eval_clause(make_clause(0, lang, scope, neg), a) == before);
  }
}

TEST_CASE("language construction") {
  const auto l = SymmetricLanguage::from_counts(3, std::vector<int>{0, 3});
  CHECK(l.mask() == 0b1001U);
  CHECK(l.counts() == std::vector<int>{0, 3});
  CHECK(SymmetricLanguage::conjunction(4).mask() == 1U << 4);
  CHECK(SymmetricLanguage(2, 0b111).trivial());
  CHECK(SymmetricLanguage(2, 0).trivial());
  CHECK_FALSE(SymmetricLanguage(2, 0b101).trivial());
  CHECK(error_kind_of([] { SymmetricLanguage::from_counts(2, std::vector<int>{3}); }) == ErrorKind::Structural);
  CHECK(error_kind_of([] { SymmetricLanguage(0, 1); }) == ErrorKind::Structural);
}

TEST_CASE("instance validation") {
  Instance inst;
  inst.num_vars = 2;
  inst.clauses = {sym(0, 2, {1}, {0, 1})};
  CHECK_NOTHROW(inst.validate());
  inst.clauses[0].scope[1] = 2;
  CHECK(error_kind_of([&] { inst.validate(); }) == ErrorKind::Structural);
  inst.clauses[0].scope[1] = 1;
  inst.clauses.push_back(sym(0, 1, {1}, {0}));
  CHECK(error_kind_of([&] { inst.validate(); }) == ErrorKind::Structural);
  inst.clauses.pop_back();
  CHECK(error_kind_of([&] { validate_proposal(inst, ProposedSolution{{5}, 1}); }) == ErrorKind::Structural);
  CHECK(error_kind_of([&] { validate_proposal(inst, ProposedSolution{{0}, -1}); }) == ErrorKind::Structural);
  CHECK(error_kind_of([] { make_clause(0, SymmetricLanguage(2, 1), {0}, {0}); }) == ErrorKind::Structural);
}

TEST_CASE("lex_less") {
  CHECK(lex_less({0, 1}, {1, 0}));
  CHECK_FALSE(lex_less({1, 0}, {1, 0}));
}
