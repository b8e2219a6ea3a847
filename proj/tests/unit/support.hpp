#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "imcsp/core.hpp"
#include "imcsp/error.hpp"

namespace imcsp::test {

inline Clause sym(ClauseId id, int r, std::vector<int> counts, std::vector<int> scope,
                  std::vector<std::uint8_t> neg = {}) {
  if (neg.empty()) neg.assign(scope.size(), 0);
  return make_clause(id, SymmetricLanguage::from_counts(r, counts), std::move(scope), std::move(neg));
}

inline Clause conj(ClauseId id, std::vector<int> scope, std::vector<std::uint8_t> neg = {}) {
  if (neg.empty()) neg.assign(scope.size(), 0);
  return make_conjunction(id, std::move(scope), std::move(neg));
}

inline Assignment all_assignments_at(int n, std::uint64_t bits) {
  Assignment a(n);
  for (int i = 0; i < n; ++i) a[i] = static_cast<std::uint8_t>((bits >> i) & 1U);
  return a;
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return static_cast<ErrorKind>(-1);
}

// Random symmetric-language instance with mixed languages.
inline Instance random_instance(std::mt19937_64& rng, int n, int m, int max_r) {
  Instance inst;
  inst.num_vars = n;
  for (int c = 0; c < m; ++c) {
    const int r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_r));
    const auto mask = static_cast<std::uint32_t>(rng() % (1ULL << (r + 1)));
    std::vector<int> scope;
    std::vector<std::uint8_t> neg;
    for (int i = 0; i < r; ++i) {
      scope.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
      neg.push_back(static_cast<std::uint8_t>(rng() & 1U));
    }
    inst.clauses.push_back(make_clause(c, SymmetricLanguage(r, mask), scope, neg));
  }
  return inst;
}

inline Assignment random_assignment(std::mt19937_64& rng, int n) {
  Assignment a(n);
  for (auto& x : a) x = static_cast<std::uint8_t>(rng() & 1U);
  return a;
}

}  // namespace imcsp::test
