#pragma once

// Domain model for Boolean symmetric CSPs with negation patterns.
//
// A clause over SymRel(r, S) with negation vector b accepts an assignment when
// the number of indices i with a[scope_i] XOR b_i = 1 lies in S.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace imcsp {

using ClauseId = std::size_t;
using IdSet = std::set<ClauseId>;
using Assignment = std::vector<std::uint8_t>;

/// The pair (r, S); S is stored as a bit mask over counts 0..r.
class SymmetricLanguage {
 public:
  static constexpr int kMaxArity = 30;

  SymmetricLanguage(int arity, std::uint32_t accepted_mask);

  static SymmetricLanguage from_counts(int arity, std::span<const int> counts);
  /// SymRel(r, {r}): the conjunction of r literals.
  static SymmetricLanguage conjunction(int arity);

  int arity() const noexcept { return arity_; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool accepts(int count) const noexcept {
    return count >= 0 && count <= arity_ && ((mask_ >> count) & 1U) != 0;
  }
  std::vector<int> counts() const;

  /// S is empty or S = {0, ..., r}.
  bool trivial() const noexcept;
  /// (r, {r - x | x in S}); generates the same negation-closed family.
  SymmetricLanguage complemented() const;
  /// The lexicographically smaller characteristic vector of S and its complement.
  SymmetricLanguage canonical() const;
  bool is_conjunction() const noexcept;

  std::string describe() const;

  friend bool operator==(const SymmetricLanguage&, const SymmetricLanguage&) = default;

 private:
  int arity_;
  std::uint32_t mask_;
};

struct Clause {
  ClauseId id;
  SymmetricLanguage language;
  std::vector<int> scope;
  std::vector<std::uint8_t> negation;

  int arity() const noexcept { return static_cast<int>(scope.size()); }
};

/// Builds a clause and checks that scope, negation and arity agree.
Clause make_clause(ClauseId id, SymmetricLanguage language, std::vector<int> scope,
                   std::vector<std::uint8_t> negation);

/// A conjunction of literals; literal i is positive when negation[i] == 0.
Clause make_conjunction(ClauseId id, std::vector<int> scope,
                        std::vector<std::uint8_t> negation);

struct Instance {
  int num_vars = 0;
  std::vector<Clause> clauses;

  /// max(num_vars, |clauses|).
  std::size_t size() const noexcept;
  /// Throws a structural error on bad scopes, arity mismatches or duplicate ids.
  void validate() const;
  IdSet all_ids() const;
  /// Canonical language shared by every clause, if the instance is homogeneous.
  std::optional<SymmetricLanguage> common_language() const;
  /// Every clause is a conjunction of literals (any arity).
  bool is_conjunctive() const;
  int max_arity() const noexcept;
};

struct ProposedSolution {
  IdSet clause_ids;
  int budget = 0;
};

/// Throws unless the proposed ids belong to the instance and the budget is >= 0.
void validate_proposal(const Instance& instance, const ProposedSolution& proposal);

bool eval_clause(const Clause& clause, const SymmetricLanguage& language,
                 const Assignment& assignment);
inline bool eval_clause(const Clause& clause, const Assignment& assignment) {
  return eval_clause(clause, clause.language, assignment);
}

IdSet satisfied_set(const Instance& instance, const Assignment& assignment);
std::size_t satisfied_count(const Instance& instance, const Assignment& assignment);
std::size_t cost(const Instance& instance, const Assignment& assignment);

/// |A Δ B|.
std::size_t neighborhood_distance(const IdSet& a, const IdSet& b);

SymmetricLanguage normalize_language(int arity, std::span<const int> counts);

bool is_good(const Instance& instance, const Assignment& assignment,
             std::size_t reference_value);

/// Lexicographic comparison of bit vectors, shorter vectors first.
bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

}  // namespace imcsp
