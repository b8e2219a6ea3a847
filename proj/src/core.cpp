#include "imcsp/core.hpp"

#include <algorithm>
#include <sstream>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

std::uint32_t full_mask(int arity) {
  return arity >= 31 ? ~0U : ((1U << (arity + 1)) - 1U);
}

// Characteristic vector c_0..c_r compared lexicographically.
bool characteristic_less(std::uint32_t lhs, std::uint32_t rhs, int arity) {
  for (int x = 0; x <= arity; ++x) {
    const auto l = (lhs >> x) & 1U;
    const auto r = (rhs >> x) & 1U;
    if (l != r) return l < r;
  }
  return false;
}

}  // namespace

SymmetricLanguage::SymmetricLanguage(int arity, std::uint32_t accepted_mask)
    : arity_(arity), mask_(accepted_mask) {
  if (arity < 1 || arity > kMaxArity)
    fail(ErrorKind::Structural, "arity must lie in [1, 30], got " + std::to_string(arity));
  if ((accepted_mask & ~full_mask(arity)) != 0)
    fail(ErrorKind::Structural, "accepted counts exceed the arity");
}

SymmetricLanguage SymmetricLanguage::from_counts(int arity, std::span<const int> counts) {
  if (arity < 1 || arity > kMaxArity)
    fail(ErrorKind::Structural, "arity must lie in [1, 30], got " + std::to_string(arity));
  std::uint32_t mask = 0;
  for (int x : counts) {
    if (x < 0 || x > arity)
      fail(ErrorKind::Structural,
           "accepted count " + std::to_string(x) + " outside [0, " + std::to_string(arity) + "]");
    mask |= 1U << x;
  }
  return {arity, mask};
}

SymmetricLanguage SymmetricLanguage::conjunction(int arity) {
  if (arity < 1 || arity > kMaxArity)
    fail(ErrorKind::Structural, "arity must lie in [1, 30], got " + std::to_string(arity));
  return {arity, 1U << arity};
}

std::vector<int> SymmetricLanguage::counts() const {
  std::vector<int> out;
  for (int x = 0; x <= arity_; ++x)
    if (accepts(x)) out.push_back(x);
  return out;
}

bool SymmetricLanguage::trivial() const noexcept {
  return mask_ == 0 || mask_ == full_mask(arity_);
}

SymmetricLanguage SymmetricLanguage::complemented() const {
  std::uint32_t mask = 0;
  for (int x = 0; x <= arity_; ++x)
    if (accepts(x)) mask |= 1U << (arity_ - x);
  return {arity_, mask};
}

SymmetricLanguage SymmetricLanguage::canonical() const {
  const auto other = complemented();
  return characteristic_less(other.mask_, mask_, arity_) ? other : *this;
}

bool SymmetricLanguage::is_conjunction() const noexcept {
  return mask_ == (1U << arity_) || mask_ == 1U;
}

std::string SymmetricLanguage::describe() const {
  std::ostringstream os;
  os << "SymRel(" << arity_ << ", {";
  bool first = true;
  for (int x : counts()) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  os << "})";
  return os.str();
}

Clause make_clause(ClauseId id, SymmetricLanguage language, std::vector<int> scope,
                   std::vector<std::uint8_t> negation) {
  if (static_cast<int>(scope.size()) != language.arity() || negation.size() != scope.size())
    fail(ErrorKind::Structural, "clause " + std::to_string(id) +
                                    ": scope, negation and arity must have equal length");
  for (auto& bit : negation) bit = bit ? 1 : 0;
  return Clause{id, language, std::move(scope), std::move(negation)};
}

Clause make_conjunction(ClauseId id, std::vector<int> scope,
                        std::vector<std::uint8_t> negation) {
  const int arity = static_cast<int>(scope.size());
  return make_clause(id, SymmetricLanguage::conjunction(arity), std::move(scope),
                     std::move(negation));
}

std::size_t Instance::size() const noexcept {
  return std::max(static_cast<std::size_t>(num_vars), clauses.size());
}

void Instance::validate() const {
  if (num_vars < 0) fail(ErrorKind::Structural, "negative variable count");
  std::set<ClauseId> ids;
  for (const auto& c : clauses) {
    if (c.arity() != c.language.arity() || c.negation.size() != c.scope.size())
      fail(ErrorKind::Structural, "clause " + std::to_string(c.id) + ": arity mismatch");
    for (int v : c.scope)
      if (v < 0 || v >= num_vars)
        fail(ErrorKind::Structural, "clause " + std::to_string(c.id) + ": variable index " +
                                        std::to_string(v) + " out of range");
    if (!ids.insert(c.id).second)
      fail(ErrorKind::Structural, "duplicate clause id " + std::to_string(c.id));
  }
}

IdSet Instance::all_ids() const {
  IdSet out;
  for (const auto& c : clauses) out.insert(c.id);
  return out;
}

std::optional<SymmetricLanguage> Instance::common_language() const {
  if (clauses.empty()) return std::nullopt;
  const auto first = clauses.front().language.canonical();
  for (const auto& c : clauses)
    if (!(c.language.canonical() == first)) return std::nullopt;
  return first;
}

bool Instance::is_conjunctive() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const Clause& c) { return c.language.is_conjunction(); });
}

int Instance::max_arity() const noexcept {
  int r = 0;
  for (const auto& c : clauses) r = std::max(r, c.arity());
  return r;
}

void validate_proposal(const Instance& instance, const ProposedSolution& proposal) {
  if (proposal.budget < 0) fail(ErrorKind::Structural, "budget k must be nonnegative");
  const auto ids = instance.all_ids();
  for (auto id : proposal.clause_ids)
    if (!ids.contains(id))
      fail(ErrorKind::Structural, "proposed clause id " + std::to_string(id) + " is unknown");
}

bool eval_clause(const Clause& clause, const SymmetricLanguage& language,
                 const Assignment& assignment) {
  int count = 0;
  for (std::size_t i = 0; i < clause.scope.size(); ++i) {
    const int v = clause.scope[i];
    if (v < 0 || static_cast<std::size_t>(v) >= assignment.size())
      fail(ErrorKind::Structural, "clause " + std::to_string(clause.id) +
                                      ": variable index out of range");
    count += (assignment[v] ^ clause.negation[i]) & 1;
  }
  return language.accepts(count);
}

IdSet satisfied_set(const Instance& instance, const Assignment& assignment) {
  IdSet out;
  for (const auto& c : instance.clauses)
    if (eval_clause(c, assignment)) out.insert(c.id);
  return out;
}

std::size_t satisfied_count(const Instance& instance, const Assignment& assignment) {
  return static_cast<std::size_t>(
      std::count_if(instance.clauses.begin(), instance.clauses.end(),
                    [&](const Clause& c) { return eval_clause(c, assignment); }));
}

std::size_t cost(const Instance& instance, const Assignment& assignment) {
  return instance.clauses.size() - satisfied_count(instance, assignment);
}

std::size_t neighborhood_distance(const IdSet& a, const IdSet& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return a.size() + b.size() - 2 * common;
}

SymmetricLanguage normalize_language(int arity, std::span<const int> counts) {
  return SymmetricLanguage::from_counts(arity, counts).canonical();
}

bool is_good(const Instance& instance, const Assignment& assignment,
             std::size_t reference_value) {
  return satisfied_count(instance, assignment) >= reference_value;
}

bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace imcsp
