#include "imcsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

// Clause evaluation on an assignment packed into an integer; variable j sits
// at bit n-1-j so increasing integers enumerate assignments lexicographically.
struct PackedClause {
  std::vector<int> shift;
  std::vector<std::uint8_t> neg;
  std::uint32_t mask;
  bool in_p;
};

std::vector<PackedClause> pack(const Instance& instance, const IdSet& proposed) {
  std::vector<PackedClause> out;
  const int n = instance.num_vars;
  for (const auto& c : instance.clauses) {
    PackedClause p{{}, c.negation, c.language.mask(), proposed.contains(c.id)};
    for (int v : c.scope) p.shift.push_back(n - 1 - v);
    out.push_back(std::move(p));
  }
  return out;
}

bool packed_sat(const PackedClause& c, std::uint64_t x) {
  int count = 0;
  for (std::size_t i = 0; i < c.shift.size(); ++i) count += static_cast<int>(((x >> c.shift[i]) & 1U) ^ c.neg[i]);
  return ((c.mask >> count) & 1U) != 0;
}

Assignment unpack(std::uint64_t x, int n) {
  Assignment a(n);
  for (int j = 0; j < n; ++j) a[j] = static_cast<std::uint8_t>((x >> (n - 1 - j)) & 1U);
  return a;
}

void guard_vars(const Instance& instance) {
  instance.validate();
  if (instance.num_vars > kOracleMaxVars)
    fail(ErrorKind::Guard, "oracle limited to " + std::to_string(kOracleMaxVars) + " variables, got " +
                               std::to_string(instance.num_vars));
}

// Calls visit(x, value, distance) for every packed assignment.
template <class Visit>
void sweep(const Instance& instance, const IdSet& proposed, Visit&& visit) {
  const auto clauses = pack(instance, proposed);
  const std::uint64_t total = std::uint64_t{1} << instance.num_vars;
  for (std::uint64_t x = 0; x < total; ++x) {
    std::size_t value = 0;
    std::size_t distance = 0;
    for (const auto& c : clauses) {
      const bool s = packed_sat(c, x);
      value += s;
      distance += s != c.in_p;
    }
    visit(x, value, distance);
  }
}

}  // namespace

OracleReport brute_force_improve(const Instance& instance, const ProposedSolution& proposal) {
  guard_vars(instance);
  validate_proposal(instance, proposal);
  OracleReport out;
  bool have_global = false;
  std::uint64_t gx = 0;
  std::uint64_t nx = 0;
  const auto k = static_cast<std::size_t>(proposal.budget);
  sweep(instance, proposal.clause_ids, [&](std::uint64_t x, std::size_t value, std::size_t distance) {
    if (!have_global || value > out.global_optimum) {
      have_global = true;
      out.global_optimum = value;
      gx = x;
    }
    if (distance <= k && (!out.promise_holds || value > out.neighborhood_optimum)) {
      out.promise_holds = true;
      out.neighborhood_optimum = value;
      nx = x;
    }
  });
  out.global_witness = unpack(gx, instance.num_vars);
  if (out.promise_holds) out.neighborhood_witness = unpack(nx, instance.num_vars);
  return out;
}

MinCspReport brute_force_mincsp(const Instance& instance) {
  guard_vars(instance);
  MinCspReport out;
  out.min_cost = instance.clauses.size() + 1;
  std::uint64_t wx = 0;
  sweep(instance, {}, [&](std::uint64_t x, std::size_t value, std::size_t) {
    const auto c = instance.clauses.size() - value;
    if (c < out.min_cost) {
      out.min_cost = c;
      wx = x;
    }
  });
  out.witness = unpack(wx, instance.num_vars);
  return out;
}

std::vector<Assignment> good_neighbors(const Instance& instance, const ProposedSolution& proposal,
                                       std::size_t threshold) {
  guard_vars(instance);
  validate_proposal(instance, proposal);
  std::vector<Assignment> out;
  const auto k = static_cast<std::size_t>(proposal.budget);
  sweep(instance, proposal.clause_ids, [&](std::uint64_t x, std::size_t value, std::size_t distance) {
    if (distance <= k && value >= threshold) out.push_back(unpack(x, instance.num_vars));
  });
  return out;
}

MisVwResult brute_force_misvw(const WeightedHypergraph& hypergraph) {
  hypergraph.validate();
  const int n = hypergraph.num_vertices;
  if (n > kOracleMaxHypergraphVertices)
    fail(ErrorKind::Guard, "oracle limited to " + std::to_string(kOracleMaxHypergraphVertices) + " vertices");
  std::vector<std::uint64_t> edge_bits;
  for (const auto& e : hypergraph.hyperedges) {
    std::uint64_t b = 0;
    for (int v : e) b |= std::uint64_t{1} << (n - 1 - v);
    edge_bits.push_back(b);
  }
  MisVwResult out;
  bool have = false;
  std::uint64_t best_x = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::int64_t obj = 0;
    for (auto b : edge_bits) obj += (b & ~x) == 0;
    for (int v = 0; v < n; ++v)
      if ((x >> (n - 1 - v)) & 1U) obj -= hypergraph.weights[v];
    if (!have || obj > out.objective) {
      have = true;
      out.objective = obj;
      best_x = x;
    }
  }
  out.selected = unpack(best_x, n);
  return out;
}

OracleReport brute_force_cut(const CutInstance& inst) {
  inst.validate();
  const int n = inst.num_vertices;
  if (n > kOracleMaxGraphVertices)
    fail(ErrorKind::Guard, "oracle limited to " + std::to_string(kOracleMaxGraphVertices) + " vertices");
  OracleReport out;
  const auto k = static_cast<std::size_t>(inst.k);
  bool have_global = false;
  Partition side(n, 0);
  const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << (n - 1));
  for (std::uint64_t x = 0; x < total; ++x) {
    for (int j = 1; j < n; ++j) side[j] = static_cast<std::uint8_t>((x >> (n - 1 - j)) & 1U);
    std::size_t value = 0;
    std::size_t distance = 0;
    for (const auto& e : inst.edges) {
      const bool s = edge_satisfied(e, side);
      value += s;
      distance += s != inst.proposed.contains(e.id);
    }
    if (!have_global || value > out.global_optimum) {
      have_global = true;
      out.global_optimum = value;
      out.global_witness = side;
    }
    if (distance <= k && (!out.promise_holds || value > out.neighborhood_optimum)) {
      out.promise_holds = true;
      out.neighborhood_optimum = value;
      out.neighborhood_witness = side;
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> brute_force_paired_cut(const PairedMinCutInstance& src) {
  src.validate();
  const std::size_t m = src.pairs.size();
  const std::size_t pick = std::min<std::size_t>(static_cast<std::size_t>(src.l), m);
  if (m > 24) fail(ErrorKind::Guard, "oracle limited to 24 pairs");
  // supersets of cuts are cuts, so subsets of exactly `pick` pairs suffice
  std::vector<std::uint8_t> choose(m, 0);
  std::fill(choose.begin(), choose.begin() + pick, 1);
  do {
    std::vector<std::size_t> cut;
    for (std::size_t i = 0; i < m; ++i)
      if (choose[i]) {
        cut.push_back(src.pairs[i].first);
        cut.push_back(src.pairs[i].second);
      }
    std::sort(cut.begin(), cut.end());
    if (is_st_cut(src, cut)) return cut;
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return std::nullopt;
}

std::optional<std::vector<int>> brute_force_mcis(const MulticoloredISInstance& src) {
  src.validate(false);
  std::vector<std::size_t> at(src.parts.size(), 0);
  const std::size_t parts = src.parts.size();
  for (;;) {
    std::vector<int> pick;
    for (std::size_t i = 0; i < parts; ++i) pick.push_back(src.parts[i][at[i]]);
    if (is_multicolored_independent_set(src, pick)) {
      std::sort(pick.begin(), pick.end());
      return pick;
    }
    std::size_t i = 0;
    while (i < parts && ++at[i] == src.parts[i].size()) at[i++] = 0;
    if (i == parts) return std::nullopt;
  }
}

}  // namespace imcsp
