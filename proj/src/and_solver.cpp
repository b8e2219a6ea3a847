#include "imcsp/and_solver.hpp"

#include <algorithm>
#include <numeric>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

bool literal_true(std::uint8_t value, std::uint8_t negation) { return ((value ^ negation) & 1) != 0; }

Assignment fallback(const AndInstance& inst) {
  Assignment out(inst.instance.num_vars, 0);
  for (int v = 0; v < inst.instance.num_vars; ++v)
    if (inst.fixed[v] >= 0) out[v] = static_cast<std::uint8_t>(inst.fixed[v]);
  return out;
}

bool better(std::size_t value, const Assignment& a, std::size_t best_value, const Assignment& best) {
  return value > best_value || (value == best_value && lex_less(a, best));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

AndResult branch_rec(const AndInstance& inst, const AndOptions& options, AndStats& stats, int depth) {
  ++stats.nodes;
  stats.max_depth = std::max(stats.max_depth, depth);
  AndResult out;
  if (inst.k < 0) {
    out.assignment = fallback(inst);
  } else if (auto v = find_conflict_variable(inst)) {
    if (inst.k == 0) {
      out.assignment = fallback(inst);
    } else {
      auto zero = branch_rec(assign_value(inst, *v, 0), options, stats, depth + 1);
      const auto zero_value = satisfied_count(inst.instance, zero.assignment);
      if (options.deadline.expired()) {
        stats.timed_out = true;
        out.assignment = std::move(zero.assignment);
      } else {
        auto one = branch_rec(assign_value(inst, *v, 1), options, stats, depth + 1);
        const auto one_value = satisfied_count(inst.instance, one.assignment);
        out.assignment = better(one_value, one.assignment, zero_value, zero.assignment)
                             ? std::move(one.assignment)
                             : std::move(zero.assignment);
      }
    }
  } else {
    const auto alpha = find_assignment_satisfying_P(inst);
    if (!alpha) fail(ErrorKind::Internal, "no conflict variable but P is not satisfiable");
    const auto renormalized = renormalize(inst, *alpha);
    ++stats.leaves;
    if (renormalized.k > 2 * inst.k) {
      // α beats every assignment whose satisfied set lies within k of P
      out.assignment = *alpha;
    } else {
      if (options.on_leaf) options.on_leaf(AndLeafEvent{inst, *alpha, renormalized});
      out.assignment = solve_satisfiable_P(renormalized, *alpha, options, stats);
    }
  }
  out.value = satisfied_count(inst.instance, out.assignment);
  return out;
}

}  // namespace

int AndInstance::free_count() const {
  return static_cast<int>(std::count(fixed.begin(), fixed.end(), std::int8_t{-1}));
}

AndInstance make_and_instance(const Instance& instance, const ProposedSolution& proposal) {
  instance.validate();
  validate_proposal(instance, proposal);
  AndInstance out;
  out.instance.num_vars = instance.num_vars;
  out.fixed.assign(instance.num_vars, -1);
  out.proposed = proposal.clause_ids;
  out.k = proposal.budget;
  for (const auto& c : instance.clauses) {
    const auto& lang = c.language;
    if (!lang.is_conjunction())
      fail(ErrorKind::Precondition,
           "clause " + std::to_string(c.id) + " over " + lang.describe() + " is not a conjunction");
    auto neg = c.negation;
    // SymRel(r,{0}) ⊕ b forces a_i = b_i: the literal is positive exactly when b_i = 1
    if (lang.mask() == 1U)
      for (auto& x : neg) x ^= 1;
    out.instance.clauses.push_back(make_conjunction(c.id, c.scope, std::move(neg)));
  }
  return out;
}

AndInstance assign_value(const AndInstance& inst, int v, std::uint8_t a) {
  if (v < 0 || v >= inst.instance.num_vars || inst.fixed[v] >= 0)
    fail(ErrorKind::Structural, "assign_value: variable " + std::to_string(v) + " is not free");
  AndInstance out;
  out.instance.num_vars = inst.instance.num_vars;
  out.fixed = inst.fixed;
  out.fixed[v] = static_cast<std::int8_t>(a & 1);
  out.k = inst.k;
  for (const auto& c : inst.instance.clauses) {
    const bool in_p = inst.proposed.contains(c.id);
    if (std::find(c.scope.begin(), c.scope.end(), v) == c.scope.end()) {
      out.instance.clauses.push_back(c);
      if (in_p) out.proposed.insert(c.id);
      continue;
    }
    std::vector<int> scope;
    std::vector<std::uint8_t> neg;
    bool empty_relation = false;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (c.scope[i] != v) {
        scope.push_back(c.scope[i]);
        neg.push_back(c.negation[i]);
      } else if (!literal_true(a, c.negation[i])) {
        empty_relation = true;
      }
    }
    if (empty_relation) {
      if (in_p) --out.k;
    } else if (scope.empty()) {
      if (!in_p) --out.k;
    } else {
      out.instance.clauses.push_back(make_conjunction(c.id, std::move(scope), std::move(neg)));
      if (in_p) out.proposed.insert(c.id);
    }
  }
  return out;
}

std::optional<int> find_conflict_variable(const AndInstance& inst) {
  std::vector<std::uint8_t> polarity(inst.instance.num_vars, 0);  // bit 0 positive, bit 1 negative
  for (const auto& c : inst.instance.clauses) {
    if (!inst.proposed.contains(c.id)) continue;
    for (std::size_t i = 0; i < c.scope.size(); ++i)
      polarity[c.scope[i]] |= c.negation[i] ? 2 : 1;
  }
  for (int v = 0; v < inst.instance.num_vars; ++v)
    if (polarity[v] == 3) return v;
  return std::nullopt;
}

std::optional<Assignment> find_assignment_satisfying_P(const AndInstance& inst) {
  if (find_conflict_variable(inst)) return std::nullopt;
  Assignment alpha = fallback(inst);
  for (const auto& c : inst.instance.clauses) {
    if (!inst.proposed.contains(c.id)) continue;
    for (std::size_t i = 0; i < c.scope.size(); ++i)
      if (!c.negation[i]) alpha[c.scope[i]] = 1;
  }
  return alpha;
}

AndInstance renormalize(const AndInstance& inst, const Assignment& alpha) {
  AndInstance out = inst;
  out.proposed = satisfied_set(inst.instance, alpha);
  out.k = inst.k + static_cast<int>(neighborhood_distance(inst.proposed, out.proposed));
  return out;
}

FlipClassHypergraph build_flip_hypergraph(const AndInstance& inst, const Assignment& alpha,
                                          const std::vector<std::uint8_t>& color) {
  const int n = inst.instance.num_vars;
  auto label_one = [&](int v) { return inst.fixed[v] < 0 && color[v] != 0; };
  UnionFind uf(n);
  for (const auto& c : inst.instance.clauses) {
    if (!inst.proposed.contains(c.id)) continue;
    int first = -1;
    for (int v : c.scope) {
      if (!label_one(v)) continue;
      if (first < 0) first = v;
      uf.unite(first, v);
    }
  }
  FlipClassHypergraph out;
  std::vector<int> class_of(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!label_one(v)) continue;
    const int root = uf.find(v);
    if (class_of[root] < 0) {
      class_of[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    class_of[v] = class_of[root];
    out.classes[class_of[v]].push_back(v);
  }
  const int num_classes = static_cast<int>(out.classes.size());
  out.hypergraph.num_vertices = num_classes;
  out.hypergraph.weights.assign(num_classes, 0);
  std::vector<int> touched;
  for (const auto& c : inst.instance.clauses) {
    touched.clear();
    for (int v : c.scope)
      if (label_one(v)) touched.push_back(class_of[v]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    if (inst.proposed.contains(c.id)) {
      for (int cls : touched) ++out.hypergraph.weights[cls];
      continue;
    }
    Assignment flipped = alpha;
    for (int v : c.scope)
      if (label_one(v)) flipped[v] = alpha[v] ^ 1;
    if (!eval_clause(c, flipped)) continue;
    if (touched.empty())
      fail(ErrorKind::Internal, "clause " + std::to_string(c.id) +
                                    " outside P is satisfied by the P-satisfying assignment");
    out.hypergraph.hyperedges.push_back(touched);
    out.hyperedge_clause.push_back(c.id);
  }
  return out;
}

Assignment apply_flip(const FlipClassHypergraph& flip, const Assignment& alpha,
                      const std::vector<std::uint8_t>& selected) {
  Assignment out = alpha;
  for (std::size_t cls = 0; cls < flip.classes.size(); ++cls)
    if (selected[cls])
      for (int v : flip.classes[cls]) out[v] ^= 1;
  return out;
}

Assignment solve_satisfiable_P(const AndInstance& inst, const Assignment& alpha,
                               const AndOptions& options, AndStats& stats) {
  const int n = inst.instance.num_vars;
  std::vector<std::uint8_t> occurs(n, 0);
  for (const auto& c : inst.instance.clauses)
    for (int v : c.scope) occurs[v] = 1;
  std::vector<int> universe;
  for (int v = 0; v < n; ++v)
    if (inst.fixed[v] < 0 && occurs[v]) universe.push_back(v);
  const int u = static_cast<int>(universe.size());
  const int r = std::max(1, inst.instance.max_arity());
  const int ab = static_cast<int>(std::min<long long>(static_cast<long long>(r) * std::max(inst.k, 0), u));
  const auto family = build_coloring_family(u, ab, ab, options.coloring);

  Assignment best = alpha;
  std::size_t best_value = satisfied_count(inst.instance, alpha);
  std::vector<std::uint8_t> color(n, 0);
  for (const auto& chi : family.colorings) {
    if (options.deadline.expired()) {
      stats.timed_out = true;
      break;
    }
    ++stats.colorings_tried;
    for (int i = 0; i < u; ++i) color[universe[i]] = chi[i];
    const auto flip = build_flip_hypergraph(inst, alpha, color);
    if (flip.hypergraph.hyperedges.empty()) continue;  // selecting nothing is optimal
    const auto chosen = solve_mis_vw(flip.hypergraph);
    auto candidate = apply_flip(flip, alpha, chosen.selected);
    const auto value = satisfied_count(inst.instance, candidate);
    if (better(value, candidate, best_value, best)) {
      best = std::move(candidate);
      best_value = value;
    }
  }
  return best;
}

AndResult branch_solve(const AndInstance& inst, const AndOptions& options) {
  AndStats stats;
  auto out = branch_rec(inst, options, stats, 0);
  out.stats = stats;
  return out;
}

AndResult solve_and(const Instance& instance, const ProposedSolution& proposal,
                    const AndOptions& options) {
  auto out = branch_solve(make_and_instance(instance, proposal), options);
  out.value = satisfied_count(instance, out.assignment);
  return out;
}

}  // namespace imcsp
