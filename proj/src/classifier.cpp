#include "imcsp/classifier.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

constexpr int kTableMaxArity = 16;
constexpr int kCrossCheckMaxArity = 6;

std::uint32_t cube_size(int arity) { return 1U << arity; }

bool bit(std::uint32_t t, int i) { return ((t >> i) & 1U) != 0; }

// Membership bitmap over the cube.
std::vector<std::uint8_t> as_bitmap(const RelationTable& r) {
  std::vector<std::uint8_t> in(cube_size(r.arity), 0);
  for (auto t : r.tuples) in[t] = 1;
  return in;
}

// A clause given by the literals it contains: bit i of pos means x_i, bit i of neg means ¬x_i.
struct Disjunction {
  std::uint32_t pos;
  std::uint32_t neg;
  bool satisfied(std::uint32_t t) const { return (t & pos) != 0 || (~t & neg) != 0; }
};

// R equals the model set of the clauses from `family` that every tuple of R satisfies.
bool equals_closure(const RelationTable& r, const std::vector<Disjunction>& family) {
  std::vector<Disjunction> implied;
  for (const auto& c : family)
    if (std::all_of(r.tuples.begin(), r.tuples.end(), [&](std::uint32_t t) { return c.satisfied(t); }))
      implied.push_back(c);
  const auto in = as_bitmap(r);
  for (std::uint32_t t = 0; t < cube_size(r.arity); ++t) {
    const bool model = std::all_of(implied.begin(), implied.end(),
                                   [&](const Disjunction& c) { return c.satisfied(t); });
    if (model != (in[t] != 0)) return false;
  }
  return true;
}

bool every_member(const SymmetricLanguage& language, bool (*pred)(const RelationTable&, IhsbSign),
                  IhsbSign sign) {
  for (std::uint32_t b = 0; b < cube_size(language.arity()); ++b)
    if (!pred(RelationTable::symmetric(language, b), sign)) return false;
  return true;
}

ClassificationVerdict table_lookup(const SymmetricLanguage& language) {
  const int r = language.arity();
  const std::uint32_t m = language.mask();
  auto set = [](std::initializer_list<int> xs) {
    std::uint32_t out = 0;
    for (int x : xs) out |= 1U << x;
    return out;
  };
  if (language.trivial()) return {Verdict::Trivial, "trivial"};
  if (m == set({0}) || m == set({r})) return {Verdict::FptAnd, "rAND"};
  if (r == 2 && (m == set({0, 2}) || m == set({1}))) return {Verdict::Fpt2AE, "2AE"};
  if (r >= 3 && m == set({0, r})) return {Verdict::W1Hard, "rAE_r>=3"};
  if (r >= 2 && (m == set({0, 1}) || m == set({r - 1, r}))) return {Verdict::W1Hard, "le1_r>=2"};
  return {Verdict::W1Hard, "MinCSP_hard"};
}

void cross_check(const SymmetricLanguage& language, const ClassificationVerdict& v) {
  const bool ihsb = language_is_ihsb(language, IhsbSign::Minus) ||
                    language_is_ihsb(language, IhsbSign::Plus);
  const bool bij = language_is_bijunctive(language);
  const bool ok_trivial = (v.label == Verdict::Trivial) == language.trivial();
  const bool ok_ihsb = language.trivial() || ihsb == (v.label == Verdict::FptAnd);
  const bool ok_bij = language.trivial() || bij == (v.certificate != "MinCSP_hard");
  if (!ok_trivial || !ok_ihsb || !ok_bij)
    fail(ErrorKind::Internal, "classification of " + language.describe() +
                                  " disagrees with the generic relation checks");
}

}  // namespace

RelationTable RelationTable::from_tuples(int arity, std::vector<std::uint32_t> tuples) {
  if (arity < 0 || arity > kTableMaxArity)
    fail(ErrorKind::Guard, "relation tables support arity <= " + std::to_string(kTableMaxArity));
  for (auto t : tuples)
    if (t >= cube_size(arity)) fail(ErrorKind::Structural, "tuple outside the cube");
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  return RelationTable{arity, std::move(tuples)};
}

RelationTable RelationTable::symmetric(const SymmetricLanguage& language,
                                       std::uint32_t negation_mask) {
  const int r = language.arity();
  if (r > kTableMaxArity)
    fail(ErrorKind::Guard, "relation tables support arity <= " + std::to_string(kTableMaxArity));
  std::vector<std::uint32_t> tuples;
  for (std::uint32_t t = 0; t < cube_size(r); ++t)
    if (language.accepts(std::popcount(t ^ negation_mask))) tuples.push_back(t);
  return RelationTable{r, std::move(tuples)};
}

bool RelationTable::contains(std::uint32_t tuple) const {
  return std::binary_search(tuples.begin(), tuples.end(), tuple);
}

std::size_t Graph::edge_count() const {
  std::size_t c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c += adj[i][j];
  return c;
}

bool Graph::is_complete() const {
  return edge_count() == static_cast<std::size_t>(n) * (n - 1) / 2;
}

bool Graph::is_empty() const { return edge_count() == 0; }

Graph Digraph::underlying() const {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && adj[i][j]) g.add_edge(i, j);
  return g;
}

Graph gaifman_graph(const RelationTable& relation) {
  const int r = relation.arity;
  Graph g(r);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      bool seen[2][2] = {{false, false}, {false, false}};
      for (auto t : relation.tuples) seen[bit(t, i)][bit(t, j)] = true;
      if (!(seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1])) g.add_edge(i, j);
    }
  }
  return g;
}

Digraph arrow_graph(const RelationTable& relation) {
  const int r = relation.arity;
  Digraph h(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      bool seen[2][2] = {{false, false}, {false, false}};
      for (auto t : relation.tuples) seen[bit(t, i)][bit(t, j)] = true;
      if (!seen[1][0] && seen[0][0] && seen[1][1]) h.adj[i][j] = 1;
    }
  }
  return h;
}

bool is_2k2_free(const Graph& g) {
  const int n = g.n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int v[4] = {a, b, c, d};
          int edges = 0;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) edges += g.has_edge(v[x], v[y]);
          if (edges != 2) continue;
          // two edges on four vertices are disjoint iff one of the three pairings is present
          if ((g.has_edge(a, b) && g.has_edge(c, d)) || (g.has_edge(a, c) && g.has_edge(b, d)) ||
              (g.has_edge(a, d) && g.has_edge(b, c)))
            return false;
        }
  return true;
}

// 2-decomposability: R is the conjunction of its singleton and pair projections.
bool is_bijunctive(const RelationTable& relation) {
  const int r = relation.arity;
  std::vector<std::uint8_t> single(2 * r, 0);
  std::vector<std::uint8_t> pair(4 * r * r, 0);
  for (auto t : relation.tuples)
    for (int i = 0; i < r; ++i) {
      single[2 * i + bit(t, i)] = 1;
      for (int j = i + 1; j < r; ++j) pair[4 * (i * r + j) + 2 * bit(t, i) + bit(t, j)] = 1;
    }
  const auto in = as_bitmap(relation);
  for (std::uint32_t t = 0; t < cube_size(r); ++t) {
    bool model = true;
    for (int i = 0; i < r && model; ++i) {
      model = single[2 * i + bit(t, i)] != 0;
      for (int j = i + 1; j < r && model; ++j)
        model = pair[4 * (i * r + j) + 2 * bit(t, i) + bit(t, j)] != 0;
    }
    if (model != (in[t] != 0)) return false;
  }
  return true;
}

bool is_ihsb(const RelationTable& relation, IhsbSign sign) {
  const int r = relation.arity;
  std::vector<Disjunction> family;
  // wide clauses of one sign, unit clauses of the other, implications x_i -> x_j
  for (std::uint32_t s = 1; s < cube_size(r); ++s)
    family.push_back(sign == IhsbSign::Minus ? Disjunction{0, s} : Disjunction{s, 0});
  for (int i = 0; i < r; ++i)
    family.push_back(sign == IhsbSign::Minus ? Disjunction{1U << i, 0} : Disjunction{0, 1U << i});
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) family.push_back(Disjunction{1U << j, 1U << i});
  return equals_closure(relation, family);
}

bool language_is_bijunctive(const SymmetricLanguage& language) {
  return every_member(
      language, [](const RelationTable& r, IhsbSign) { return is_bijunctive(r); }, IhsbSign::Minus);
}

bool language_is_ihsb(const SymmetricLanguage& language, IhsbSign sign) {
  return every_member(language, &is_ihsb, sign);
}

bool mincsp_fpt_condition(const SymmetricLanguage& language) {
  bool bij_branch = true;
  bool arrow_free = true;
  for (std::uint32_t b = 0; b < cube_size(language.arity()); ++b) {
    const auto rel = RelationTable::symmetric(language, b);
    bij_branch = bij_branch && is_bijunctive(rel) && is_2k2_free(gaifman_graph(rel));
    arrow_free = arrow_free && is_2k2_free(arrow_graph(rel).underlying());
  }
  const bool ihsb = language_is_ihsb(language, IhsbSign::Minus) ||
                    language_is_ihsb(language, IhsbSign::Plus);
  return bij_branch || (ihsb && arrow_free);
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Trivial: return "Trivial";
    case Verdict::FptAnd: return "FPT_rAND";
    case Verdict::Fpt2AE: return "FPT_2AE";
    case Verdict::W1Hard: return "W1_Hard";
  }
  return "unknown";
}

ClassificationVerdict classify(const SymmetricLanguage& language) {
  auto verdict = table_lookup(language);
  if (language.arity() <= kCrossCheckMaxArity) cross_check(language, verdict);
  return verdict;
}

ClassificationVerdict classify(int arity, const std::vector<int>& counts) {
  return classify(SymmetricLanguage::from_counts(arity, counts));
}

}  // namespace imcsp
