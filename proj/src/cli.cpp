#include "imcsp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "imcsp/and_solver.hpp"
#include "imcsp/classifier.hpp"
#include "imcsp/coloring.hpp"
#include "imcsp/cut_solver.hpp"
#include "imcsp/error.hpp"
#include "imcsp/generators.hpp"
#include "imcsp/json_io.hpp"
#include "imcsp/oracle.hpp"
#include "imcsp/reductions.hpp"

namespace imcsp {

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::string coloring = "exhaustive";
  double delta = 1.0 / 1048576.0;
  std::optional<std::int64_t> q_override;
  std::optional<std::int64_t> time_limit_ms;
  bool force_oracle = false;
};

std::string read_file(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Schema, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_text(read_file(path)); }

void emit(const RunConfig& cfg, const Json& j, std::ostream& out) {
  const auto text = to_text(j);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) fail(ErrorKind::Schema, "cannot write " + cfg.output);
  f << text;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  if (cfg.coloring == "exhaustive") o.coloring.mode = ColoringMode::Exhaustive;
  else if (cfg.coloring == "random") o.coloring.mode = ColoringMode::Randomized;
  else fail(ErrorKind::Schema, "--coloring must be exhaustive or random");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail(ErrorKind::Schema, "--delta must lie in (0, 1)");
  o.coloring.seed = cfg.seed;
  o.coloring.delta = cfg.delta;
  if (cfg.q_override) {
    if (*cfg.q_override < 0) fail(ErrorKind::Schema, "--q-override must be nonnegative");
    o.q_override = cfg.q_override;
  }
  if (cfg.time_limit_ms) {
    if (*cfg.time_limit_ms <= 0) fail(ErrorKind::Schema, "--time-limit-ms must be positive");
    o.deadline = Deadline(std::chrono::milliseconds(*cfg.time_limit_ms));
  }
  return o;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "input JSON file (default stdin)");
  sub->add_option("--output", cfg.output, "output file (default stdout)");
  sub->add_option("--seed", cfg.seed, "random seed");
}

void add_solver_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--coloring", cfg.coloring,
                  "exhaustive (covering by construction) or random (Monte Carlo with failure probability --delta)");
  sub->add_option("--delta", cfg.delta, "failure probability of random coloring families");
  sub->add_option("--q-override", cfg.q_override,
                  "replace q = k^2 2^(2k+2) in the cut solver; guarantees then rest on oracle checks");
  sub->add_option("--time-limit-ms", cfg.time_limit_ms, "wall-clock limit; best-so-far is returned with timeout=true");
  sub->add_flag("--force-oracle", cfg.force_oracle, "allow exhaustive search on languages without an FPT solver");
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Schema, "bad entry '" + item + "' in --S");
    }
  }
  return out;
}

Json language_json(const SymmetricLanguage& lang) {
  return Json{{"r", lang.arity()}, {"S", lang.counts()}};
}

Json classify_json(const SymmetricLanguage& lang) {
  const auto v = classify(lang);
  Json j;
  j["language"] = language_json(lang);
  j["canonical"] = language_json(lang.canonical());
  j["label"] = verdict_name(v.label);
  j["certificate"] = v.certificate;
  if (lang.arity() <= 8) {
    j["checks"] = {
        {"bijunctive", language_is_bijunctive(lang)},
        {"ihsb_plus", language_is_ihsb(lang, IhsbSign::Plus)},
        {"ihsb_minus", language_is_ihsb(lang, IhsbSign::Minus)},
        {"mincsp_fpt_condition", mincsp_fpt_condition(lang)},
    };
  }
  return j;
}

// ---- solve -------------------------------------------------------------------

enum class Family { Trivial, And, Cut, Hard, Unsupported };

const char* family_name(Family f) {
  switch (f) {
    case Family::Trivial: return "trivial";
    case Family::And: return "and";
    case Family::Cut: return "2ae";
    case Family::Hard: return "w1_hard";
    case Family::Unsupported: return "unsupported";
  }
  return "?";
}

Family family_of(const Instance& inst) {
  const auto& cs = inst.clauses;
  if (std::all_of(cs.begin(), cs.end(), [](const Clause& c) { return c.language.trivial(); })) return Family::Trivial;
  if (inst.is_conjunctive()) return Family::And;
  if (std::all_of(cs.begin(), cs.end(), [](const Clause& c) {
        return c.arity() == 2 && (c.language.mask() == 0b101U || c.language.mask() == 0b010U);
      }))
    return Family::Cut;
  for (const auto& c : cs)
    if (classify(c.language).label == Verdict::W1Hard) return Family::Hard;
  return Family::Unsupported;
}

Json cut_stats_json(const CutStats& s) {
  return Json{{"recurse_steps", s.recurse_steps},     {"no_progress_fallbacks", s.no_progress_fallbacks},
              {"kq_searches", s.kq_searches},         {"kq_cuts_found", s.kq_cuts_found},
              {"colorings_tried", s.colorings_tried}, {"mincut_calls", s.mincut_calls},
              {"exact_kq_fallbacks", s.exact_kq_fallbacks}, {"max_depth", s.max_depth}};
}

Json solve_instance(const ParsedInstance& parsed, const std::string& algo, const RunConfig& cfg) {
  const auto& inst = parsed.instance;
  const auto& prop = parsed.proposal;
  validate_proposal(inst, prop);
  const Family family = family_of(inst);
  std::string chosen = algo;
  if (chosen == "auto") {
    switch (family) {
      case Family::Trivial: chosen = "trivial"; break;
      case Family::And: chosen = "and"; break;
      case Family::Cut: chosen = "cut"; break;
      default: chosen = "oracle"; break;
    }
  }
  const bool needs_gate = family == Family::Hard || family == Family::Unsupported;
  if (needs_gate && !cfg.force_oracle)
    fail(ErrorKind::Guard, std::string("language family '") + family_name(family) +
                               "' has no FPT solver; pass --force-oracle for exhaustive search");
  if (chosen == "and" && family != Family::And)
    fail(ErrorKind::Precondition, "--algo and needs conjunctive clauses");
  if (chosen == "cut" && family != Family::Cut)
    fail(ErrorKind::Precondition, "--algo cut needs 2AE clauses");

  const auto options = solver_options(cfg);
  Json j;
  j["algo"] = chosen;
  j["family"] = family_name(family);
  Assignment a(inst.num_vars, 0);
  std::size_t colorings = 0;
  bool timeout = false;
  if (chosen == "trivial") {
  } else if (chosen == "and") {
    AndOptions ao;
    static_cast<SolverOptions&>(ao) = options;
    const auto r = solve_and(inst, prop, ao);
    a = r.assignment;
    colorings = r.stats.colorings_tried;
    timeout = r.stats.timed_out;
    j["stats"] = {{"nodes", r.stats.nodes}, {"leaves", r.stats.leaves}, {"max_depth", r.stats.max_depth}};
  } else if (chosen == "cut") {
    const auto r = solve_2ae(inst, prop, options);
    a = r.assignment;
    colorings = r.stats.colorings_tried;
    timeout = r.stats.timed_out;
    j["stats"] = cut_stats_json(r.stats);
  } else if (chosen == "oracle") {
    const auto r = brute_force_improve(inst, prop);
    a = r.promise_holds ? r.neighborhood_witness : r.global_witness;
    j["promise_holds"] = r.promise_holds;
  } else {
    fail(ErrorKind::Schema, "--algo must be auto, and, cut or oracle");
  }
  j["assignment"] = bits_to_json(a);
  j["satisfied"] = ids_to_json(satisfied_set(inst, a));
  j["value"] = satisfied_count(inst, a);
  j["colorings_tried"] = colorings;
  j["timeout"] = timeout;
  return j;
}

Json solve_graph(const CutInstance& g, const std::string& algo, const RunConfig& cfg) {
  Json j;
  Partition side;
  if (algo == "auto" || algo == "cut") {
    const auto r = cut_improve(g, solver_options(cfg));
    side = r.side;
    j["algo"] = "cut";
    j["stats"] = cut_stats_json(r.stats);
    j["colorings_tried"] = r.stats.colorings_tried;
    j["timeout"] = r.stats.timed_out;
  } else if (algo == "oracle") {
    const auto r = brute_force_cut(g);
    side = r.promise_holds ? r.neighborhood_witness : r.global_witness;
    j["algo"] = "oracle";
    j["promise_holds"] = r.promise_holds;
    j["colorings_tried"] = 0;
    j["timeout"] = false;
  } else {
    fail(ErrorKind::Precondition, "graph inputs support --algo auto, cut or oracle");
  }
  j["partition"] = bits_to_json(side);
  j["satisfied"] = ids_to_json(satisfied_edges(g.edges, side));
  j["value"] = satisfied_edge_count(g.edges, side);
  return j;
}

// ---- reduce / decode ---------------------------------------------------------

Json reduced_json(const ReducedInstance& red, const std::string& from, const std::string& to) {
  Json j = instance_to_json(red.instance, red.proposal);
  j["reduction"] = {{"from", from}, {"to", to}, {"proposed_size", red.proposal.clause_ids.size()}};
  return j;
}

Json run_reduce(const std::string& from, const std::string& to_arg, std::optional<int> r_target,
                std::optional<int> k_arg, const Json& input) {
  if (from == "paired-cut") {
    const auto src = paired_cut_from_json(input);
    const std::string to = to_arg.empty() ? "3ae" : to_arg;
    ReducedInstance red;
    if (to == "4ae") red = paired_cut_to_4ae(src);
    else if (to == "3ae") red = paired_cut_to_3ae(src);
    else fail(ErrorKind::Schema, "paired-cut reduces --to 4ae or 3ae");
    if (r_target) red = lift_ae_union(red.instance, red.proposal, *r_target);
    return reduced_json(red, from, to);
  }
  if (from == "mcis") {
    const auto src = mcis_from_json(input);
    auto red = mcis_to_2sat(src);
    if (r_target && *r_target > 2) {
      red = twosat_to_le1(red.instance, red.proposal, *r_target);
      return reduced_json(red, from, "le1");
    }
    return reduced_json(red, from, "2sat");
  }
  const auto parsed = instance_from_json(input);
  if (from == "2sat") {
    if (!r_target) fail(ErrorKind::Schema, "reduce --from 2sat needs --r");
    return reduced_json(twosat_to_le1(parsed.instance, parsed.proposal, *r_target), from, "le1");
  }
  if (from == "mincsp")
    return reduced_json(mincsp_to_improve(parsed.instance, k_arg ? *k_arg : parsed.proposal.budget), from, "improve");
  if (from == "pad-ae") {
    if (r_target) return reduced_json(lift_ae_union(parsed.instance, parsed.proposal, *r_target), from, "ae");
    return reduced_json(pad_ae(parsed.instance, parsed.proposal), from, "ae");
  }
  fail(ErrorKind::Schema, "--from must be paired-cut, mcis, 2sat, mincsp or pad-ae");
}

Assignment assignment_from(const Json& j) {
  if (j.is_array()) return bits_from_json(j);
  if (j.is_object() && j.contains("assignment")) return bits_from_json(j.at("assignment"));
  fail(ErrorKind::Schema, "expected an assignment array or a solve result");
}

ReducedInstance reduced_from(const Json& j) {
  const auto parsed = instance_from_json(j);
  return ReducedInstance{parsed.instance, parsed.proposal};
}

// ---- gen ---------------------------------------------------------------------

struct GenFlags {
  std::string kind = "and";
  std::optional<int> n, m, r, k, l, max_path;
  double p = 0.4;
  double loops = 0.0;
};

Json run_gen(const GenFlags& g, std::uint64_t seed) {
  if (g.kind == "and") {
    AndParams p;
    p.max_arity = g.r.value_or(3);
    p.num_vars = g.n.value_or(8);
    p.num_clauses = g.m.value_or(10);
    p.k = g.k.value_or(2);
    const auto out = generate_and_instance(seed, p);
    return instance_to_json(out.instance, out.proposal);
  }
  if (g.kind == "2ae" || g.kind == "graph") {
    CutParams p;
    p.num_vertices = g.n.value_or(6);
    p.num_edges = g.m.value_or(p.num_vertices + 3);
    p.k = g.k.value_or(2);
    p.loop_probability = g.loops;
    if (g.kind == "graph") return graph_to_json(generate_cut_instance(seed, p).instance);
    const auto out = generate_2ae_instance(seed, p);
    return instance_to_json(out.instance, out.proposal);
  }
  if (g.kind == "paired-cut") {
    PairedCutParams p;
    p.l = g.l.value_or(1);
    p.internal_vertices = g.n.value_or(4);
    p.max_path_length = g.max_path.value_or(2);
    return paired_cut_to_json(generate_paired_cut(seed, p));
  }
  if (g.kind == "mcis") {
    McisParams p;
    p.l = g.l.value_or(2);
    p.vertices = g.n.value_or(4);
    p.edge_probability = g.p;
    return mcis_to_json(generate_mcis(seed, p));
  }
  if (g.kind == "hypergraph") {
    HypergraphParams p;
    p.num_vertices = g.n.value_or(8);
    p.num_hyperedges = g.m.value_or(10);
    p.max_edge_size = g.r.value_or(3);
    return hypergraph_to_json(generate_hypergraph(seed, p));
  }
  fail(ErrorKind::Schema, "--kind must be and, 2ae, graph, paired-cut, mcis or hypergraph");
}

// ---- verify ------------------------------------------------------------------

struct VerifyRow {
  std::string kind;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t passed = 0;
  std::vector<std::uint64_t> failures;
};

Json row_json(const VerifyRow& row) {
  return Json{{"kind", row.kind},     {"instances", row.instances}, {"skipped_no_promise", row.skipped},
              {"passed", row.passed}, {"failed", row.failures.size()}, {"failing_seeds", row.failures}};
}

VerifyRow verify_and(std::size_t count, std::uint64_t seed, const SolverOptions& base) {
  VerifyRow row{"and"};
  AndOptions options;
  static_cast<SolverOptions&>(options) = base;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    AndParams p{1 + static_cast<int>(s % 3), 3 + static_cast<int>(s % 8), 2 + static_cast<int>(s % 11),
                static_cast<int>(s % 5)};
    const auto g = generate_and_instance(s, p);
    const auto o = brute_force_improve(g.instance, g.proposal);
    ++row.instances;
    if (!o.promise_holds) {
      ++row.skipped;
      continue;
    }
    const auto r = solve_and(g.instance, g.proposal, options);
    if (r.value >= o.neighborhood_optimum) ++row.passed;
    else row.failures.push_back(s);
  }
  return row;
}

VerifyRow verify_cut(std::size_t count, std::uint64_t seed, SolverOptions options) {
  VerifyRow row{"cut"};
  if (!options.q_override) options.q_override = 4;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    const int n = 2 + static_cast<int>(s % 8);
    CutParams p{n, n - 1 + static_cast<int>(s % 9), static_cast<int>(s % 4), 0.05};
    const auto g = generate_cut_instance(s, p);
    const auto o = brute_force_cut(g.instance);
    ++row.instances;
    if (!o.promise_holds) {
      ++row.skipped;
      continue;
    }
    const auto r = cut_improve(g.instance, options);
    if (r.value >= o.neighborhood_optimum) ++row.passed;
    else row.failures.push_back(s);
  }
  return row;
}

VerifyRow verify_misvw(std::size_t count, std::uint64_t seed) {
  VerifyRow row{"misvw"};
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    HypergraphParams p{1 + static_cast<int>(s % 12), static_cast<int>(s % 16), 1 + static_cast<int>(s % 4), -3, 3};
    const auto h = generate_hypergraph(s, p);
    ++row.instances;
    if (solve_mis_vw(h).objective == brute_force_misvw(h).objective) ++row.passed;
    else row.failures.push_back(s);
  }
  return row;
}

Assignment solution_from(const Json& j, const char* key) {
  if (j.is_array()) return bits_from_json(j);
  if (j.is_object() && j.contains(key)) return bits_from_json(j.at(key));
  fail(ErrorKind::Schema, std::string("solution must be an array or carry \"") + key + "\"");
}

// Checks one input; with a solution file the given answer is judged instead of the solver's.
Json verify_input(const Json& input, const std::optional<Json>& solution, const RunConfig& cfg, bool& ok) {
  Json j;
  std::size_t value = 0;
  bool promise = false;
  std::size_t optimum = 0;
  if (is_graph_json(input)) {
    const auto g = graph_from_json(input);
    const auto o = brute_force_cut(g);
    if (solution) {
      const auto side = solution_from(*solution, "partition");
      if (static_cast<int>(side.size()) != g.num_vertices) fail(ErrorKind::Schema, "partition length mismatch");
      value = satisfied_edge_count(g.edges, side);
      j["checked"] = "solution";
    } else {
      value = cut_improve(g, solver_options(cfg)).value;
      j["checked"] = "cut";
    }
    promise = o.promise_holds;
    optimum = o.neighborhood_optimum;
    j["kind"] = "graph";
  } else {
    const auto parsed = instance_from_json(input);
    const auto o = brute_force_improve(parsed.instance, parsed.proposal);
    if (solution) {
      const auto a = solution_from(*solution, "assignment");
      if (static_cast<int>(a.size()) != parsed.instance.num_vars) fail(ErrorKind::Schema, "assignment length mismatch");
      value = satisfied_count(parsed.instance, a);
      j["checked"] = "solution";
    } else {
      const auto solved = solve_instance(parsed, "auto", cfg);
      value = solved.at("value").get<std::size_t>();
      j["checked"] = solved.at("algo");
    }
    promise = o.promise_holds;
    optimum = o.neighborhood_optimum;
    j["kind"] = "instance";
  }
  ok = !promise || value >= optimum;
  j["value"] = value;
  j["promise_holds"] = promise;
  j["neighborhood_optimum"] = optimum;
  j["ok"] = ok;
  return j;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::Structural: return kExitSchema;
    case ErrorKind::Guard:
    case ErrorKind::Capacity:
    case ErrorKind::Precondition: return kExitGuard;
    case ErrorKind::Internal: return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Improve proposed solutions of symmetric Boolean CSPs.\n"
               "Coloring families are exhaustive (small universes) or Monte Carlo with an explicit failure "
               "probability; the derandomized splitter construction is not implemented."};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* classify_cmd = app.add_subcommand("classify", "dichotomy verdict for SymRel(r, S)");
  int r_arg = 0;
  std::string s_arg;
  classify_cmd->add_option("--r", r_arg, "arity")->required();
  classify_cmd->add_option("--S", s_arg, "accepted counts, comma separated")->required();
  classify_cmd->add_option("--output", cfg.output, "output file");

  auto* solve_cmd = app.add_subcommand("solve", "improve a proposed solution");
  std::string algo = "auto";
  add_common(solve_cmd, cfg);
  add_solver_flags(solve_cmd, cfg);
  solve_cmd->add_option("--algo", algo, "auto, and, cut or oracle");

  auto* reduce_cmd = app.add_subcommand("reduce", "apply a hardness reduction");
  std::string from;
  std::string to;
  std::optional<int> reduce_r;
  std::optional<int> reduce_k;
  add_common(reduce_cmd, cfg);
  reduce_cmd->add_option("--from", from, "paired-cut, mcis, 2sat, mincsp or pad-ae")->required();
  reduce_cmd->add_option("--to", to, "target (paired-cut: 4ae or 3ae)");
  reduce_cmd->add_option("--r", reduce_r, "target arity for padding or for <=1-out-of-r");
  reduce_cmd->add_option("--k", reduce_k, "budget for mincsp");

  auto* decode_cmd = app.add_subcommand("decode", "turn a good assignment into a source certificate");
  std::string source_path;
  std::string reduced_path;
  std::string assignment_path;
  decode_cmd->add_option("--from", from, "paired-cut or mcis")->required();
  decode_cmd->add_option("--source", source_path, "source instance JSON")->required();
  decode_cmd->add_option("--reduced", reduced_path, "reduced instance JSON")->required();
  decode_cmd->add_option("--assignment", assignment_path, "assignment array or solve output")->required();
  decode_cmd->add_option("--output", cfg.output, "output file");

  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random instance");
  GenFlags gen;
  add_common(gen_cmd, cfg);
  gen_cmd->add_option("--kind", gen.kind, "and, 2ae, graph, paired-cut, mcis or hypergraph");
  gen_cmd->add_option("--n", gen.n, "variables / vertices (internal vertices for paired-cut)");
  gen_cmd->add_option("--m", gen.m, "clauses / edges / hyperedges");
  gen_cmd->add_option("--r", gen.r, "maximum arity");
  gen_cmd->add_option("--k", gen.k, "budget");
  gen_cmd->add_option("--l", gen.l, "source parameter l");
  gen_cmd->add_option("--max-path", gen.max_path, "internal vertices per path (paired-cut)");
  gen_cmd->add_option("--p", gen.p, "edge probability (mcis)");
  gen_cmd->add_option("--loops", gen.loops, "loop probability (graph, 2ae)");

  auto* verify_cmd = app.add_subcommand("verify", "solver-vs-oracle batches");
  std::string verify_kind = "all";
  std::size_t count = 100;
  std::string solution_path;
  add_common(verify_cmd, cfg);
  verify_cmd->add_option("--solution", solution_path, "judge this solution (with --input) instead of running a solver");
  add_solver_flags(verify_cmd, cfg);
  verify_cmd->add_option("--kind", verify_kind, "and, cut, misvw or all");
  verify_cmd->add_option("--count", count, "instances per kind");

  auto* misvw_cmd = app.add_subcommand("misvw", "solve a weighted hypergraph selection problem");
  add_common(misvw_cmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    if (code == 0) out << help.str();
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (*classify_cmd) {
      const auto lang = SymmetricLanguage::from_counts(r_arg, parse_counts(s_arg));
      emit(cfg, classify_json(lang), out);
    } else if (*solve_cmd) {
      const auto input = read_json(cfg.input);
      if (is_graph_json(input)) emit(cfg, solve_graph(graph_from_json(input), algo, cfg), out);
      else emit(cfg, solve_instance(instance_from_json(input), algo, cfg), out);
    } else if (*reduce_cmd) {
      emit(cfg, run_reduce(from, to, reduce_r, reduce_k, read_json(cfg.input)), out);
    } else if (*decode_cmd) {
      const auto src = read_json(source_path);
      const auto red = reduced_from(read_json(reduced_path));
      const auto a = assignment_from(read_json(assignment_path));
      Json j;
      j["from"] = from;
      j["value"] = satisfied_count(red.instance, a);
      j["proposed_size"] = red.proposal.clause_ids.size();
      if (from == "paired-cut") {
        const auto s = paired_cut_from_json(src);
        const auto z = decode_paired_cut(a, s, red);
        j["certificate"] = z ? Json(*z) : Json(nullptr);
        if (z) j["pairs_touched"] = pairs_touched(s, *z);
      } else if (from == "mcis") {
        const auto s = mcis_from_json(src);
        const auto set = decode_mcis(a, s, red);
        j["certificate"] = set ? Json(*set) : Json(nullptr);
      } else {
        fail(ErrorKind::Schema, "decode --from must be paired-cut or mcis");
      }
      emit(cfg, j, out);
    } else if (*gen_cmd) {
      emit(cfg, run_gen(gen, cfg.seed), out);
    } else if (*verify_cmd) {
      Json j;
      bool ok = true;
      if (!cfg.input.empty()) {
        std::optional<Json> solution;
        if (!solution_path.empty()) solution = read_json(solution_path);
        j = verify_input(read_json(cfg.input), solution, cfg, ok);
      } else {
        const auto options = solver_options(cfg);
        std::vector<VerifyRow> rows;
        if (verify_kind == "and" || verify_kind == "all") rows.push_back(verify_and(count, cfg.seed, options));
        if (verify_kind == "cut" || verify_kind == "all") rows.push_back(verify_cut(count, cfg.seed, options));
        if (verify_kind == "misvw" || verify_kind == "all") rows.push_back(verify_misvw(count, cfg.seed));
        if (rows.empty()) fail(ErrorKind::Schema, "--kind must be and, cut, misvw or all");
        Json table = Json::array();
        for (const auto& row : rows) {
          table.push_back(row_json(row));
          ok = ok && row.failures.empty();
        }
        j["rows"] = std::move(table);
        j["ok"] = ok;
      }
      emit(cfg, j, out);
      if (!ok) return kExitMismatch;
    } else if (*misvw_cmd) {
      const auto h = hypergraph_from_json(read_json(cfg.input));
      const auto r = solve_mis_vw(h);
      emit(cfg, Json{{"selected", bits_to_json(r.selected)}, {"objective", r.objective}}, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace imcsp
