// decomp: command-line front end for the solver.
//
// Exit codes: 0 ok, 1 parse/signature/usage error, 2 resource limit,
// 3 internal invariant violation, 4 oracle disagreement (check).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "decomp/games.hpp"
#include "decomp/oracles.hpp"
#include "decomp/random.hpp"
#include "decomp/solver.hpp"
#include "decomp/syntax.hpp"
#include "decomp/theories.hpp"

namespace {

using namespace decomp;

enum Exit { kOk = 0, kParse = 1, kLimit = 2, kInvariant = 3, kDisagree = 4 };

struct RunConfig {
  std::string theory = "trees";
  std::string sig_path;
  std::string input_path;
  std::string formula;
  std::string mode = "solved";
  std::string trace_path;
  std::uint64_t max_steps = SolveLimits{}.max_steps;
  std::size_t max_depth = SolveLimits{}.max_depth;
  std::uint64_t max_nodes = SolveLimits{}.max_nodes;
  double max_seconds = 0;
  std::uint64_t seed = 42;
  int game = 0;
  int k = 1;
  int count = 500;
  std::string csv_path;
  double budget = 600;
  int bound = -1;
  bool mutate = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_all(in);
}

// The default trees signature covers the symbols used in the worked examples.
Signature default_signature(TheoryTag tag) {
  switch (tag) {
    case TheoryTag::kEq: return Signature::eq();
    case TheoryTag::kRa: return Signature::ra();
    case TheoryTag::kTrees:
      return Signature::trees({{"0", 0}, {"s", 1}, {"f", 1}, {"g", 2}, {"c", 2}});
  }
  return Signature::eq();
}

SolveOptions options_of(const RunConfig& cfg) {
  SolveOptions o = SolveOptions::from_env();
  o.limits.max_steps = cfg.max_steps;
  o.limits.max_depth = cfg.max_depth;
  o.limits.max_nodes = cfg.max_nodes;
  o.limits.max_seconds = cfg.max_seconds;
  o.check_binders = o.check_measure;
  return o;
}

// A deliberately broken plug-in: its decompositions forget α′. Used as the
// negative control of `check`.
class MutantTheory : public Theory {
 public:
  explicit MutantTheory(std::unique_ptr<Theory> inner) : inner_(std::move(inner)) {}
  TheoryTag tag() const override { return inner_->tag(); }
  const Signature& signature() const override { return inner_->signature(); }
  std::string_view psi_description() const override { return inner_->psi_description(); }
  Core flat_to_core(const std::vector<FlatAtom>& atoms) const override {
    return inner_->flat_to_core(atoms);
  }
  Core conjoin(const Core& a, const Core& b) const override { return inner_->conjoin(a, b); }
  Decomposition decompose(const std::vector<Var>& xs, const Core& a) const override {
    Decomposition d = inner_->decompose(xs, a);
    if (!d.a_prime.is_false()) d.a_prime = Core::truth();
    return d;
  }
  bool in_a_prime(const std::vector<Var>& xs, const Core& a) const override {
    return inner_->in_a_prime(xs, a);
  }
  bool in_a_dprime(const std::vector<Var>& xs, const Core& a) const override {
    return inner_->in_a_dprime(xs, a);
  }
  bool in_a_tprime(const std::vector<Var>& xs, const Core& a) const override {
    return inner_->in_a_tprime(xs, a);
  }

 private:
  std::unique_ptr<Theory> inner_;
};

struct Problem {
  Signature sig;
  std::unique_ptr<Theory> theory;
  Session session;
  Formula formula;
};

std::unique_ptr<Problem> load_problem(const RunConfig& cfg) {
  auto p = std::make_unique<Problem>();
  int sources = !cfg.formula.empty() + !cfg.input_path.empty() + (cfg.game != 0);
  if (sources != 1) throw UsageError("give exactly one of --formula, --input, --game");
  if (cfg.game != 0) {
    GameSpec g = GameSpec::by_id(cfg.game);
    p->sig = g.sig;
    Var x = p->session.var("x");
    p->formula = gen_winning(g, cfg.k, x, p->session);
  } else {
    auto tag = parse_theory_tag(cfg.theory);
    if (!tag) throw UsageError("unknown theory " + cfg.theory);
    p->sig = cfg.sig_path.empty() ? default_signature(*tag) : parse_signature(read_file(cfg.sig_path));
    if (p->sig.tag != *tag) throw UsageError("signature theory does not match --theory");
    std::string text = cfg.formula.empty() ? read_file(cfg.input_path) : cfg.formula;
    p->formula = parse_formula(text, p->sig, p->session);
  }
  p->theory = make_theory(p->sig);
  return p;
}

std::string rule_counts(const SolveStats& st) {
  std::string out = "{";
  for (std::size_t r = 1; r <= 5; ++r) {
    if (r > 1) out += ", ";
    out += std::to_string(r) + ": " + std::to_string(st.rule_counts[r]);
  }
  return out + ", pruned: " + std::to_string(st.rule_counts[0]) + "}";
}

void write_trace(const std::vector<TraceStep>& trace, std::ostream& out) {
  for (const auto& t : trace) {
    nlohmann::ordered_json j;
    j["step"] = t.step;
    j["rule"] = t.rule;
    j["path"] = format_path(t.path);
    j["before"] = t.before;
    j["after"] = t.after;
    out << j.dump() << '\n';
  }
}

void emit_trace(const RunConfig& cfg, const std::vector<TraceStep>& trace, bool to_stdout) {
  if (!cfg.trace_path.empty() && cfg.trace_path != "-") {
    std::ofstream out(cfg.trace_path);
    if (!out) throw UsageError("cannot write " + cfg.trace_path);
    write_trace(trace, out);
  } else if (to_stdout || cfg.trace_path == "-") {
    write_trace(trace, std::cout);
  }
}

int cmd_solve(const RunConfig& cfg, bool trace_cmd) {
  auto p = load_problem(cfg);
  SolveOptions opts = options_of(cfg);
  opts.trace = trace_cmd || !cfg.trace_path.empty();
  Session& s = p->session;
  std::ostringstream doc;
  doc << "command: " << (trace_cmd ? "trace" : "solve") << '\n';
  doc << "theory: " << to_string(p->sig.tag) << '\n';
  doc << "mode: " << cfg.mode << '\n';
  doc << "input: " << print_formula(p->formula, s) << '\n';
  try {
    SolveResult r;
    if (cfg.mode == "disjunct") {
      Solutions sol = present_solutions(p->formula, *p->theory, s, opts);
      r = sol.raw;
      doc << "status: ok\n";
      doc << "disjuncts:";
      if (sol.disjuncts.empty()) doc << " []";
      doc << '\n';
      for (const auto& d : sol.disjuncts) {
        Solutions one;
        one.disjuncts.push_back(d);
        doc << "  - " << print_formula(embed_solutions(one), s) << '\n';
      }
      doc << "formula: " << print_solutions(sol, s) << '\n';
    } else if (cfg.mode == "solved" || cfg.mode == "verdict") {
      if (cfg.mode == "verdict" && !free_vars(p->formula).empty()) {
        throw UsageError("verdict mode needs a sentence (no free variables)");
      }
      r = solve_formula(p->formula, *p->theory, s, opts);
      doc << "status: ok\n";
      if (cfg.mode == "verdict") {
        doc << "verdict: " << (finalize_closed(r) ? "true" : "false") << '\n';
      } else {
        doc << "solved:";
        if (r.solved.empty()) doc << " []";
        doc << '\n';
        for (const auto& t : r.solved) doc << "  - " << print_tree(t, s) << '\n';
      }
    } else {
      throw UsageError("unknown mode " + cfg.mode);
    }
    doc << "steps: " << r.stats.steps << '\n';
    doc << "rules: " << rule_counts(r.stats) << '\n';
    doc << "peak_nodes: " << r.stats.peak_nodes << '\n';
    std::cerr << "solved in " << r.stats.wall_ms << " ms\n";
    if (trace_cmd && cfg.trace_path.empty()) {
      std::cout << doc.str();
      std::cout << "trace:\n";
      write_trace(r.trace, std::cout);
    } else {
      emit_trace(cfg, r.trace, false);
      std::cout << doc.str();
    }
    return kOk;
  } catch (const SolveLimitError& e) {
    emit_trace(cfg, e.partial_trace(), false);
    doc << "status: limit\n";
    doc << "error: " << e.what() << '\n';
    std::cout << doc.str();
    std::cerr << "error: " << e.what() << '\n';
    return kLimit;
  }
}

int cmd_check(const RunConfig& cfg) {
  auto tag = parse_theory_tag(cfg.theory);
  if (!tag || *tag == TheoryTag::kTrees) throw UsageError("check supports --theory eq or ra");
  Signature sig = default_signature(*tag);
  std::unique_ptr<Theory> th = make_theory(sig);
  if (cfg.mutate) th = std::make_unique<MutantTheory>(std::move(th));
  FormulaGen gen(sig, cfg.seed);
  RandomShape shape;
  SolveOptions opts = options_of(cfg);
  int agree = 0;
  std::ostringstream first;
  bool found = false;
  for (int n = 0; n < cfg.count; ++n) {
    Session s;
    Formula f = gen.next(s, shape);
    bool want = *tag == TheoryTag::kEq ? eq_oracle(f) : ra_oracle(f);
    bool got = finalize_closed(solve_formula(f, *th, s, opts));
    if (got == want) {
      ++agree;
    } else if (!found) {
      found = true;
      first << "counterexample:\n  index: " << n << "\n  sentence: " << print_formula(f, s)
            << "\n  solver: " << (got ? "true" : "false") << "\n  oracle: " << (want ? "true" : "false")
            << '\n';
    }
  }
  std::cout << "command: check\ntheory: " << cfg.theory << "\nseed: " << cfg.seed
            << "\ncount: " << cfg.count << "\nagree: " << agree
            << "\ndisagree: " << cfg.count - agree << '\n'
            << first.str();
  return found ? kDisagree : kOk;
}

int cmd_bench(const RunConfig& cfg) {
  if (cfg.game != 1 && cfg.game != 2) throw UsageError("bench needs --game 1 or 2");
  GameSpec g = GameSpec::by_id(cfg.game);
  BenchConfig bc;
  bc.k_max = cfg.k;
  bc.budget_seconds = cfg.budget;
  bc.position_bound = cfg.bound;
  bc.limits.max_steps = cfg.max_steps;
  bc.limits.max_depth = cfg.max_depth;
  bc.limits.max_nodes = cfg.max_nodes;
  auto rows = run_bench(g, bc);
  std::string csv_path =
      cfg.csv_path.empty() ? "bench_game" + std::to_string(cfg.game) + ".csv" : cfg.csv_path;
  std::ofstream(csv_path) << bench_csv(g, rows);

  auto set_str = [](const std::set<Position>& ps, int game) {
    std::string out = "[";
    for (auto it = ps.begin(); it != ps.end(); ++it) {
      if (it != ps.begin()) out += ", ";
      out += game == 1 ? std::to_string(it->first)
                       : "(" + std::to_string(it->first) + "," + std::to_string(it->second) + ")";
    }
    return out + "]";
  };
  bool exhausted = false;
  std::cout << "command: bench\ngame: " << cfg.game << "\nk_max: " << cfg.k << "\ncsv: " << csv_path
            << "\nrows:\n";
  for (const auto& r : rows) {
    std::cout << "  - k: " << r.k << '\n';
    if (!r.completed) {
      exhausted = true;
      std::cout << "    status: -\n";
      continue;
    }
    std::cout << "    status: " << (r.validated ? "validated" : "mismatch") << '\n'
              << "    steps: " << r.steps << '\n'
              << "    disjuncts: " << r.disjuncts << '\n'
              << "    output_nodes: " << r.output_nodes << '\n'
              << "    winning: " << set_str(r.solution, cfg.game) << '\n';
    if (!r.validated) std::cout << "    reference: " << set_str(r.reference, cfg.game) << '\n';
    std::cerr << "k=" << r.k << ": " << r.wall_ms << " ms\n";
  }
  if (exhausted) return kLimit;
  for (const auto& r : rows) {
    if (!r.validated) return kDisagree;
  }
  return kOk;
}

void add_source_flags(CLI::App* c, RunConfig& cfg) {
  c->add_option("--theory", cfg.theory, "eq, ra or trees")->check(CLI::IsMember({"eq", "ra", "trees"}));
  c->add_option("--sig", cfg.sig_path, "signature file");
  c->add_option("--input", cfg.input_path, "formula file, or - for stdin");
  c->add_option("--formula", cfg.formula, "inline formula");
  c->add_option("--mode", cfg.mode, "solved, disjunct or verdict")
      ->check(CLI::IsMember({"solved", "disjunct", "verdict"}));
  c->add_option("--trace", cfg.trace_path, "write the rule trace (JSON lines) to FILE");
  c->add_option("--game", cfg.game, "solve winning_k of game 1 or 2");
  c->add_option("--k", cfg.k, "k for --game");
}

void add_limit_flags(CLI::App* c, RunConfig& cfg) {
  c->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
  c->add_option("--max-depth", cfg.max_depth)->check(CLI::PositiveNumber);
  c->add_option("--max-nodes", cfg.max_nodes)->check(CLI::PositiveNumber);
  c->add_option("--max-seconds", cfg.max_seconds)->check(CLI::NonNegativeNumber);
  c->add_option("--seed", cfg.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order solver for decomposable theories"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "solve a formula");
  add_source_flags(solve, cfg);
  add_limit_flags(solve, cfg);
  auto* trace = app.add_subcommand("trace", "solve and print every rule application");
  add_source_flags(trace, cfg);
  add_limit_flags(trace, cfg);
  auto* check = app.add_subcommand("check", "compare solver verdicts with an oracle");
  check->add_option("--theory", cfg.theory)->check(CLI::IsMember({"eq", "ra"}))->required();
  check->add_option("--count", cfg.count)->check(CLI::PositiveNumber);
  check->add_flag("--mutate", cfg.mutate, "use a corrupted plug-in (negative control)");
  add_limit_flags(check, cfg);
  auto* bench = app.add_subcommand("bench", "run the game benchmark");
  bench->add_option("--game", cfg.game)->required()->check(CLI::IsMember({1, 2}));
  bench->add_option("--k", cfg.k, "largest k");
  bench->add_option("--csv", cfg.csv_path, "CSV output path");
  bench->add_option("--budget", cfg.budget, "seconds for the whole table");
  bench->add_option("--bound", cfg.bound, "largest position component validated");
  add_limit_flags(bench, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*solve) return cmd_solve(cfg, false);
    if (*trace) return cmd_solve(cfg, true);
    if (*check) return cmd_check(cfg);
    return cmd_bench(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.span().start << "-" << e.span().end << ": " << e.what() << '\n';
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const TheoryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const SolveLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLimit;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
}
