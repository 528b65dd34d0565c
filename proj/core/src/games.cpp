#include "decomp/games.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "decomp/syntax.hpp"
#include "decomp/theories.hpp"

namespace decomp {
namespace {

Term subst_term(const Term& t, const VarMap& m) {
  if (t->is_var) {
    auto it = m.find(t->var);
    return it == m.end() ? t : t_var(it->second);
  }
  std::vector<Term> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(subst_term(a, m));
  return t_app(t->fn, std::move(args));
}

// Moves `f` from session `from` into `s`: free variables through `m`, binders
// to fresh variables of the same base name.
Formula instantiate(const Formula& f, VarMap m, const Session& from, Session& s) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return f;
    case FKind::kEq: return f_eq(subst_term(f->lhs, m), subst_term(f->rhs, m));
    case FKind::kRel: {
      std::vector<Term> args;
      for (const auto& a : f->rel_args) args.push_back(subst_term(a, m));
      return f_rel(f->rel, std::move(args));
    }
    case FKind::kNot: return f_not(instantiate(f->a, m, from, s));
    case FKind::kAnd: return f_and(instantiate(f->a, m, from, s), instantiate(f->b, m, from, s));
    case FKind::kOr: return f_or(instantiate(f->a, m, from, s), instantiate(f->b, m, from, s));
    case FKind::kImplies: return f_implies(instantiate(f->a, m, from, s), instantiate(f->b, m, from, s));
    case FKind::kIff: return f_iff(instantiate(f->a, m, from, s), instantiate(f->b, m, from, s));
    case FKind::kExists:
    case FKind::kForall: {
      std::vector<Var> vs;
      for (Var v : f->vars) {
        Var fresh = s.fresh(from.name(v));
        m[v] = fresh;
        vs.push_back(fresh);
      }
      Formula body = instantiate(f->a, m, from, s);
      return f->kind == FKind::kExists ? f_exists(std::move(vs), body)
                                       : f_forall(std::move(vs), body);
    }
  }
  return f;
}

std::string succ(const std::string& v, const std::string& w) {
  return "(((ex j. " + v + " = g(j)) & " + w + " = f(" + v + ")) | (~(ex j. " + v +
         " = g(j)) & " + w + " = g(" + v + ")))";
}

std::string pred(const std::string& v, const std::string& w) {
  return "((ex j. " + v + " = f(j) & (((ex k. j = g(k)) & " + w + " = j) | (~(ex k. j = g(k)) & " +
         w + " = " + v + "))) | (ex j. " + v + " = g(j) & (((ex k. j = g(k)) & " + w + " = " + v +
         ") | (~(ex k. j = g(k)) & " + w + " = j))) | (~(ex j. " + v + " = f(j)) & ~(ex j. " + v +
         " = g(j)) & ~(" + v + " = 0) & " + w + " = " + v + "))";
}

Term parity(int i) {
  if (i < 0) throw std::invalid_argument("encode_position: negative component");
  if (i % 2 == 1) return t_app("g", {parity(i - 1)});
  Term t = t_app("0");
  for (int n = 0; n < i / 2; ++n) t = t_app("f", {t_app("g", {t})});
  return t;
}

std::size_t formula_nodes(const Solutions& sol) {
  std::size_t n = 0;
  for (const auto& t : sol.raw.solved) n += node_count(t);
  return n;
}

}  // namespace

GameSpec GameSpec::game1() {
  return GameSpec{1, Signature::trees({{"0", 0}, {"s", 1}}),
                  "from = s(to) | from = s(s(to)) | (~(from = 0) & ~(ex u. from = s(u)) & from = to)"};
}

GameSpec GameSpec::game2() {
  std::string transition =
      "(ex u v w. ((from = c(u, v) & to = c(u, w)) | (from = c(v, u) & to = c(w, u))) & "
      "(((ex i. u = g(i)) & " + succ("v", "w") + ") | (~(ex i. u = g(i)) & " + pred("v", "w") + ")))";
  return GameSpec{2, Signature::trees({{"0", 0}, {"f", 1}, {"g", 1}, {"c", 2}}),
                  transition + " | (~(ex u v. from = c(u, v)) & from = to)"};
}

GameSpec GameSpec::by_id(int id) {
  if (id == 1) return game1();
  if (id == 2) return game2();
  throw std::invalid_argument("unknown game " + std::to_string(id));
}

Formula GameSpec::move(Var x, Var y, Session& s) const {
  Session scratch;
  Formula tmpl = parse_formula(move_text, sig, scratch);
  VarMap m;
  for (Var v : free_vars(tmpl)) {
    const std::string& n = scratch.name(v);
    if (n == "from") m[v] = x;
    else if (n == "to") m[v] = y;
    else throw std::logic_error("move template has stray free variable " + n);
  }
  return instantiate(tmpl, m, scratch, s);
}

Formula gen_winning(const GameSpec& g, int k, Var x, Session& s) {
  if (k < 0) throw std::invalid_argument("gen_winning: negative k");
  if (k == 0) return f_false();
  Var y = s.fresh("y");
  Var x2 = s.fresh("x");
  Formula inner = f_exists({x2}, f_and(g.move(y, x2, s), f_not(gen_winning(g, k - 1, x2, s))));
  return f_exists({y}, f_and(g.move(x, y, s), f_not(inner)));
}

GroundTree encode_position(const GameSpec& g, Position p) {
  if (p.first < 0 || p.second < 0) throw std::invalid_argument("encode_position: negative component");
  if (g.id == 1) {
    Term t = t_app("0");
    for (int n = 0; n < p.first; ++n) t = t_app("s", {t});
    return t;
  }
  return t_app("c", {parity(p.first), parity(p.second)});
}

std::vector<BenchRow> run_bench(const GameSpec& g, const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  int bound = cfg.position_bound >= 0 ? cfg.position_bound : (g.id == 1 ? 50 : 8);
  TreeTheory th(g.sig);
  auto start = Clock::now();
  std::vector<BenchRow> rows;
  bool exhausted = false;
  for (int k = 0; k <= cfg.k_max; ++k) {
    BenchRow row;
    row.k = k;
    double used = std::chrono::duration<double>(Clock::now() - start).count();
    if (exhausted || used >= cfg.budget_seconds) {
      exhausted = true;
      rows.push_back(row);
      continue;
    }
    Session s;
    Var x = s.var("x");
    Formula w = gen_winning(g, k, x, s);
    SolveOptions opts;
    opts.limits = cfg.limits;
    opts.limits.max_seconds = cfg.budget_seconds - used;
    try {
      Solutions sol = present_solutions(w, th, s, opts);
      row.completed = true;
      row.wall_ms = sol.raw.stats.wall_ms;
      row.steps = sol.raw.stats.steps;
      row.peak_nodes = sol.raw.stats.peak_nodes;
      row.disjuncts = sol.disjuncts.size();
      row.output_nodes = formula_nodes(sol);
      Formula d = embed_solutions(sol);
      row.reference = game_brute_force(g.id, k, bound);
      for (int i = 0; i <= bound; ++i) {
        for (int j = 0; j <= (g.id == 1 ? 0 : bound); ++j) {
          if (eval_solved_on_ground(d, {{x, encode_position(g, {i, j})}})) row.solution.emplace(i, j);
        }
      }
      row.validated = row.solution == row.reference;
    } catch (const SolveLimitError&) {
      exhausted = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const GameSpec& g, const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  auto line = [&](const std::string& head, auto cell) {
    out << head;
    for (const auto& r : rows) out << ',' << (r.completed ? cell(r) : std::string("-"));
    out << '\n';
  };
  out << "k (Game " << g.id << ")";
  for (const auto& r : rows) out << ',' << r.k;
  out << '\n';
  line("wall_ms", [](const BenchRow& r) { return std::to_string(static_cast<long long>(r.wall_ms)); });
  line("steps", [](const BenchRow& r) { return std::to_string(r.steps); });
  line("disjuncts", [](const BenchRow& r) { return std::to_string(r.disjuncts); });
  line("validated", [](const BenchRow& r) { return std::string(r.validated ? "yes" : "no"); });
  return out.str();
}

}  // namespace decomp
