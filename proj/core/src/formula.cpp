#include "decomp/formula.hpp"

#include <optional>
#include <unordered_map>

namespace decomp {

Term t_var(Var v) {
  auto n = std::make_shared<TermNode>();
  n->is_var = true;
  n->var = v;
  return n;
}

Term t_app(std::string fn, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->fn = std::move(fn);
  n->args = std::move(args);
  return n;
}

namespace {

Formula make(FKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

Formula make_unary(FKind k, Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

Formula make_binary(FKind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Formula make_quant(FKind k, std::vector<Var> vars, Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->vars = std::move(vars);
  n->a = std::move(a);
  return n;
}

}  // namespace

Formula f_true() {
  static const Formula t = make(FKind::kTrue);
  return t;
}
Formula f_false() {
  static const Formula f = make(FKind::kFalse);
  return f;
}

Formula f_eq(Term l, Term r) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::kEq;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

Formula f_rel(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::kRel;
  n->rel = std::move(name);
  n->rel_args = std::move(args);
  return n;
}

Formula f_not(Formula a) { return make_unary(FKind::kNot, std::move(a)); }
Formula f_and(Formula a, Formula b) { return make_binary(FKind::kAnd, std::move(a), std::move(b)); }
Formula f_or(Formula a, Formula b) { return make_binary(FKind::kOr, std::move(a), std::move(b)); }
Formula f_implies(Formula a, Formula b) {
  return make_binary(FKind::kImplies, std::move(a), std::move(b));
}
Formula f_iff(Formula a, Formula b) { return make_binary(FKind::kIff, std::move(a), std::move(b)); }
Formula f_exists(std::vector<Var> vars, Formula a) {
  return make_quant(FKind::kExists, std::move(vars), std::move(a));
}
Formula f_forall(std::vector<Var> vars, Formula a) {
  return make_quant(FKind::kForall, std::move(vars), std::move(a));
}

Formula f_and_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

Formula f_or_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->is_var != b->is_var) return false;
  if (a->is_var) return a->var == b->var;
  if (a->fn != b->fn || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!term_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return true;
    case FKind::kEq: return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
    case FKind::kRel:
      if (a->rel != b->rel || a->rel_args.size() != b->rel_args.size()) return false;
      for (std::size_t i = 0; i < a->rel_args.size(); ++i) {
        if (!term_equal(a->rel_args[i], b->rel_args[i])) return false;
      }
      return true;
    case FKind::kNot: return formula_equal(a->a, b->a);
    case FKind::kExists:
    case FKind::kForall: return a->vars == b->vars && formula_equal(a->a, b->a);
    default: return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
  }
}

namespace {

// Bound-variable correspondence: each side maps a bound variable to the
// binder depth at which it was introduced.
struct AlphaCtx {
  std::unordered_map<Var, std::vector<int>> left, right;
  int depth = 0;
};

bool alpha_var(const AlphaCtx& c, Var a, Var b) {
  auto la = c.left.find(a);
  auto rb = c.right.find(b);
  bool ba = la != c.left.end() && !la->second.empty();
  bool bb = rb != c.right.end() && !rb->second.empty();
  if (ba != bb) return false;
  if (!ba) return a == b;
  return la->second.back() == rb->second.back();
}

bool alpha_term(const AlphaCtx& c, const Term& a, const Term& b) {
  if (a->is_var != b->is_var) return false;
  if (a->is_var) return alpha_var(c, a->var, b->var);
  if (a->fn != b->fn || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!alpha_term(c, a->args[i], b->args[i])) return false;
  }
  return true;
}

bool alpha_rec(AlphaCtx& c, const Formula& a, const Formula& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return true;
    case FKind::kEq: return alpha_term(c, a->lhs, b->lhs) && alpha_term(c, a->rhs, b->rhs);
    case FKind::kRel:
      if (a->rel != b->rel || a->rel_args.size() != b->rel_args.size()) return false;
      for (std::size_t i = 0; i < a->rel_args.size(); ++i) {
        if (!alpha_term(c, a->rel_args[i], b->rel_args[i])) return false;
      }
      return true;
    case FKind::kNot: return alpha_rec(c, a->a, b->a);
    case FKind::kExists:
    case FKind::kForall: {
      if (a->vars.size() != b->vars.size()) return false;
      for (std::size_t i = 0; i < a->vars.size(); ++i) {
        int d = ++c.depth;
        c.left[a->vars[i]].push_back(d);
        c.right[b->vars[i]].push_back(d);
      }
      bool ok = alpha_rec(c, a->a, b->a);
      for (std::size_t i = 0; i < a->vars.size(); ++i) {
        c.left[a->vars[i]].pop_back();
        c.right[b->vars[i]].pop_back();
      }
      return ok;
    }
    default: return alpha_rec(c, a->a, b->a) && alpha_rec(c, a->b, b->b);
  }
}

void collect_term_vars(const Term& t, std::set<Var>& out) {
  if (t->is_var) {
    out.insert(t->var);
    return;
  }
  for (const auto& a : t->args) collect_term_vars(a, out);
}

void collect_free(const Formula& f, std::multiset<Var>& bound, std::set<Var>& out) {
  auto add_term = [&](const Term& t) {
    std::set<Var> vs;
    collect_term_vars(t, vs);
    for (Var v : vs) {
      if (!bound.contains(v)) out.insert(v);
    }
  };
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return;
    case FKind::kEq:
      add_term(f->lhs);
      add_term(f->rhs);
      return;
    case FKind::kRel:
      for (const auto& t : f->rel_args) add_term(t);
      return;
    case FKind::kNot: collect_free(f->a, bound, out); return;
    case FKind::kExists:
    case FKind::kForall: {
      for (Var v : f->vars) bound.insert(v);
      collect_free(f->a, bound, out);
      for (Var v : f->vars) bound.erase(bound.find(v));
      return;
    }
    default:
      collect_free(f->a, bound, out);
      collect_free(f->b, bound, out);
  }
}

void collect_bound(const Formula& f, std::set<Var>& out) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse:
    case FKind::kEq:
    case FKind::kRel: return;
    case FKind::kNot: collect_bound(f->a, out); return;
    case FKind::kExists:
    case FKind::kForall:
      out.insert(f->vars.begin(), f->vars.end());
      collect_bound(f->a, out);
      return;
    default:
      collect_bound(f->a, out);
      collect_bound(f->b, out);
  }
}

Term rename_term(const Term& t, const std::unordered_map<Var, Var>& env) {
  if (t->is_var) {
    auto it = env.find(t->var);
    return it == env.end() ? t : t_var(it->second);
  }
  std::vector<Term> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(rename_term(a, env));
  return t_app(t->fn, std::move(args));
}

Formula rename_rec(const Formula& f, std::unordered_map<Var, Var>& env, Session& s) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return f;
    case FKind::kEq: return f_eq(rename_term(f->lhs, env), rename_term(f->rhs, env));
    case FKind::kRel: {
      std::vector<Term> args;
      for (const auto& t : f->rel_args) args.push_back(rename_term(t, env));
      return f_rel(f->rel, std::move(args));
    }
    case FKind::kNot: return f_not(rename_rec(f->a, env, s));
    case FKind::kExists:
    case FKind::kForall: {
      std::vector<Var> fresh;
      std::vector<std::pair<Var, std::optional<Var>>> saved;
      for (Var v : f->vars) {
        Var n = s.fresh_like(v);
        fresh.push_back(n);
        auto it = env.find(v);
        saved.emplace_back(v, it == env.end() ? std::nullopt : std::optional<Var>(it->second));
        env[v] = n;
      }
      Formula body = rename_rec(f->a, env, s);
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
        if (it->second) {
          env[it->first] = *it->second;
        } else {
          env.erase(it->first);
        }
      }
      return f->kind == FKind::kExists ? f_exists(std::move(fresh), body)
                                       : f_forall(std::move(fresh), body);
    }
    default: {
      Formula a = rename_rec(f->a, env, s);
      Formula b = rename_rec(f->b, env, s);
      auto n = std::make_shared<FormulaNode>(*f);
      n->a = a;
      n->b = b;
      return n;
    }
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  AlphaCtx c;
  return alpha_rec(c, a, b);
}

std::set<Var> term_vars(const Term& t) {
  std::set<Var> out;
  collect_term_vars(t, out);
  return out;
}

std::set<Var> free_vars(const Formula& f) {
  std::multiset<Var> bound;
  std::set<Var> out;
  collect_free(f, bound, out);
  return out;
}

std::set<Var> bound_vars(const Formula& f) {
  std::set<Var> out;
  collect_bound(f, out);
  return out;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t->args) n += term_size(a);
  return n;
}

std::size_t formula_size(const Formula& f) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return 1;
    case FKind::kEq: return 1 + term_size(f->lhs) + term_size(f->rhs);
    case FKind::kRel: {
      std::size_t n = 1;
      for (const auto& t : f->rel_args) n += term_size(t);
      return n;
    }
    case FKind::kNot: return 1 + formula_size(f->a);
    case FKind::kExists:
    case FKind::kForall: return 1 + f->vars.size() + formula_size(f->a);
    default: return 1 + formula_size(f->a) + formula_size(f->b);
  }
}

Formula fresh_rename(const Formula& f, Session& s) {
  std::unordered_map<Var, Var> env;
  return rename_rec(f, env, s);
}

}  // namespace decomp
