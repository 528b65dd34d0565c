#include "decomp/normalize.hpp"

#include <algorithm>
#include <map>

namespace decomp {
namespace {

// ---- step 1 -----------------------------------------------------------------

Var flatten_term(const Term& t, Session& s, std::vector<Var>& fresh, std::vector<Formula>& eqs);

std::vector<Term> flatten_args(const std::vector<Term>& args, Session& s, std::vector<Var>& fresh,
                               std::vector<Formula>& eqs) {
  std::vector<Term> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(t_var(flatten_term(a, s, fresh, eqs)));
  return out;
}

Var flatten_term(const Term& t, Session& s, std::vector<Var>& fresh, std::vector<Formula>& eqs) {
  if (t->is_var) return t->var;
  Var v = s.fresh("t");
  fresh.push_back(v);
  std::size_t slot = eqs.size();
  eqs.push_back(nullptr);
  eqs[slot] = f_eq(t_var(v), t_app(t->fn, flatten_args(t->args, s, fresh, eqs)));
  return v;
}

bool flat_app(const Term& t) {
  return !t->is_var && std::all_of(t->args.begin(), t->args.end(),
                                   [](const Term& a) { return a->is_var; });
}

Formula flatten_atom(const Formula& f, Session& s) {
  std::vector<Var> fresh;
  std::vector<Formula> eqs;
  if (f->kind == FKind::kRel) {
    std::vector<Term> args = flatten_args(f->rel_args, s, fresh, eqs);
    if (fresh.empty()) return f;
    eqs.insert(eqs.begin(), f_rel(f->rel, std::move(args)));
  } else {
    Term l = f->lhs, r = f->rhs;
    if (!l->is_var && r->is_var) std::swap(l, r);
    if (l->is_var && (r->is_var || flat_app(r))) return f_eq(l, r);
    if (l->is_var) {
      std::vector<Term> args = flatten_args(r->args, s, fresh, eqs);
      eqs.insert(eqs.begin(), f_eq(l, t_app(r->fn, std::move(args))));
    } else {
      Var top = s.fresh("t");
      fresh.push_back(top);
      eqs.push_back(f_eq(t_var(top), t_app(l->fn, flatten_args(l->args, s, fresh, eqs))));
      eqs.push_back(f_eq(t_var(top), t_app(r->fn, flatten_args(r->args, s, fresh, eqs))));
    }
  }
  return f_exists(std::move(fresh), f_and_all(eqs));
}

Formula rebuild(const Formula& f, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>(*f);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// ---- steps 5-7 --------------------------------------------------------------

FlatAtom to_flat_atom(const Formula& f) {
  if (f->kind == FKind::kRel) {
    std::vector<Var> args;
    for (const auto& t : f->rel_args) args.push_back(t->var);
    return FlatAtom::rel(f->rel, std::move(args));
  }
  Term l = f->lhs, r = f->rhs;
  if (!l->is_var) std::swap(l, r);
  if (r->is_var) return FlatAtom::eq(l->var, r->var);
  std::vector<Var> args;
  for (const auto& t : r->args) args.push_back(t->var);
  return FlatAtom::app(l->var, r->fn, std::move(args));
}

struct Gather {
  std::vector<Var> bound;
  std::vector<FlatAtom> atoms;
  std::vector<NegTree> children;
};

NegTree build_negation(const Formula& body);

void gather(const Formula& f, Gather& g) {
  switch (f->kind) {
    case FKind::kTrue: return;
    case FKind::kFalse: g.atoms.push_back(FlatAtom::falsity()); return;
    case FKind::kEq:
    case FKind::kRel: g.atoms.push_back(to_flat_atom(f)); return;
    case FKind::kExists:
      g.bound.insert(g.bound.end(), f->vars.begin(), f->vars.end());
      gather(f->a, g);
      return;
    case FKind::kAnd:
      gather(f->a, g);
      gather(f->b, g);
      return;
    case FKind::kNot: g.children.push_back(build_negation(f->a)); return;
    default: throw std::logic_error("gather: connective outside ~, &, ex");
  }
}

NegTree build_negation(const Formula& body) {
  Gather g;
  gather(body, g);
  return NegTree{std::move(g.bound), Core::of_atoms(std::move(g.atoms)), std::move(g.children)};
}

// ---- embedding ----------------------------------------------------------------

Formula embed_atom(const FlatAtom& a) {
  auto vars = [](const std::vector<Var>& vs) {
    std::vector<Term> ts;
    for (Var v : vs) ts.push_back(t_var(v));
    return ts;
  };
  switch (a.kind) {
    case FlatAtom::Kind::kTrue: return f_true();
    case FlatAtom::Kind::kFalse: return f_false();
    case FlatAtom::Kind::kEqVar: return f_eq(t_var(a.lhs), t_var(a.rhs()));
    case FlatAtom::Kind::kEqApp: return f_eq(t_var(a.lhs), t_app(a.sym, vars(a.args)));
    case FlatAtom::Kind::kRel: return f_rel(a.sym, vars(a.args));
  }
  return f_true();
}

// k·t as a sum whose repeated halves are shared nodes.
Term multiply(const mpz_class& k, const Term& t) {
  if (k == 1) return t;
  mpz_class half = k / 2;
  Term h = multiply(half, t);
  Term twice = t_app("+", {h, h});
  return k % 2 == 0 ? twice : t_app("+", {twice, t});
}

Term monomial(const mpz_class& k, const Term& t) {
  if (k == 0) return t_app("0");
  if (k < 0) return t_app("-", {multiply(-k, t)});
  return multiply(k, t);
}

Formula embed_linear(const LinearEq& e) {
  Term lhs;
  for (const auto& [v, a] : e.terms) {
    Term m = monomial(a, t_var(v));
    lhs = lhs ? t_app("+", {lhs, m}) : m;
  }
  if (!lhs) lhs = t_app("0");
  return f_eq(lhs, monomial(e.constant, t_app("1")));
}

void print_tree_into(const NegTree& t, const Session& s, std::string& out) {
  out += "~(ex";
  for (Var v : t.bound) {
    out += ' ';
    out += s.name(v);
  }
  out += t.bound.empty() ? " . " : ". ";
  out += print_core(t.core, s);
  for (const auto& c : t.children) {
    out += " & ";
    print_tree_into(c, s, out);
  }
  out += ')';
}

}  // namespace

Formula flatten(const Formula& f, Session& s) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse: return f;
    case FKind::kEq:
    case FKind::kRel: return flatten_atom(f, s);
    case FKind::kNot: return f_not(flatten(f->a, s));
    case FKind::kExists: return f_exists(f->vars, flatten(f->a, s));
    case FKind::kForall: return f_forall(f->vars, flatten(f->a, s));
    default: {
      Formula a = flatten(f->a, s);
      return rebuild(f, a, flatten(f->b, s));
    }
  }
}

Formula to_core(const Formula& f) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse:
    case FKind::kEq:
    case FKind::kRel: return f;
    case FKind::kNot: return f_not(to_core(f->a));
    case FKind::kExists: return f_exists(f->vars, to_core(f->a));
    case FKind::kForall: return f_not(f_exists(f->vars, f_not(to_core(f->a))));
    case FKind::kAnd: return f_and(to_core(f->a), to_core(f->b));
    case FKind::kOr: return f_not(f_and(f_not(to_core(f->a)), f_not(to_core(f->b))));
    case FKind::kImplies: return f_not(f_and(to_core(f->a), f_not(to_core(f->b))));
    case FKind::kIff: {
      Formula a = to_core(f->a), b = to_core(f->b);
      return f_and(f_not(f_and(a, f_not(b))), f_not(f_and(b, f_not(a))));
    }
  }
  return f;
}

NormalizedFormula normalize(const Formula& f, Session& s) {
  Formula g = to_core(flatten(f, s));
  if (g->kind != FKind::kNot) g = f_not(f_exists({}, f_and(f_true(), f_not(g))));
  g = fresh_rename(g, s);
  return build_negation(g->a);
}

WorkingFormula to_working(const NormalizedFormula& n, const Theory& th) {
  WorkingFormula w;
  w.bound = n.bound;
  w.core = n.core.falsum ? Core::falsity() : th.flat_to_core(n.core.atoms);
  w.children.reserve(n.children.size());
  for (const auto& c : n.children) w.children.push_back(to_working(c, th));
  return w;
}

Formula embed_core(const Core& c) {
  if (c.falsum) return f_false();
  std::vector<Formula> parts;
  for (const auto& a : c.atoms) parts.push_back(embed_atom(a));
  for (const auto& e : c.block) parts.push_back(embed_linear(e));
  return f_and_all(parts);
}

Formula embed(const NegTree& t) {
  std::vector<Formula> parts{embed_core(t.core)};
  for (const auto& c : t.children) parts.push_back(embed(c));
  return f_not(f_exists(t.bound, f_and_all(parts)));
}

Formula embed_all(const std::vector<NegTree>& ts) {
  std::vector<Formula> parts;
  for (const auto& t : ts) parts.push_back(embed(t));
  return f_and_all(parts);
}

std::strong_ordering compare_trees(const NegTree& a, const NegTree& b) {
  if (auto c = std::lexicographical_compare_three_way(a.bound.begin(), a.bound.end(),
                                                      b.bound.begin(), b.bound.end());
      c != 0) {
    return c;
  }
  if (auto c = a.core <=> b.core; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(),
                                                b.children.begin(), b.children.end(),
                                                compare_trees);
}

std::size_t depth(const NegTree& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, depth(c));
  return d + 1;
}

std::size_t node_count(const NegTree& t) {
  std::size_t n = 1 + t.bound.size() + t.core.size();
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

std::string print_tree(const NegTree& t, const Session& s) {
  std::string out;
  print_tree_into(t, s, out);
  return out;
}

std::string print_trees(const std::vector<NegTree>& ts, const Session& s) {
  if (ts.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += " & ";
    print_tree_into(ts[i], s, out);
  }
  return out;
}

}  // namespace decomp
