#include "util.hpp"

#include "decomp/random.hpp"
#include "decomp/solver.hpp"
#include "decomp/syntax.hpp"
#include "decomp/theories.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace decomp::testing {

Signature trees_sig() {
  return Signature::trees({{"0", 0}, {"s", 1}, {"f", 1}, {"g", 2}, {"h", 1}, {"c", 2}});
}

LinearEq lin(std::initializer_list<std::pair<Var, long>> terms, long constant) {
  LinearEq e;
  for (auto [v, a] : terms) e.terms.emplace_back(v, mpz_class(a));
  e.constant = constant;
  e.canonicalize();
  return e;
}

std::vector<Var> sorted(std::vector<Var> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}

namespace {

void walk(const NegTree& t, std::multiset<Var>& bound, std::set<Var>& used) {
  for (Var v : t.bound) bound.insert(v);
  collect_vars(t.core, used);
  for (const auto& c : t.children) walk(c, bound, used);
}

void free_walk(const NegTree& t, std::set<Var> scope, std::set<Var>& out) {
  scope.insert(t.bound.begin(), t.bound.end());
  for (Var v : vars_of(t.core))
    if (!scope.count(v)) out.insert(v);
  for (const auto& c : t.children) free_walk(c, scope, out);
}

}  // namespace

std::set<Var> free_vars_of(const std::vector<NegTree>& conj) {
  std::set<Var> out;
  for (const auto& t : conj) free_walk(t, {}, out);
  return out;
}

bool binders_distinct(const std::vector<NegTree>& conj) {
  std::multiset<Var> bound;
  std::set<Var> used;
  for (const auto& t : conj) walk(t, bound, used);
  for (Var v : bound)
    if (bound.count(v) > 1) return false;
  for (Var v : free_vars_of(conj))
    if (bound.count(v)) return false;
  return true;
}

namespace {

Var as_var(const Term& t) {
  if (!t->is_var) throw std::invalid_argument("expected a variable argument");
  return t->var;
}

void read_body(const Formula& f, NegTree& out, std::vector<FlatAtom>& atoms) {
  switch (f->kind) {
    case FKind::kTrue: return;
    case FKind::kFalse: atoms.push_back(FlatAtom::falsity()); return;
    case FKind::kAnd:
      read_body(f->a, out, atoms);
      read_body(f->b, out, atoms);
      return;
    case FKind::kNot: out.children.push_back(read_normalized(f)); return;
    case FKind::kEq: {
      Term l = f->lhs, r = f->rhs;
      if (!l->is_var) std::swap(l, r);
      if (r->is_var) {
        atoms.push_back(FlatAtom::eq(as_var(l), r->var));
      } else {
        std::vector<Var> args;
        for (const auto& a : r->args) args.push_back(as_var(a));
        atoms.push_back(FlatAtom::app(as_var(l), r->fn, args));
      }
      return;
    }
    default: throw std::invalid_argument("not a normalized body");
  }
}

using Map = std::map<Var, Var>;

Core rename_core(const Core& c, const Map& m) {
  VarMap vm(m.begin(), m.end());
  return rename(c, vm);
}

bool iso_with(const NegTree& a, const NegTree& b, Map m);

// Matches a's children against a permutation of b's.
bool match_children(const NegTree& a, const NegTree& b, const Map& m, std::size_t i,
                    std::vector<bool>& used) {
  if (i == a.children.size()) return true;
  for (std::size_t j = 0; j < b.children.size(); ++j) {
    if (used[j] || !iso_with(a.children[i], b.children[j], m)) continue;
    used[j] = true;
    if (match_children(a, b, m, i + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

bool iso_with(const NegTree& a, const NegTree& b, Map m) {
  if (a.bound.size() != b.bound.size() || a.children.size() != b.children.size()) return false;
  std::vector<Var> perm = b.bound;
  std::sort(perm.begin(), perm.end());
  do {
    Map mm = m;
    for (std::size_t i = 0; i < perm.size(); ++i) mm[a.bound[i]] = perm[i];
    if (rename_core(a.core, mm) != b.core) continue;
    std::vector<bool> used(b.children.size(), false);
    if (match_children(a, b, mm, 0, used)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

NegTree read_normalized(const Formula& f) {
  if (f->kind != FKind::kNot || f->a->kind != FKind::kExists)
    throw std::invalid_argument("expected ~(ex ...)");
  NegTree t;
  t.bound = f->a->vars;
  std::vector<FlatAtom> atoms;
  read_body(f->a->a, t, atoms);
  t.core = Core::of_atoms(std::move(atoms));
  return t;
}

bool tree_iso(const NegTree& a, const NegTree& b) { return iso_with(a, b, {}); }

InvariantReport check_random_working(TheoryTag tag, int count, std::uint64_t seed, bool prune_first) {
  Signature sig = tag == TheoryTag::kEq ? Signature::eq()
                  : tag == TheoryTag::kRa ? Signature::ra()
                                          : trees_sig();
  std::unique_ptr<Theory> th = make_theory(sig);
  FormulaGen gen(sig, seed);
  RandomShape shape;
  shape.free_vars = 2;
  InvariantReport rep;
  for (int n = 0; n < count; ++n) {
    Session s;
    Formula f = gen.next(s, shape);
    WorkingFormula w = to_working(normalize(f, s), *th);
    SolveOptions o;
    o.trace = true;
    o.check_binders = true;
    o.check_measure = true;
    o.prune_first = prune_first;
    o.limits.max_steps = 200'000;
    o.limits.max_seconds = 5;
    ++rep.formulas;
    if (debug_measure({w}, *th, o.measure_depth_cap)) ++rep.measured;
    auto fail = [&](const std::string& why) {
      if (rep.failures++ == 0) rep.first_failure = why + ": " + print_formula(f, s);
    };
    Session copy = s;
    try {
      SolveResult r = solve(w, *th, s, o);
      bool all_solved = true;
      for (const auto& m : r.solved) all_solved = all_solved && is_solved(m, *th);
      if (!all_solved) { fail("unsolved member"); continue; }
      if (!binders_distinct(r.solved)) { fail("repeated binder"); continue; }
      auto fv = free_vars(f);
      bool wnfv = true;
      for (Var v : free_vars_of(r.solved)) wnfv = wnfv && fv.count(v);
      if (!wnfv) { fail("new free variable"); continue; }
      auto again = replay({w}, r.trace, *th, copy);
      if (print_trees(again, s) != print_trees(r.solved, s)) fail("replay mismatch");
    } catch (const SolveLimitError&) {
      ++rep.limit_hits;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return rep;
}

}  // namespace decomp::testing
