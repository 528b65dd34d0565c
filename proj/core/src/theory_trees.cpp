#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "decomp/theories.hpp"

namespace decomp {
namespace {

using Kind = FlatAtom::Kind;

void require_equations(const Core& c) {
  for (const auto& a : c.atoms) {
    if (a.kind == Kind::kRel) throw TheoryError("foreign symbol: " + a.sym);
  }
  if (!c.block.empty()) throw TheoryError("foreign symbol: linear equation");
}

struct AppTerm {
  std::string sym;
  std::vector<Var> args;
};

// Among two terms with the same functor, the one with the higher-ranked
// arguments is kept; the other contributes argument equations.
bool prefer(const AppTerm& a, const AppTerm& b) {
  return std::lexicographical_compare(b.args.begin(), b.args.end(), a.args.begin(), a.args.end());
}

class Unifier {
 public:
  bool add(const FlatAtom& a) {
    if (a.kind == Kind::kEqVar) {
      pending_.emplace_back(a.lhs, a.rhs());
    } else if (!attach(find(a.lhs), AppTerm{a.sym, a.args})) {
      return false;
    }
    return drain();
  }

  Core extract() {
    std::vector<FlatAtom> out;
    for (const auto& [v, p] : parent_) {
      (void)p;
      Var root = find(v);
      if (root != v) out.push_back(FlatAtom::eq(v, root));
    }
    for (const auto& [root, t] : terms_) out.push_back(FlatAtom::app(root, t.sym, t.args));
    return Core::of_atoms(std::move(out));
  }

 private:
  Var find(Var v) {
    auto it = parent_.try_emplace(v, v).first;
    if (it->second == v) return v;
    Var root = find(it->second);
    parent_[v] = root;
    return root;
  }

  bool attach(Var root, AppTerm t) {
    auto it = terms_.find(root);
    if (it == terms_.end()) {
      terms_.emplace(root, std::move(t));
      return true;
    }
    AppTerm& cur = it->second;
    if (cur.sym != t.sym || cur.args.size() != t.args.size()) return false;
    for (std::size_t i = 0; i < t.args.size(); ++i) pending_.emplace_back(cur.args[i], t.args[i]);
    if (prefer(t, cur)) cur = std::move(t);
    return true;
  }

  bool drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (outranks(b, a)) std::swap(a, b);
      // a is absorbed into the lower-ranked b; its term moves along.
      parent_[a] = b;
      auto it = terms_.find(a);
      if (it != terms_.end()) {
        AppTerm t = std::move(it->second);
        terms_.erase(it);
        if (!attach(b, std::move(t))) return false;
      }
    }
    return true;
  }

  std::map<Var, Var> parent_;
  std::map<Var, AppTerm> terms_;
  std::deque<std::pair<Var, Var>> pending_;
};

std::set<Var> lhs_set(const Core& c) {
  std::set<Var> out;
  for (const auto& a : c.atoms) out.insert(a.lhs);
  return out;
}

}  // namespace

bool tree_is_solved(const Core& c) {
  if (c.falsum || !c.block.empty()) return false;
  std::set<Var> seen;
  for (const auto& a : c.atoms) {
    if (!a.is_equation() || !seen.insert(a.lhs).second) return false;
    if (a.kind == Kind::kEqVar && !outranks(a.lhs, a.rhs())) return false;
  }
  return true;
}

Core tree_unify(const Core& c) {
  if (c.falsum) return Core::falsity();
  require_equations(c);
  if (tree_is_solved(c)) return c;
  Unifier u;
  for (const auto& a : c.atoms) {
    if (!u.add(a)) return Core::falsity();
  }
  return u.extract();
}

std::optional<Core> tree_rewrite_once(const Core& c) {
  if (c.falsum) return std::nullopt;
  require_equations(c);
  std::vector<FlatAtom> atoms = c.atoms;
  auto done = [&] { return std::optional<Core>(Core::of_atoms(std::move(atoms))); };
  const std::size_t n = atoms.size();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const FlatAtom& a = atoms[i];
      const FlatAtom& b = atoms[j];
      if (i == j || a.kind != Kind::kEqApp || b.kind != Kind::kEqApp || a.lhs != b.lhs) continue;
      // (2) clash
      if (a.sym != b.sym || a.args.size() != b.args.size()) return Core::falsity();
      // (3) decomposition, keeping a
      if (!prefer(AppTerm{a.sym, a.args}, AppTerm{b.sym, b.args})) continue;
      std::vector<Var> ys = a.args, zs = b.args;
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
      for (std::size_t k = 0; k < ys.size(); ++k) atoms.push_back(FlatAtom::eq(ys[k], zs[k]));
      return done();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    FlatAtom& a = atoms[i];
    if (a.kind != Kind::kEqVar) continue;
    // (4) x = x
    if (a.lhs == a.rhs()) {
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      return done();
    }
    // (5) orientation
    if (outranks(a.rhs(), a.lhs)) {
      a = FlatAtom::eq(a.rhs(), a.lhs);
      return done();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const FlatAtom& a = atoms[i];
    if (a.kind != Kind::kEqVar) continue;
    // a is x = y with x ≻ y; only the highest-ranked y is used as the pivot.
    bool best = std::none_of(atoms.begin(), atoms.end(), [&](const FlatAtom& b) {
      return b.kind == Kind::kEqVar && b.lhs == a.lhs && outranks(b.rhs(), a.rhs());
    });
    if (!best) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || atoms[j].lhs != a.lhs) continue;
      // (6) x = y & x = f(z) => x = y & y = f(z);  (7) x = y & x = z => x = y & y = z
      atoms[j].lhs = a.rhs();
      return done();
    }
  }
  return std::nullopt;
}

std::array<std::uint64_t, 4> tree_measure(const Core& c) {
  std::array<std::uint64_t, 4> m{0, 0, 0, 0};
  if (c.falsum) return m;
  for (const auto& a : c.atoms) {
    if (a.kind == Kind::kEqApp) ++m[0];
    ++m[1];
    if (a.is_equation()) m[2] += a.lhs.rank();
    for (Var v : a.args) m[2] += v.rank();
    if (a.kind == Kind::kEqVar && outranks(a.rhs(), a.lhs)) ++m[3];
  }
  return m;
}

ReachabilityReport reachable(const std::vector<Var>& xs, const Core& c) {
  if (c.falsum) throw TheoryError("reachable: false core");
  std::set<Var> bound(xs.begin(), xs.end());
  std::multimap<Var, std::size_t> by_lhs;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    if (c.atoms[i].is_equation()) by_lhs.emplace(c.atoms[i].lhs, i);
  }
  ReachabilityReport r;
  std::deque<Var> queue;
  for (const auto& [lhs, i] : by_lhs) {
    if (!bound.contains(lhs)) queue.push_back(lhs);
  }
  std::set<std::size_t> eqs;
  std::set<Var> seen;
  while (!queue.empty()) {
    Var v = queue.front();
    queue.pop_front();
    if (!seen.insert(v).second) continue;
    if (bound.contains(v)) r.vars.insert(v);
    auto [lo, hi] = by_lhs.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      eqs.insert(it->second);
      for (Var w : c.atoms[it->second].args) queue.push_back(w);
    }
  }
  r.equations.assign(eqs.begin(), eqs.end());
  return r;
}

Decomposition tree_decompose(const std::vector<Var>& xs, const Core& c) {
  check_binder_ranks(xs, c);
  Decomposition d;
  Core solved = tree_unify(c);
  if (solved.falsum) {
    d.a_prime = Core::falsity();
    d.x_dprime = xs;
    return d;
  }
  ReachabilityReport rea = reachable(xs, solved);
  std::set<std::size_t> rea_eqs(rea.equations.begin(), rea.equations.end());
  std::vector<FlatAtom> reached, unreached;
  for (std::size_t i = 0; i < solved.atoms.size(); ++i) {
    (rea_eqs.contains(i) ? reached : unreached).push_back(solved.atoms[i]);
  }
  std::set<Var> lhs = lhs_set(solved);
  for (Var x : xs) {
    if (rea.vars.contains(x)) {
      d.x_prime.push_back(x);
    } else if (lhs.contains(x)) {
      d.x_tprime.push_back(x);
    } else {
      d.x_dprime.push_back(x);
    }
  }
  d.a_prime = Core::of_atoms(std::move(reached));
  d.a_tprime = Core::of_atoms(std::move(unreached));
  return d;
}

TreeTheory::TreeTheory(Signature sig) : sig_(std::move(sig)) {}

std::string_view TreeTheory::psi_description() const {
  return "{ ex y1..yn. u = f(y1..yn) : f in F minus a finite F0 }";
}

Core TreeTheory::flat_to_core(const std::vector<FlatAtom>& atoms) const {
  for (const auto& a : atoms) {
    if (a.kind == Kind::kRel) throw TheoryError("foreign symbol: " + a.sym);
    if (a.kind == Kind::kEqApp) {
      const Symbol* f = sig_.function(a.sym);
      if (!f || static_cast<std::size_t>(f->arity) != a.args.size()) {
        throw TheoryError("foreign symbol: " + a.sym);
      }
    }
  }
  return Core::of_atoms(atoms);
}

Core TreeTheory::conjoin(const Core& a, const Core& b) const {
  Core c = decomp::conjoin(a, b);
  return tree_unify(c).falsum ? Core::falsity() : c;
}

bool TreeTheory::entails(const Core& a, const std::vector<Var>& ys, const Core& b) const {
  return atoms_entail(a, ys, b);
}

Decomposition TreeTheory::decompose(const std::vector<Var>& xs, const Core& a) const {
  return tree_decompose(xs, a);
}

bool TreeTheory::in_a_prime(const std::vector<Var>& xs, const Core& a) const {
  if (a.falsum) return xs.empty();
  if (!tree_is_solved(a)) return false;
  std::set<Var> bound(xs.begin(), xs.end());
  if (bound.size() != xs.size()) return false;
  ReachabilityReport rea = reachable(xs, a);
  if (rea.equations.size() != a.atoms.size()) return false;
  return std::all_of(xs.begin(), xs.end(), [&](Var x) { return rea.vars.contains(x); });
}

bool TreeTheory::in_a_tprime(const std::vector<Var>& xs, const Core& a) const {
  if (!tree_is_solved(a)) return false;
  std::set<Var> bound(xs.begin(), xs.end());
  return bound.size() == xs.size() && bound == lhs_set(a);
}

}  // namespace decomp
