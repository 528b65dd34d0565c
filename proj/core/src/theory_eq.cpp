#include <algorithm>
#include <map>
#include <set>

#include "decomp/theories.hpp"

namespace decomp {
namespace {

void require_eq_atoms(const Core& c) {
  for (const auto& a : c.atoms) {
    if (a.kind != FlatAtom::Kind::kEqVar) throw TheoryError("non-Eq atom: " + a.sym);
  }
  if (!c.block.empty()) throw TheoryError("non-Eq atom: linear equation");
}

struct UnionFind {
  std::map<Var, Var> parent;

  Var find(Var v) {
    auto it = parent.try_emplace(v, v).first;
    if (it->second == v) return v;
    Var root = find(it->second);
    parent[v] = root;
    return root;
  }

  // The lower-ranked root survives.
  void unite(Var a, Var b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (outranks(a, b)) {
      parent[a] = b;
    } else {
      parent[b] = a;
    }
  }
};

}  // namespace

Core eq_solve(const Core& c) {
  if (c.falsum) return Core::falsity();
  require_eq_atoms(c);
  UnionFind uf;
  for (const auto& a : c.atoms) uf.unite(a.lhs, a.rhs());
  std::vector<FlatAtom> out;
  for (const auto& [v, p] : uf.parent) {
    (void)p;
    Var root = uf.find(v);
    if (root != v) out.push_back(FlatAtom::eq(v, root));
  }
  return Core::of_atoms(std::move(out));
}

std::optional<Core> eq_rewrite_once(const Core& c) {
  if (c.falsum) return std::nullopt;
  require_eq_atoms(c);
  std::vector<FlatAtom> atoms = c.atoms;

  // (5) x = x => true
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].lhs == atoms[i].rhs()) {
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      return Core::of_atoms(std::move(atoms));
    }
  }
  // (1) y = x => x = y
  for (auto& a : atoms) {
    if (outranks(a.rhs(), a.lhs)) {
      a = FlatAtom::eq(a.rhs(), a.lhs);
      return Core::of_atoms(std::move(atoms));
    }
  }
  std::set<Var, std::greater<>> leaders;
  for (const auto& a : atoms) leaders.insert(a.lhs);
  for (Var x : leaders) {
    // The kept equation x = y has the highest-ranked right-hand side.
    std::size_t keep = atoms.size();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].lhs == x && (keep == atoms.size() || outranks(atoms[i].rhs(), atoms[keep].rhs()))) {
        keep = i;
      }
    }
    Var y = atoms[keep].rhs();
    // (2) x = y & x = z => x = y & z = y
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i != keep && atoms[i].lhs == x) {
        atoms[i] = FlatAtom::eq(atoms[i].rhs(), y);
        return Core::of_atoms(std::move(atoms));
      }
    }
    // (3) x = y & z = x => x = y & z = y
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].rhs() == x) {
        atoms[i] = FlatAtom::eq(atoms[i].lhs, y);
        return Core::of_atoms(std::move(atoms));
      }
    }
  }
  return std::nullopt;
}

bool eq_is_solved(const Core& c) {
  if (c.falsum || !c.block.empty()) return false;
  std::set<Var> leaders;
  for (const auto& a : c.atoms) {
    if (a.kind != FlatAtom::Kind::kEqVar || !outranks(a.lhs, a.rhs())) return false;
    if (!leaders.insert(a.lhs).second) return false;
  }
  return std::none_of(c.atoms.begin(), c.atoms.end(),
                      [&](const FlatAtom& a) { return leaders.contains(a.rhs()); });
}

Decomposition eq_decompose(const std::vector<Var>& xs, const Core& c) {
  check_binder_ranks(xs, c);
  Decomposition d;
  Core solved = eq_solve(c);
  if (solved.falsum) {
    d.a_prime = Core::falsity();
    d.x_dprime = xs;
    return d;
  }
  std::set<Var> bound(xs.begin(), xs.end());
  std::set<Var> leaders;
  std::vector<FlatAtom> free_part, bound_part;
  for (const auto& a : solved.atoms) {
    leaders.insert(a.lhs);
    (bound.contains(a.lhs) ? bound_part : free_part).push_back(a);
  }
  for (Var x : xs) (leaders.contains(x) ? d.x_tprime : d.x_dprime).push_back(x);
  d.a_prime = Core::of_atoms(std::move(free_part));
  d.a_tprime = Core::of_atoms(std::move(bound_part));
  return d;
}

EqTheory::EqTheory() : sig_(Signature::eq()) {}

std::string_view EqTheory::psi_description() const { return "{false}"; }

Core EqTheory::flat_to_core(const std::vector<FlatAtom>& atoms) const {
  for (const auto& a : atoms) {
    if (a.kind == FlatAtom::Kind::kEqApp || a.kind == FlatAtom::Kind::kRel) {
      throw TheoryError("foreign symbol: " + a.sym);
    }
  }
  return Core::of_atoms(atoms);
}

Core EqTheory::conjoin(const Core& a, const Core& b) const {
  Core c = decomp::conjoin(a, b);
  return eq_solve(c).falsum ? Core::falsity() : c;
}

bool EqTheory::entails(const Core& a, const std::vector<Var>& ys, const Core& b) const {
  return atoms_entail(a, ys, b);
}

Decomposition EqTheory::decompose(const std::vector<Var>& xs, const Core& a) const {
  return eq_decompose(xs, a);
}

bool EqTheory::in_a_prime(const std::vector<Var>& xs, const Core& a) const {
  return xs.empty() && (a.falsum || eq_is_solved(a));
}

bool EqTheory::in_a_tprime(const std::vector<Var>& xs, const Core& a) const {
  if (!eq_is_solved(a)) return false;
  std::set<Var> bound(xs.begin(), xs.end()), leaders;
  for (const auto& e : a.atoms) leaders.insert(e.lhs);
  return bound.size() == xs.size() && bound == leaders;
}

}  // namespace decomp
