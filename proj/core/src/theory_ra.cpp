#include <set>

#include "decomp/theories.hpp"

namespace decomp {

LinearEq ra_pivot(const LinearEq& pivot, const LinearEq& e) {
  Var k = pivot.leader();
  const mpz_class& a_k = pivot.terms.front().second;
  const mpz_class* b_k = e.coeff(k);
  if (!b_k) throw TheoryError("ra_pivot: equation does not mention the pivot leader");
  LinearEq r;
  for (const auto& [x, a] : pivot.terms) r.terms.emplace_back(x, *b_k * a);
  for (const auto& [x, b] : e.terms) r.terms.emplace_back(x, -a_k * b);
  r.constant = *b_k * pivot.constant - a_k * e.constant;
  r.canonicalize();
  return r;
}

Core ra_solve(const Core& c) {
  if (c.falsum) return Core::falsity();
  if (!c.atoms.empty()) throw TheoryError("non-Ra atom in block");
  std::vector<LinearEq> solved;
  for (LinearEq e : c.block) {
    e.canonicalize();
    for (const auto& s : solved) {
      if (e.coeff(s.leader())) e = ra_pivot(s, e);
    }
    if (e.trivial()) {
      if (e.constant != 0) return Core::falsity();
      continue;
    }
    for (auto& s : solved) {
      if (s.coeff(e.leader())) s = ra_pivot(e, s);
    }
    solved.push_back(std::move(e));
  }
  return Core::of_block(std::move(solved));
}

bool ra_is_solved(const Core& c) {
  if (c.falsum || !c.atoms.empty()) return false;
  std::set<Var> leaders;
  for (const auto& e : c.block) {
    if (e.trivial() || !leaders.insert(e.leader()).second) return false;
  }
  for (const auto& e : c.block) {
    for (std::size_t i = 1; i < e.terms.size(); ++i) {
      if (leaders.contains(e.terms[i].first)) return false;
    }
  }
  return true;
}

Decomposition ra_decompose(const std::vector<Var>& xs, const Core& c) {
  check_binder_ranks(xs, c);
  Decomposition d;
  Core solved = ra_solve(c);
  if (solved.falsum) {
    d.a_prime = Core::falsity();
    d.x_dprime = xs;
    return d;
  }
  std::set<Var> bound(xs.begin(), xs.end());
  std::set<Var> leaders;
  std::vector<LinearEq> free_part, bound_part;
  for (const auto& e : solved.block) {
    leaders.insert(e.leader());
    (bound.contains(e.leader()) ? bound_part : free_part).push_back(e);
  }
  for (Var x : xs) (leaders.contains(x) ? d.x_tprime : d.x_dprime).push_back(x);
  d.a_prime = Core::of_block(std::move(free_part));
  d.a_tprime = Core::of_block(std::move(bound_part));
  return d;
}

RaTheory::RaTheory() : sig_(Signature::ra()) {}

std::string_view RaTheory::psi_description() const { return "{false}"; }

Core RaTheory::flat_to_core(const std::vector<FlatAtom>& atoms) const {
  std::vector<LinearEq> block;
  for (const auto& a : atoms) {
    LinearEq e;
    switch (a.kind) {
      case FlatAtom::Kind::kTrue: continue;
      case FlatAtom::Kind::kFalse: return Core::falsity();
      case FlatAtom::Kind::kRel: throw TheoryError("foreign symbol: " + a.sym);
      case FlatAtom::Kind::kEqVar:
        e.terms = {{a.lhs, 1}, {a.rhs(), -1}};
        break;
      case FlatAtom::Kind::kEqApp: {
        const Symbol* f = sig_.function(a.sym);
        if (!f || static_cast<std::size_t>(f->arity) != a.args.size()) throw TheoryError("foreign symbol: " + a.sym);
        e.terms = {{a.lhs, 1}};
        if (a.sym == "+") {
          e.terms.emplace_back(a.args[0], -1);
          e.terms.emplace_back(a.args[1], -1);
        } else if (a.sym == "-") {
          e.terms.emplace_back(a.args[0], 1);
        } else if (a.sym == "1") {
          e.constant = 1;
        }
        break;
      }
    }
    e.canonicalize();
    block.push_back(std::move(e));
  }
  return Core::of_block(std::move(block));
}

Core RaTheory::conjoin(const Core& a, const Core& b) const {
  Core c = decomp::conjoin(a, b);
  return ra_solve(c).falsum ? Core::falsity() : c;
}

bool RaTheory::entails(const Core& a, const std::vector<Var>& ys, const Core& b) const {
  return solved_entails(ra_solve(a), ra_solve(decomp::conjoin(a, b)), ys);
}

Decomposition RaTheory::decompose(const std::vector<Var>& xs, const Core& a) const {
  return ra_decompose(xs, a);
}

bool RaTheory::in_a_prime(const std::vector<Var>& xs, const Core& a) const {
  return xs.empty() && (a.falsum || ra_is_solved(a));
}

bool RaTheory::in_a_tprime(const std::vector<Var>& xs, const Core& a) const {
  if (!ra_is_solved(a)) return false;
  std::set<Var> bound(xs.begin(), xs.end()), leaders;
  for (const auto& e : a.block) leaders.insert(e.leader());
  return bound.size() == xs.size() && bound == leaders;
}

}  // namespace decomp
