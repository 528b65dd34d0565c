#include "decomp/theory.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "decomp/theories.hpp"

namespace decomp {

bool Theory::in_a_dprime(const std::vector<Var>&, const Core& a) const { return a.is_true(); }

bool Theory::entails(const Core&, const std::vector<Var>&, const Core&) const { return false; }

bool solved_entails(Core sa, const Core& sab, const std::vector<Var>& ys) {
  if (sa.falsum) return true;
  if (sab.falsum) return false;
  std::set<Var> want(ys.begin(), ys.end());
  std::set<Var> led;
  Core rest;
  for (const auto& e : sab.block) {
    if (!e.trivial() && want.contains(e.leader())) led.insert(e.leader());
    else rest.block.push_back(e);
  }
  for (const auto& a : sab.atoms) rest.atoms.push_back(a);
  if (led != want) return false;
  rest.canonicalize();
  sa.canonicalize();
  return rest == sa;
}

namespace {

// Union-find over the classes of a solved `a`. Classes made only of ys are
// loose: b may merge them anywhere and give them terms. Anything that would
// merge two classes of `a` or give a term to a term-free class of `a` is a
// constraint a does not already impose.
class EntailCheck {
 public:
  explicit EntailCheck(std::set<Var> ys) : loose_(std::move(ys)) {}

  bool load(const FlatAtom& at) {
    if (at.kind == FlatAtom::Kind::kEqVar) return merge(at.lhs, at.rhs(), false);
    if (at.kind == FlatAtom::Kind::kEqApp) return attach(find(at.lhs), at.sym, at.args, false);
    return at.kind == FlatAtom::Kind::kTrue;
  }

  bool add(const FlatAtom& at) {
    if (at.kind == FlatAtom::Kind::kEqVar) return merge(at.lhs, at.rhs(), true);
    if (at.kind == FlatAtom::Kind::kEqApp) return attach(find(at.lhs), at.sym, at.args, true);
    return at.kind == FlatAtom::Kind::kTrue;
  }

 private:
  struct App {
    std::string sym;
    std::vector<Var> args;
  };

  Var find(Var v) {
    auto it = parent_.try_emplace(v, v).first;
    if (it->second == v) return v;
    Var root = find(it->second);
    parent_[v] = root;
    return root;
  }

  bool is_loose(Var root) const { return loose_.contains(root); }

  bool merge(Var a, Var b, bool strict) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (strict && !is_loose(a) && !is_loose(b)) return false;
    if (is_loose(b) && !is_loose(a)) std::swap(a, b);
    // a is absorbed into b.
    parent_[a] = b;
    if (!is_loose(a)) loose_.erase(b);
    auto it = terms_.find(a);
    if (it == terms_.end()) return true;
    App t = std::move(it->second);
    terms_.erase(it);
    return attach(b, t.sym, t.args, strict);
  }

  bool attach(Var root, const std::string& sym, const std::vector<Var>& args, bool strict) {
    auto it = terms_.find(root);
    if (it == terms_.end()) {
      if (strict && !is_loose(root)) return false;
      terms_.emplace(root, App{sym, args});
      return true;
    }
    App cur = it->second;
    if (cur.sym != sym || cur.args.size() != args.size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!merge(cur.args[i], args[i], strict)) return false;
    }
    return true;
  }

  std::set<Var> loose_;
  std::map<Var, Var> parent_;
  std::map<Var, App> terms_;
};

}  // namespace

bool atoms_entail(const Core& a, const std::vector<Var>& ys, const Core& b) {
  if (a.falsum) return true;
  if (b.falsum) return false;
  EntailCheck chk(std::set<Var>(ys.begin(), ys.end()));
  for (const auto& at : a.atoms) {
    if (!chk.load(at)) return true;
  }
  for (const auto& at : b.atoms) {
    if (!chk.add(at)) return false;
  }
  return true;
}

std::unique_ptr<Theory> make_theory(const Signature& sig) {
  switch (sig.tag) {
    case TheoryTag::kEq: return std::make_unique<EqTheory>();
    case TheoryTag::kRa: return std::make_unique<RaTheory>();
    case TheoryTag::kTrees: return std::make_unique<TreeTheory>(sig);
  }
  throw TheoryError("unknown theory");
}

void check_binder_ranks(const std::vector<Var>& xs, const Core& a) {
  std::set<Var> bound(xs.begin(), xs.end());
  if (bound.size() != xs.size()) throw TheoryError("precondition violation: repeated binder");
  if (bound.empty()) return;
  Var lowest = *bound.begin();
  for (Var v : vars_of(a)) {
    if (!bound.contains(v) && !outranks(lowest, v)) {
      throw TheoryError("precondition violation: binder does not outrank free variable");
    }
  }
}

}  // namespace decomp
