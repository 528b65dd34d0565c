#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "decomp/oracles.hpp"

namespace decomp {
namespace {

// Rational-tree unification over a union-find of cells, no occurs check.
class Store {
 public:
  std::size_t fresh() {
    cells_.push_back(Cell{cells_.size(), {}, {}, false});
    return cells_.size() - 1;
  }

  std::size_t of_ground(const Term& t) {
    if (t->is_var) throw OracleError("eval_solved_on_ground: binding is not ground");
    std::vector<std::size_t> args;
    for (const auto& a : t->args) args.push_back(of_ground(a));
    std::size_t c = fresh();
    cells_[c].fn = t->fn;
    cells_[c].args = std::move(args);
    cells_[c].has_fn = true;
    return c;
  }

  std::size_t find(std::size_t c) {
    while (cells_[c].parent != c) c = cells_[c].parent = cells_[cells_[c].parent].parent;
    return c;
  }

  bool unify(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (!cells_[x].has_fn) std::swap(x, y);
      if (!cells_[y].has_fn) {
        cells_[y].parent = x;
        continue;
      }
      const Cell& cx = cells_[x];
      const Cell& cy = cells_[y];
      if (cx.fn != cy.fn || cx.args.size() != cy.args.size()) return false;
      cells_[y].parent = x;
      for (std::size_t k = 0; k < cx.args.size(); ++k) work.emplace_back(cx.args[k], cy.args[k]);
    }
    return true;
  }

  // The class has a constructor, and so do all classes below it.
  bool determined(std::size_t c, std::set<std::size_t>& seen) {
    c = find(c);
    if (!seen.insert(c).second) return true;
    if (!cells_[c].has_fn) return false;
    std::vector<std::size_t> args = cells_[c].args;
    for (std::size_t a : args) {
      if (!determined(a, seen)) return false;
    }
    return true;
  }

  std::size_t app(const std::string& fn, std::vector<std::size_t> args) {
    std::size_t c = fresh();
    cells_[c].fn = fn;
    cells_[c].args = std::move(args);
    cells_[c].has_fn = true;
    return c;
  }

 private:
  struct Cell {
    std::size_t parent;
    std::string fn;
    std::vector<std::size_t> args;
    bool has_fn;
  };
  std::vector<Cell> cells_;
};

class GroundEval {
 public:
  explicit GroundEval(const GroundBinding& b) : binding_(b) {}

  bool eval(const Formula& f) {
    switch (f->kind) {
      case FKind::kTrue: return true;
      case FKind::kFalse: return false;
      case FKind::kNot: return !eval(f->a);
      case FKind::kOr: return eval(f->a) || eval(f->b);
      case FKind::kImplies: return !eval(f->a) || eval(f->b);
      case FKind::kIff: return eval(f->a) == eval(f->b);
      case FKind::kEq:
      case FKind::kAnd:
      case FKind::kExists: return block(f);
      default: throw OracleError("eval_solved_on_ground: unsupported connective");
    }
  }

 private:
  struct Parts {
    std::vector<Var> bound;
    std::vector<Formula> pos;
    std::vector<Formula> neg;
  };

  static void split(const Formula& f, Parts& p, bool allow_neg) {
    switch (f->kind) {
      case FKind::kTrue:
      case FKind::kFalse:
      case FKind::kEq: p.pos.push_back(f); return;
      case FKind::kAnd:
        split(f->a, p, allow_neg);
        split(f->b, p, allow_neg);
        return;
      case FKind::kExists:
        p.bound.insert(p.bound.end(), f->vars.begin(), f->vars.end());
        split(f->a, p, allow_neg);
        return;
      case FKind::kNot:
        if (allow_neg) {
          p.neg.push_back(f->a);
          return;
        }
        [[fallthrough]];
      default: throw OracleError("eval_solved_on_ground: block outside the solved shape");
    }
  }

  // Cells for variables local to one satisfiability question.
  struct Scope {
    Store store;
    std::map<Var, std::size_t> cells;
  };

  std::size_t cell_of(Scope& sc, Var v) {
    if (auto it = sc.cells.find(v); it != sc.cells.end()) return it->second;
    auto b = binding_.find(v);
    if (b == binding_.end()) throw OracleError("eval_solved_on_ground: unbound free variable");
    std::size_t c = sc.store.of_ground(b->second);
    sc.cells.emplace(v, c);
    return c;
  }

  std::size_t term_cell(Scope& sc, const Term& t) {
    if (t->is_var) return cell_of(sc, t->var);
    std::vector<std::size_t> args;
    for (const auto& a : t->args) args.push_back(term_cell(sc, a));
    return sc.store.app(t->fn, std::move(args));
  }

  bool add(Scope& sc, const std::vector<Formula>& atoms) {
    for (const auto& a : atoms) {
      if (a->kind == FKind::kFalse) return false;
      if (a->kind == FKind::kTrue) continue;
      if (!sc.store.unify(term_cell(sc, a->lhs), term_cell(sc, a->rhs))) return false;
    }
    return true;
  }

  void declare(Scope& sc, const std::vector<Var>& vs) {
    for (Var v : vs) sc.cells[v] = sc.store.fresh();
  }

  bool block(const Formula& f) {
    Parts p;
    split(f, p, true);
    Scope base;
    declare(base, p.bound);
    if (!add(base, p.pos)) return false;
    for (Var x : p.bound) {
      std::set<std::size_t> seen;
      if (!base.store.determined(base.cells.at(x), seen)) {
        throw OracleError("eval_solved_on_ground: quantified variable not determined");
      }
    }
    for (const auto& n : p.neg) {
      Parts q;
      split(n, q, false);
      Scope sc = base;
      declare(sc, q.bound);
      if (add(sc, q.pos)) return false;
    }
    return true;
  }

  const GroundBinding& binding_;
};

}  // namespace

bool eval_solved_on_ground(const Formula& f, const GroundBinding& binding) {
  return GroundEval(binding).eval(f);
}

}  // namespace decomp
