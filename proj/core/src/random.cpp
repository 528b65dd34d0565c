#include "decomp/random.hpp"

#include <string>

namespace decomp {

std::size_t FormulaGen::pick(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Formula FormulaGen::next(Session& s, const RandomShape& shape) {
  shape_ = &shape;
  std::vector<Var> scope;
  for (std::size_t k = 0; k < shape.free_vars; ++k) scope.push_back(s.fresh("v"));
  for (;;) {
    std::vector<Var> sc = scope;
    Formula f = gen(s, sc, 1 + pick(shape.max_nodes), 0);
    if (formula_size(f) <= shape.max_nodes) return f;
  }
}

Term FormulaGen::term(const std::vector<Var>& scope, int depth) {
  std::vector<const Symbol*> consts, funs;
  for (const auto& f : sig_.functions) (f.arity == 0 ? consts : funs).push_back(&f);
  bool leaf = depth <= 0 || funs.empty() || pick(3) != 0;
  if (leaf) {
    if (!scope.empty() && (consts.empty() || pick(4) != 0)) return t_var(scope[pick(scope.size())]);
    if (!consts.empty()) return t_app(consts[pick(consts.size())]->name);
  }
  const Symbol* f = funs[pick(funs.size())];
  std::vector<Term> args;
  for (int k = 0; k < f->arity; ++k) args.push_back(term(scope, depth - 1));
  return t_app(f->name, std::move(args));
}

Formula FormulaGen::atom(const std::vector<Var>& scope) {
  bool has_terms = !scope.empty() || sig_.tag != TheoryTag::kEq;
  if (!has_terms || pick(12) == 0) return pick(2) ? f_true() : f_false();
  int depth = sig_.tag == TheoryTag::kEq ? 0 : 2;
  return f_eq(term(scope, depth), term(scope, depth));
}

Formula FormulaGen::gen(Session& s, std::vector<Var>& scope, std::size_t budget,
                        std::size_t qdepth) {
  if (budget <= 1) return atom(scope);
  bool can_quantify = qdepth < shape_->max_quantifier_depth;
  bool need_var = scope.empty() && sig_.tag == TheoryTag::kEq;
  std::size_t choice = need_var && can_quantify ? 5 + pick(2) : pick(can_quantify ? 7 : 5);
  switch (choice) {
    case 0: return atom(scope);
    case 1: return f_not(gen(s, scope, budget - 1, qdepth));
    case 2:
    case 3:
    case 4: {
      std::size_t left = 1 + pick(budget - 1);
      Formula a = gen(s, scope, left, qdepth);
      Formula b = gen(s, scope, budget - left > 0 ? budget - left : 1, qdepth);
      if (choice == 2) return f_and(a, b);
      if (choice == 3) return f_or(a, b);
      return pick(2) ? f_implies(a, b) : f_iff(a, b);
    }
    default: {
      std::size_t n = 1 + pick(2);
      std::vector<Var> vs;
      for (std::size_t k = 0; k < n; ++k) vs.push_back(s.fresh(std::string(1, "xyzw"[pick(4)])));
      std::size_t mark = scope.size();
      scope.insert(scope.end(), vs.begin(), vs.end());
      Formula body = gen(s, scope, budget - 1, qdepth + 1);
      scope.resize(mark);
      return choice == 5 ? f_exists(std::move(vs), body) : f_forall(std::move(vs), body);
    }
  }
}

}  // namespace decomp
