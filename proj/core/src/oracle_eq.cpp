#include <unordered_map>
#include <vector>

#include "decomp/oracles.hpp"

namespace decomp {
namespace {

class EqEval {
 public:
  explicit EqEval(std::size_t domain) : domain_(domain) {}

  bool eval(const Formula& f) {
    switch (f->kind) {
      case FKind::kTrue: return true;
      case FKind::kFalse: return false;
      case FKind::kEq: return value(f->lhs) == value(f->rhs);
      case FKind::kRel: throw OracleError("eq_oracle: relation symbol " + f->rel);
      case FKind::kNot: return !eval(f->a);
      case FKind::kAnd: return eval(f->a) && eval(f->b);
      case FKind::kOr: return eval(f->a) || eval(f->b);
      case FKind::kImplies: return !eval(f->a) || eval(f->b);
      case FKind::kIff: return eval(f->a) == eval(f->b);
      case FKind::kExists: return quantify(f, 0, true);
      case FKind::kForall: return quantify(f, 0, false);
    }
    return false;
  }

 private:
  std::size_t value(const Term& t) const {
    if (!t->is_var) throw OracleError("eq_oracle: function symbol " + t->fn);
    auto it = env_.find(t->var);
    if (it == env_.end() || it->second.empty()) throw OracleError("eq_oracle: free variable");
    return it->second.back();
  }

  bool quantify(const Formula& f, std::size_t k, bool exists) {
    if (k == f->vars.size()) return eval(f->a);
    auto& slot = env_[f->vars[k]];
    for (std::size_t d = 0; d < domain_; ++d) {
      slot.push_back(d);
      bool r = quantify(f, k + 1, exists);
      env_[f->vars[k]].pop_back();
      if (r == exists) return exists;
    }
    return !exists;
  }

  std::size_t domain_;
  std::unordered_map<Var, std::vector<std::size_t>> env_;
};

}  // namespace

std::size_t quantified_count(const Formula& f) {
  switch (f->kind) {
    case FKind::kExists:
    case FKind::kForall: return f->vars.size() + quantified_count(f->a);
    case FKind::kNot: return quantified_count(f->a);
    case FKind::kAnd:
    case FKind::kOr:
    case FKind::kImplies:
    case FKind::kIff: return quantified_count(f->a) + quantified_count(f->b);
    default: return 0;
  }
}

bool eq_oracle(const Formula& f, std::optional<std::size_t> domain_size) {
  if (!free_vars(f).empty()) throw OracleError("eq_oracle: free variable");
  EqEval ev(domain_size.value_or(quantified_count(f) + 1));
  return ev.eval(f);
}

}  // namespace decomp
