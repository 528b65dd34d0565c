#include <gmpxx.h>

#include <map>
#include <memory>
#include <random>
#include <unordered_map>
#include <vector>

#include "decomp/oracles.hpp"

namespace decomp {
namespace {

// Σ coeffs·v + constant, read as "= 0" inside atoms.
struct Lin {
  std::map<Var, mpq_class> coeffs;
  mpq_class constant;

  void add(const Lin& o, const mpq_class& k) {
    for (const auto& [v, a] : o.coeffs) {
      mpq_class& c = coeffs[v];
      c += k * a;
      if (c == 0) coeffs.erase(v);
    }
    constant += k * o.constant;
  }
};

class TermReader {
 public:
  Lin read(const Term& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    Lin r;
    if (t->is_var) {
      r.coeffs[t->var] = 1;
    } else if (t->fn == "0" && t->args.empty()) {
    } else if (t->fn == "1" && t->args.empty()) {
      r.constant = 1;
    } else if (t->fn == "+" && t->args.size() == 2) {
      r = read(t->args[0]);
      r.add(read(t->args[1]), 1);
    } else if (t->fn == "-" && t->args.size() == 1) {
      r.add(read(t->args[0]), -1);
    } else {
      throw OracleError("ra_oracle: foreign symbol " + t->fn);
    }
    memo_.emplace(t.get(), r);
    return r;
  }

 private:
  std::unordered_map<const TermNode*, Lin> memo_;
};

// Quantifier-free formulas over linear atoms.
struct Qf;
using QfP = std::shared_ptr<const Qf>;
struct Qf {
  enum class K { kTrue, kFalse, kAtom, kNot, kAnd, kOr } k;
  Lin atom;
  std::vector<QfP> kids;
};

QfP q_const(bool b) { return std::make_shared<Qf>(Qf{b ? Qf::K::kTrue : Qf::K::kFalse, {}, {}}); }

QfP q_atom(Lin l) {
  if (l.coeffs.empty()) return q_const(l.constant == 0);
  return std::make_shared<Qf>(Qf{Qf::K::kAtom, std::move(l), {}});
}

QfP q_not(QfP a) {
  if (a->k == Qf::K::kTrue) return q_const(false);
  if (a->k == Qf::K::kFalse) return q_const(true);
  return std::make_shared<Qf>(Qf{Qf::K::kNot, {}, {std::move(a)}});
}

QfP q_join(Qf::K k, std::vector<QfP> xs) {
  bool is_and = k == Qf::K::kAnd;
  std::vector<QfP> keep;
  for (auto& x : xs) {
    if (x->k == (is_and ? Qf::K::kTrue : Qf::K::kFalse)) continue;
    if (x->k == (is_and ? Qf::K::kFalse : Qf::K::kTrue)) return q_const(!is_and);
    keep.push_back(std::move(x));
  }
  if (keep.empty()) return q_const(is_and);
  if (keep.size() == 1) return keep.front();
  return std::make_shared<Qf>(Qf{k, {}, std::move(keep)});
}

struct Literal {
  Lin lin;
  bool positive;
};
using Clause = std::vector<Literal>;  // conjunction
using Dnf = std::vector<Clause>;

Dnf dnf(const QfP& f, bool positive) {
  switch (f->k) {
    case Qf::K::kTrue: return positive ? Dnf{Clause{}} : Dnf{};
    case Qf::K::kFalse: return positive ? Dnf{} : Dnf{Clause{}};
    case Qf::K::kAtom: return Dnf{Clause{Literal{f->atom, positive}}};
    case Qf::K::kNot: return dnf(f->kids[0], !positive);
    case Qf::K::kAnd:
    case Qf::K::kOr: {
      bool conj = (f->k == Qf::K::kAnd) == positive;
      if (!conj) {
        Dnf out;
        for (const auto& k : f->kids) {
          Dnf d = dnf(k, positive);
          out.insert(out.end(), d.begin(), d.end());
        }
        return out;
      }
      Dnf out{Clause{}};
      for (const auto& k : f->kids) {
        Dnf d = dnf(k, positive);
        Dnf next;
        for (const auto& a : out) {
          for (const auto& b : d) {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        }
        out = std::move(next);
        if (out.empty()) break;
      }
      return out;
    }
  }
  return {};
}

// Replaces x by the expression solving `pivot` for x.
Lin substitute(const Lin& l, Var x, const Lin& pivot) {
  auto it = l.coeffs.find(x);
  if (it == l.coeffs.end()) return l;
  mpq_class a = it->second;
  mpq_class px = pivot.coeffs.at(x);
  Lin r = l;
  r.add(pivot, -a / px);
  r.coeffs.erase(x);
  return r;
}

// ∃x over one clause: solve an equation for x if there is one; otherwise
// every disequation mentioning x excludes finitely many values and drops.
QfP eliminate_clause(const Clause& c, Var x) {
  const Literal* pivot = nullptr;
  for (const auto& l : c) {
    if (l.positive && l.lin.coeffs.count(x)) {
      pivot = &l;
      break;
    }
  }
  std::vector<QfP> parts;
  for (const auto& l : c) {
    if (&l == pivot) continue;
    if (pivot) {
      QfP a = q_atom(substitute(l.lin, x, pivot->lin));
      parts.push_back(l.positive ? a : q_not(a));
    } else if (!l.lin.coeffs.count(x)) {
      QfP a = q_atom(l.lin);
      parts.push_back(l.positive ? a : q_not(a));
    }
  }
  return q_join(Qf::K::kAnd, std::move(parts));
}

QfP exists(Var x, const QfP& body) {
  std::vector<QfP> ds;
  for (const auto& c : dnf(body, true)) ds.push_back(eliminate_clause(c, x));
  return q_join(Qf::K::kOr, std::move(ds));
}

class RaQe {
 public:
  QfP run(const Formula& f) {
    switch (f->kind) {
      case FKind::kTrue: return q_const(true);
      case FKind::kFalse: return q_const(false);
      case FKind::kEq: {
        Lin l = reader_.read(f->lhs);
        l.add(reader_.read(f->rhs), -1);
        return q_atom(std::move(l));
      }
      case FKind::kRel: throw OracleError("ra_oracle: relation symbol " + f->rel);
      case FKind::kNot: return q_not(run(f->a));
      case FKind::kAnd: return q_join(Qf::K::kAnd, {run(f->a), run(f->b)});
      case FKind::kOr: return q_join(Qf::K::kOr, {run(f->a), run(f->b)});
      case FKind::kImplies: return q_join(Qf::K::kOr, {q_not(run(f->a)), run(f->b)});
      case FKind::kIff: {
        QfP a = run(f->a), b = run(f->b);
        return q_join(Qf::K::kOr, {q_join(Qf::K::kAnd, {a, b}),
                                   q_join(Qf::K::kAnd, {q_not(a), q_not(b)})});
      }
      case FKind::kExists: {
        QfP body = run(f->a);
        for (auto it = f->vars.rbegin(); it != f->vars.rend(); ++it) body = exists(*it, body);
        return body;
      }
      case FKind::kForall: {
        QfP body = q_not(run(f->a));
        for (auto it = f->vars.rbegin(); it != f->vars.rend(); ++it) body = exists(*it, body);
        return q_not(body);
      }
    }
    return q_const(false);
  }

 private:
  TermReader reader_;
};

bool eval_qf(const QfP& f, const std::map<Var, mpq_class>& point) {
  switch (f->k) {
    case Qf::K::kTrue: return true;
    case Qf::K::kFalse: return false;
    case Qf::K::kAtom: {
      mpq_class v = f->atom.constant;
      for (const auto& [x, a] : f->atom.coeffs) v += a * point.at(x);
      return v == 0;
    }
    case Qf::K::kNot: return !eval_qf(f->kids[0], point);
    case Qf::K::kAnd:
      for (const auto& k : f->kids) {
        if (!eval_qf(k, point)) return false;
      }
      return true;
    case Qf::K::kOr:
      for (const auto& k : f->kids) {
        if (eval_qf(k, point)) return true;
      }
      return false;
  }
  return false;
}

bool has_quantifier(const Formula& f) {
  switch (f->kind) {
    case FKind::kExists:
    case FKind::kForall: return true;
    case FKind::kNot: return has_quantifier(f->a);
    case FKind::kAnd:
    case FKind::kOr:
    case FKind::kImplies:
    case FKind::kIff: return has_quantifier(f->a) || has_quantifier(f->b);
    default: return false;
  }
}

}  // namespace

bool ra_oracle(const Formula& f) {
  if (!free_vars(f).empty()) throw OracleError("ra_oracle: free variable");
  QfP r = RaQe().run(f);
  if (r->k != Qf::K::kTrue && r->k != Qf::K::kFalse) {
    throw OracleError("ra_oracle: elimination left a non-ground residue");
  }
  return r->k == Qf::K::kTrue;
}

std::optional<bool> ra_sample_witness(const Formula& f, std::uint64_t seed, int samples) {
  if (!free_vars(f).empty()) throw OracleError("ra_sample_witness: free variable");
  std::vector<Var> xs;
  Formula body = f;
  while (body->kind == FKind::kExists) {
    xs.insert(xs.end(), body->vars.begin(), body->vars.end());
    body = body->a;
  }
  if (has_quantifier(body)) return std::nullopt;
  QfP q = RaQe().run(body);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (int k = 0; k < samples; ++k) {
    std::map<Var, mpq_class> point;
    for (Var x : xs) {
      mpq_class v(num(rng), den(rng));
      v.canonicalize();
      point[x] = v;
    }
    if (eval_qf(q, point)) return true;
  }
  return std::nullopt;
}

}  // namespace decomp
