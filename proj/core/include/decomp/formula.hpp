#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "decomp/var.hpp"

namespace decomp {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Either a variable or `fn(args...)`.
struct TermNode {
  bool is_var = false;
  Var var;
  std::string fn;
  std::vector<Term> args;
};

Term t_var(Var v);
Term t_app(std::string fn, std::vector<Term> args = {});

enum class FKind { kTrue, kFalse, kEq, kRel, kNot, kAnd, kOr, kImplies, kIff, kExists, kForall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind = FKind::kTrue;
  Term lhs, rhs;               // kEq
  std::string rel;             // kRel
  std::vector<Term> rel_args;  // kRel
  std::vector<Var> vars;       // kExists, kForall (may be empty)
  Formula a, b;                // kNot uses a; binary connectives use a, b; quantifiers use a
};

Formula f_true();
Formula f_false();
Formula f_eq(Term l, Term r);
Formula f_rel(std::string name, std::vector<Term> args);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_exists(std::vector<Var> vars, Formula a);
Formula f_forall(std::vector<Var> vars, Formula a);

/// Left-nested conjunction / disjunction; empty input gives true / false.
Formula f_and_all(const std::vector<Formula>& fs);
Formula f_or_all(const std::vector<Formula>& fs);

bool term_equal(const Term& a, const Term& b);
bool formula_equal(const Formula& a, const Formula& b);

/// Same formula up to renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

std::set<Var> term_vars(const Term& t);
std::set<Var> free_vars(const Formula& f);
std::set<Var> bound_vars(const Formula& f);

std::size_t term_size(const Term& t);
std::size_t formula_size(const Formula& f);

/// Alpha-renames every bound variable to a fresh session variable. Binders are
/// renamed outermost first, so inner binders outrank outer ones and all of
/// them outrank the free variables.
Formula fresh_rename(const Formula& f, Session& s);

}  // namespace decomp
