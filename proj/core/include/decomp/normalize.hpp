#pragma once

#include <string>
#include <vector>

#include "decomp/core.hpp"
#include "decomp/formula.hpp"
#include "decomp/theory.hpp"

namespace decomp {

/// ¬(∃bound core ∧ ⋀ children). With flat-atom cores this is a normalized
/// formula; with cores in a theory's set A it is a working formula.
struct NegTree {
  std::vector<Var> bound;
  Core core;
  std::vector<NegTree> children;
  /// Solver bookkeeping: no rule applies anywhere in this subtree. Not part
  /// of the value.
  bool settled = false;

  friend bool operator==(const NegTree& a, const NegTree& b) {
    return a.bound == b.bound && a.core == b.core && a.children == b.children;
  }
};

/// Structural order: binders, core, then children.
std::strong_ordering compare_trees(const NegTree& a, const NegTree& b);

using NormalizedFormula = NegTree;
using WorkingFormula = NegTree;

/// Rewrites every atom into flat atoms under fresh existential variables.
Formula flatten(const Formula& f, Session& s);
/// Expresses ∨, →, ↔ and ∀ with ¬, ∧ and ∃.
Formula to_core(const Formula& f);
NormalizedFormula normalize(const Formula& f, Session& s);
/// Replaces every flat conjunction by the theory's element of A.
WorkingFormula to_working(const NormalizedFormula& n, const Theory& th);

/// The plain formula a tree denotes. Linear equations become sums with
/// shared subterms, so large coefficients stay cheap.
Formula embed(const NegTree& t);
Formula embed_core(const Core& c);
/// Conjunction of trees; the empty conjunction is true.
Formula embed_all(const std::vector<NegTree>& ts);

std::size_t depth(const NegTree& t);
std::size_t node_count(const NegTree& t);

std::string print_tree(const NegTree& t, const Session& s);
/// Trees joined by " & "; the empty conjunction prints as "true".
std::string print_trees(const std::vector<NegTree>& ts, const Session& s);

}  // namespace decomp
