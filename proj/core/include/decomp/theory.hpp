#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "decomp/core.hpp"
#include "decomp/signature.hpp"

namespace decomp {

class TheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ∃x′α′ ∧ (∃x″α″ ∧ (∃x‴α‴ ∧ ψ)).
struct Decomposition {
  std::vector<Var> x_prime;
  Core a_prime;
  std::vector<Var> x_dprime;
  Core a_dprime;
  std::vector<Var> x_tprime;
  Core a_tprime;

  /// True when the third block is ∃ε true.
  bool third_trivial() const { return x_tprime.empty() && a_tprime.is_true(); }
};

/// A decomposable theory. Every operation is pure; variable order is the
/// session rank order, and callers guarantee that binders outrank the free
/// variables of the formulas they pass in.
class Theory {
 public:
  virtual ~Theory() = default;

  virtual TheoryTag tag() const = 0;
  virtual const Signature& signature() const = 0;
  /// Prose description of Ψ(u); never evaluated.
  virtual std::string_view psi_description() const = 0;

  /// An element of A equivalent to the conjunction of flat atoms.
  virtual Core flat_to_core(const std::vector<FlatAtom>& atoms) const = 0;
  /// a ∧ b as an element of A; falsity when the theory refutes it.
  virtual Core conjoin(const Core& a, const Core& b) const { return decomp::conjoin(a, b); }

  virtual Decomposition decompose(const std::vector<Var>& xs, const Core& a) const = 0;

  /// Whether a ⊨ ∃ys b, where ys outrank every other variable. Sound but
  /// incomplete: false means "not shown".
  virtual bool entails(const Core& a, const std::vector<Var>& ys, const Core& b) const;

  virtual bool in_a_prime(const std::vector<Var>& xs, const Core& a) const = 0;
  virtual bool in_a_dprime(const std::vector<Var>& xs, const Core& a) const;
  virtual bool in_a_tprime(const std::vector<Var>& xs, const Core& a) const = 0;
};

/// Entailment for leader-solved blocks: `sab`, the solved form of a ∧ b,
/// must be `sa` plus one equation led by each of `ys`.
bool solved_entails(Core sa, const Core& sab, const std::vector<Var>& ys);
/// Entailment for conjunctions of variable and tree equations, by
/// unification that may only bind the ys.
bool atoms_entail(const Core& a, const std::vector<Var>& ys, const Core& b);

std::unique_ptr<Theory> make_theory(const Signature& sig);

/// Throws TheoryError unless every binder occurring in `a` outranks every
/// free variable of ∃xs a, and the binders are pairwise distinct.
void check_binder_ranks(const std::vector<Var>& xs, const Core& a);

}  // namespace decomp
