#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "decomp/theory.hpp"

namespace decomp {

// ---- Eq: pure equality over an infinite domain -----------------------------

/// False, or the unique solved form: every variable of a class points to the
/// class's lowest-ranked member.
Core eq_solve(const Core& c);
/// One footnote rule step, tried in the order (4), (5), (1), (2), (3).
/// Returns nullopt when no rule applies.
std::optional<Core> eq_rewrite_once(const Core& c);
bool eq_is_solved(const Core& c);
Decomposition eq_decompose(const std::vector<Var>& xs, const Core& c);

class EqTheory : public Theory {
 public:
  EqTheory();
  TheoryTag tag() const override { return TheoryTag::kEq; }
  const Signature& signature() const override { return sig_; }
  std::string_view psi_description() const override;
  Core flat_to_core(const std::vector<FlatAtom>& atoms) const override;
  Core conjoin(const Core& a, const Core& b) const override;
  bool entails(const Core& a, const std::vector<Var>& ys, const Core& b) const override;
  Decomposition decompose(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_prime(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_tprime(const std::vector<Var>& xs, const Core& a) const override;

 private:
  Signature sig_;
};

// ---- Ra: additive rationals ------------------------------------------------

/// Eliminates the leader of `pivot` from `e`:
/// Σ(b_k·aᵢ − a_k·bᵢ)xᵢ = (b_k·a₀ − a_k·b₀). `e` must mention the leader.
LinearEq ra_pivot(const LinearEq& pivot, const LinearEq& e);
Core ra_solve(const Core& c);
bool ra_is_solved(const Core& c);
Decomposition ra_decompose(const std::vector<Var>& xs, const Core& c);

class RaTheory : public Theory {
 public:
  RaTheory();
  TheoryTag tag() const override { return TheoryTag::kRa; }
  const Signature& signature() const override { return sig_; }
  std::string_view psi_description() const override;
  Core flat_to_core(const std::vector<FlatAtom>& atoms) const override;
  Core conjoin(const Core& a, const Core& b) const override;
  bool entails(const Core& a, const std::vector<Var>& ys, const Core& b) const override;
  Decomposition decompose(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_prime(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_tprime(const std::vector<Var>& xs, const Core& a) const override;

 private:
  Signature sig_;
};

// ---- T: finite or infinite trees -------------------------------------------

struct ReachabilityReport {
  std::set<Var> vars;  // reachable variables of xs; the free roots are not listed
  std::vector<std::size_t> equations;  // indices into Core::atoms
};

/// False, or a solved conjunction (distinct left-hand sides, no x = x, no
/// y = x with x ≻ y). Already solved inputs are returned unchanged.
Core tree_unify(const Core& c);
bool tree_is_solved(const Core& c);
/// Requires a non-false core.
ReachabilityReport reachable(const std::vector<Var>& xs, const Core& c);
Decomposition tree_decompose(const std::vector<Var>& xs, const Core& c);
/// One step of rules (1)-(7); nullopt when none applies.
std::optional<Core> tree_rewrite_once(const Core& c);
/// (x = f(...) equations, atoms, rank sum of occurrences, misoriented x = y);
/// decreases lexicographically under every tree_rewrite_once step.
std::array<std::uint64_t, 4> tree_measure(const Core& c);

class TreeTheory : public Theory {
 public:
  explicit TreeTheory(Signature sig);
  TheoryTag tag() const override { return TheoryTag::kTrees; }
  const Signature& signature() const override { return sig_; }
  std::string_view psi_description() const override;
  Core flat_to_core(const std::vector<FlatAtom>& atoms) const override;
  Core conjoin(const Core& a, const Core& b) const override;
  bool entails(const Core& a, const std::vector<Var>& ys, const Core& b) const override;
  Decomposition decompose(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_prime(const std::vector<Var>& xs, const Core& a) const override;
  bool in_a_tprime(const std::vector<Var>& xs, const Core& a) const override;

 private:
  Signature sig_;
};

}  // namespace decomp
