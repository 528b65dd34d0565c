#pragma once

#include <gmpxx.h>

#include <compare>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "decomp/var.hpp"

namespace decomp {

/// true, false, x = y, x = f(y1..yn) or r(x1..xn).
struct FlatAtom {
  enum class Kind : std::uint8_t { kTrue, kFalse, kEqVar, kEqApp, kRel };

  Kind kind = Kind::kTrue;
  Var lhs;                // kEqVar, kEqApp
  std::string sym;        // function name (kEqApp) or relation name (kRel)
  std::vector<Var> args;  // kEqVar: {rhs}; kEqApp: arguments; kRel: arguments

  static FlatAtom truth() { return {Kind::kTrue, {}, {}, {}}; }
  static FlatAtom falsity() { return {Kind::kFalse, {}, {}, {}}; }
  static FlatAtom eq(Var x, Var y) { return {Kind::kEqVar, x, {}, {y}}; }
  static FlatAtom app(Var x, std::string f, std::vector<Var> ys) {
    return {Kind::kEqApp, x, std::move(f), std::move(ys)};
  }
  static FlatAtom rel(std::string r, std::vector<Var> xs) {
    return {Kind::kRel, {}, std::move(r), std::move(xs)};
  }

  Var rhs() const { return args.front(); }
  bool is_equation() const { return kind == Kind::kEqVar || kind == Kind::kEqApp; }

  friend auto operator<=>(const FlatAtom&, const FlatAtom&) = default;
  friend bool operator==(const FlatAtom&, const FlatAtom&) = default;
};

/// Σ aᵢ·xᵢ = a₀·1 with integer coefficients. Terms are kept sorted by
/// decreasing rank, so the first term carries the leader.
struct LinearEq {
  std::vector<std::pair<Var, mpz_class>> terms;
  mpz_class constant;

  bool trivial() const { return terms.empty(); }
  Var leader() const { return terms.front().first; }
  const mpz_class* coeff(Var v) const;

  /// Merges duplicate variables, drops zero coefficients and sorts.
  void normalize_terms();
  /// normalize_terms, then divides by the gcd and makes the leading
  /// coefficient (or, without terms, the constant) non-negative.
  void canonicalize();

  friend bool operator==(const LinearEq& a, const LinearEq& b) {
    return a.terms == b.terms && a.constant == b.constant;
  }
  friend std::strong_ordering operator<=>(const LinearEq& a, const LinearEq& b);
};

/// An element of a theory's set A: a conjunction of flat atoms (Eq, trees)
/// or a block of linear equations (Ra), or the false marker. Atoms and
/// equations are kept as sorted duplicate-free sets.
struct Core {
  bool falsum = false;
  std::vector<FlatAtom> atoms;
  std::vector<LinearEq> block;

  static Core truth() { return {}; }
  static Core falsity() { return {true, {}, {}}; }
  static Core of_atoms(std::vector<FlatAtom> atoms);
  static Core of_block(std::vector<LinearEq> block);

  bool is_false() const { return falsum; }
  bool is_true() const { return !falsum && atoms.empty() && block.empty(); }
  std::size_t size() const { return atoms.size() + block.size(); }

  /// Restores the canonical form after direct edits.
  void canonicalize();

  friend bool operator==(const Core&, const Core&) = default;
  friend std::strong_ordering operator<=>(const Core& a, const Core& b);
};

Core conjoin(const Core& a, const Core& b);

void collect_vars(const FlatAtom& a, std::set<Var>& out);
void collect_vars(const LinearEq& e, std::set<Var>& out);
void collect_vars(const Core& c, std::set<Var>& out);
std::set<Var> vars_of(const Core& c);
bool mentions(const Core& c, Var v);

using VarMap = std::unordered_map<Var, Var>;
FlatAtom rename(const FlatAtom& a, const VarMap& m);
LinearEq rename(const LinearEq& e, const VarMap& m);
Core rename(const Core& c, const VarMap& m);

std::string print_atom(const FlatAtom& a, const Session& s);
std::string print_linear(const LinearEq& e, const Session& s);
/// Atoms joined by " & "; the empty core prints as "true".
std::string print_core(const Core& c, const Session& s);

}  // namespace decomp
