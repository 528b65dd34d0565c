#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "decomp/core.hpp"
#include "decomp/formula.hpp"
#include "decomp/normalize.hpp"
#include "decomp/signature.hpp"

namespace decomp::testing {

/// f/1, g/2, h/1, s/1, c/2 and the constant 0.
Signature trees_sig();

/// Σ coeff·var = constant, canonicalized.
LinearEq lin(std::initializer_list<std::pair<Var, long>> terms, long constant);

std::vector<Var> sorted(std::vector<Var> vs);

/// Every binder of the conjunction occurs once and is not free anywhere in it.
bool binders_distinct(const std::vector<NegTree>& conj);

std::set<Var> free_vars_of(const std::vector<NegTree>& conj);

/// Reads a formula already in the shape ~(ex xs. atoms & ~(...) & ...) with
/// flat atoms. Throws std::invalid_argument on any other shape.
NegTree read_normalized(const Formula& f);

/// Equal up to a renaming of binders and reordering of children and of
/// binder vectors. Free variables must match exactly.
bool tree_iso(const NegTree& a, const NegTree& b);

struct InvariantReport {
  int formulas = 0;
  int measured = 0;        // formulas under the measure depth cap
  int limit_hits = 0;      // solves stopped by the resource limits
  int failures = 0;
  std::string first_failure;
};

/// Solves `count` random working formulas (two free variables each) with
/// binder and measure checks on every step, then checks that every output
/// member is solved, that the output has no new free variables, and that
/// replaying the trace gives the same output.
InvariantReport check_random_working(TheoryTag tag, int count, std::uint64_t seed,
                                     bool prune_first = true);

}  // namespace decomp::testing
