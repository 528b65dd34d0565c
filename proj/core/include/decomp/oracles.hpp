#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "decomp/formula.hpp"

namespace decomp {

/// Thrown for inputs outside an oracle's fragment (free variables, foreign
/// symbols, unsupported shapes).
class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of quantified variable occurrences (binder slots) in `f`.
std::size_t quantified_count(const Formula& f);

/// Truth of an equality sentence, evaluated over the domain {0..size-1}.
/// The default size is quantified_count(f) + 1.
bool eq_oracle(const Formula& f, std::optional<std::size_t> domain_size = std::nullopt);

/// Truth of a sentence over (Q, +, -, 0, 1) by quantifier elimination.
bool ra_oracle(const Formula& f);

/// For a sentence ∃x̄ φ with quantifier-free φ: true if some sampled small
/// rational point satisfies φ, nullopt otherwise (never conclusive for false).
std::optional<bool> ra_sample_witness(const Formula& f, std::uint64_t seed, int samples);

using GroundTree = Term;
using GroundBinding = std::map<Var, GroundTree>;

/// Evaluates a boolean combination of blocks ∃x̄ (equations ∧ ⋀¬∃ȳ equations)
/// over rational trees, with the free variables bound to ground trees. Each
/// block's x̄ must be determined by its equations.
bool eval_solved_on_ground(const Formula& f, const GroundBinding& binding);

/// A game-1 position is (i, 0); a game-2 position is (i, j).
using Position = std::pair<int, int>;

/// Exact k-winning positions with every component at most `bound`.
std::set<Position> game_brute_force(int game, int k, int bound);

}  // namespace decomp
