#pragma once

#include <cstdint>
#include <random>

#include "decomp/formula.hpp"
#include "decomp/signature.hpp"

namespace decomp {

struct RandomShape {
  std::size_t max_nodes = 40;           // formula_size bound
  std::size_t max_quantifier_depth = 4;
  std::size_t free_vars = 0;            // 0: sentences
};

/// Random formulas over `sig` (eq, ra or trees). Free variables, when
/// requested, are created first so that every binder outranks them.
class FormulaGen {
 public:
  FormulaGen(Signature sig, std::uint64_t seed) : sig_(std::move(sig)), rng_(seed) {}

  Formula next(Session& s, const RandomShape& shape);

 private:
  Formula gen(Session& s, std::vector<Var>& scope, std::size_t budget, std::size_t qdepth);
  Formula atom(const std::vector<Var>& scope);
  Term term(const std::vector<Var>& scope, int depth);
  std::size_t pick(std::size_t n);

  Signature sig_;
  std::mt19937_64 rng_;
  const RandomShape* shape_ = nullptr;
};

}  // namespace decomp
