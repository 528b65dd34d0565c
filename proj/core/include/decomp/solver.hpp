#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decomp/measure.hpp"
#include "decomp/normalize.hpp"
#include "decomp/theory.hpp"

namespace decomp {

struct SolveLimits {
  std::uint64_t max_steps = 10'000'000;
  std::size_t max_depth = 64;
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 0;  // 0: unlimited
};

struct SolveOptions {
  SolveLimits limits;
  bool trace = false;
  /// Re-checks binder distinctness after every rule application.
  bool check_binders = false;
  /// Asserts that the termination measure decreases at every step.
  bool check_measure = false;
  std::size_t measure_depth_cap = 12;
  /// Tries rules (1) and (2) at a node before descending into it, and
  /// deletes conjuncts the theory shows to be true (counted as rule 0).
  bool prune_first = true;

  /// Defaults with check_measure taken from DECOMP_DEBUG_MEASURE=1.
  static SolveOptions from_env();
};

struct TraceStep {
  std::uint64_t step = 0;
  int rule = 0;  // 1-5, or 0 for a deletion justified by the theory
  std::vector<std::size_t> path;  // child indices; the first one indexes the top-level conjunction
  std::string before;
  std::string after;
};

struct SolveStats {
  std::array<std::uint64_t, 6> rule_counts{};  // index = rule id; 0 counts theory deletions
  std::uint64_t steps = 0;
  std::uint64_t peak_nodes = 0;
  double wall_ms = 0;
};

struct SolveResult {
  std::vector<WorkingFormula> solved;
  std::vector<TraceStep> trace;
  SolveStats stats;
};

class SolveLimitError : public std::runtime_error {
 public:
  SolveLimitError(const std::string& what, std::vector<TraceStep> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<TraceStep>& partial_trace() const { return partial_; }

 private:
  std::vector<TraceStep> partial_;
};

/// A broken internal invariant (unsolved output, repeated binder, measure
/// increase).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Tries rules (1)-(5) in order at the working formula addressed by `path`
/// inside the conjunction `conj`. On success the conjunction is rewritten in
/// place and the rule id is returned; rule (5) splices its 1+|I| conjuncts
/// where the node was.
std::optional<int> apply_rule(std::vector<WorkingFormula>& conj, const std::vector<std::size_t>& path,
                              const Theory& th, Session& s);

/// Deletes the working formula addressed by `path`: how rule-0 trace steps
/// (deletions justified by the theory) are replayed.
bool erase_at(std::vector<WorkingFormula>& conj, const std::vector<std::size_t>& path);

SolveResult solve(const WorkingFormula& w, const Theory& th, Session& s,
                  const SolveOptions& opts = {});
/// normalize, to_working, solve.
SolveResult solve_formula(const Formula& f, const Theory& th, Session& s,
                          const SolveOptions& opts = {});

/// Applies the trace's steps to `start`; throws InvariantError when a step's
/// rule does not match. Rule-0 steps are taken on trust. The result is canonicalized.
std::vector<WorkingFormula> replay(std::vector<WorkingFormula> start,
                                   const std::vector<TraceStep>& trace, const Theory& th,
                                   Session& s);

bool is_solved(const WorkingFormula& w, const Theory& th);

/// Sorts every conjunction by structural key and removes duplicates.
void canonicalize_conjunction(std::vector<WorkingFormula>& conj);

/// true for the empty conjunction, false (¬true) otherwise. Throws
/// std::invalid_argument if some member has free variables.
bool finalize_closed(const SolveResult& r);

/// ∃x′α′ ∧ ⋀ ¬(∃yⱼβⱼ)
struct SolvedDisjunct {
  std::vector<Var> x;
  Core alpha;
  std::vector<std::pair<std::vector<Var>, Core>> negated;
};

struct Solutions {
  std::vector<SolvedDisjunct> disjuncts;  // empty: false
  SolveResult raw;
};

/// Solves ¬ψ and reads the result as a disjunction equivalent to ψ.
Solutions present_solutions(const Formula& psi, const Theory& th, Session& s,
                            const SolveOptions& opts = {});
Formula embed_solutions(const Solutions& sol);
/// Disjuncts joined by " | "; the empty disjunction prints as "false".
std::string print_solutions(const Solutions& sol, const Session& s);

/// The (n1, n2, n3) termination measure of a conjunction of working
/// formulas; nullopt when some member is deeper than `depth_cap`.
std::optional<Measure> debug_measure(const std::vector<WorkingFormula>& conj, const Theory& th,
                                     std::size_t depth_cap = 12);

std::string format_path(const std::vector<std::size_t>& path);

}  // namespace decomp
