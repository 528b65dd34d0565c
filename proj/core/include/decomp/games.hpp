#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomp/oracles.hpp"
#include "decomp/signature.hpp"
#include "decomp/solver.hpp"

namespace decomp {

/// A two-partner game over the trees theory. `move_text` is the move
/// relation in concrete syntax with free variables `from` and `to`.
struct GameSpec {
  int id = 1;
  Signature sig;
  std::string move_text;

  static GameSpec game1();
  static GameSpec game2();
  static GameSpec by_id(int id);

  /// move(x, y) with every binder fresh.
  Formula move(Var x, Var y, Session& s) const;
};

/// The 2k-deep alternation ∃y move(x,y) ∧ ¬(∃x′ move(y,x′) ∧ ¬(…false)).
Formula gen_winning(const GameSpec& g, int k, Var x, Session& s);

/// Game 1: sⁱ(0). Game 2: c(ī, j̄) with ī = (fg)^{i/2}(0) for even i and
/// g(overline{i-1}) for odd i.
GroundTree encode_position(const GameSpec& g, Position p);

struct BenchRow {
  int k = 0;
  bool completed = false;  // false: budget exhausted, printed as "-"
  double wall_ms = 0;
  std::size_t disjuncts = 0;
  std::size_t output_nodes = 0;
  std::uint64_t steps = 0;
  std::uint64_t peak_nodes = 0;
  std::set<Position> solution;   // positions within the bound satisfying the output
  std::set<Position> reference;  // game_brute_force at the same bound
  bool validated = false;
};

struct BenchConfig {
  int k_max = 4;
  double budget_seconds = 600;
  int position_bound = -1;  // -1: 50 for game 1, 8 for game 2
  SolveLimits limits;
};

std::vector<BenchRow> run_bench(const GameSpec& g, const BenchConfig& cfg);

/// Rows rendered as CSV with one column per k, mirroring the timing table.
std::string bench_csv(const GameSpec& g, const std::vector<BenchRow>& rows);

}  // namespace decomp
