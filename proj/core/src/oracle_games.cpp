#include <map>
#include <stdexcept>
#include <vector>

#include "decomp/oracles.hpp"

namespace decomp {
namespace {

std::vector<Position> moves(int game, Position p) {
  std::vector<Position> out;
  if (game == 1) {
    for (int d : {1, 2}) {
      if (p.first - d >= 0) out.emplace_back(p.first - d, 0);
    }
    return out;
  }
  auto step = [](int u, int v) { return u % 2 == 1 ? v + 1 : v - 1; };
  int j = step(p.first, p.second);
  if (j >= 0) out.emplace_back(p.first, j);
  int i = step(p.second, p.first);
  if (i >= 0) out.emplace_back(i, p.second);
  return out;
}

class Solver {
 public:
  explicit Solver(int game) : game_(game) {}

  bool winning(Position p, int k) {
    if (k == 0) return false;
    auto key = std::make_pair(p, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool w = false;
    for (Position q : moves(game_, p)) {
      bool all = true;
      for (Position r : moves(game_, q)) {
        if (!winning(r, k - 1)) {
          all = false;
          break;
        }
      }
      if (all) {
        w = true;
        break;
      }
    }
    memo_.emplace(key, w);
    return w;
  }

 private:
  int game_;
  std::map<std::pair<Position, int>, bool> memo_;
};

}  // namespace

std::set<Position> game_brute_force(int game, int k, int bound) {
  if (game != 1 && game != 2) throw std::invalid_argument("game_brute_force: unknown game");
  Solver s(game);
  std::set<Position> out;
  for (int i = 0; i <= bound; ++i) {
    if (game == 1) {
      if (s.winning({i, 0}, k)) out.emplace(i, 0);
      continue;
    }
    for (int j = 0; j <= bound; ++j) {
      if (s.winning({i, j}, k)) out.emplace(i, j);
    }
  }
  return out;
}

}  // namespace decomp
