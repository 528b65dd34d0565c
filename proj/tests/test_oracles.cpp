#include <gtest/gtest.h>

#include "decomp/games.hpp"
#include "decomp/oracles.hpp"
#include "decomp/random.hpp"
#include "decomp/syntax.hpp"
#include "util.hpp"

using namespace decomp;

namespace {

Formula eq_text(const std::string& text, Session& s) { return parse_formula(text, Signature::eq(), s); }
Formula ra_text(const std::string& text, Session& s) { return parse_formula(text, Signature::ra(), s); }

// ∀x₁…xₙ ∃y ⋀ᵢ ¬(xᵢ = y): the infinite-domain axiom instances.
std::string axiom(int n) {
  std::string xs, body;
  for (int i = 1; i <= n; ++i) {
    xs += " x" + std::to_string(i);
    body += (i > 1 ? " & " : "") + std::string("~(x") + std::to_string(i) + " = y)";
  }
  return "all" + xs + ". ex y. " + body;
}

}  // namespace

TEST(EqOracle, AxiomInstancesHold) {
  for (int n = 1; n <= 5; ++n) {
    Session s;
    EXPECT_TRUE(eq_oracle(eq_text(axiom(n), s))) << axiom(n);
  }
}

TEST(EqOracle, Examples) {
  Session s;
  EXPECT_TRUE(eq_oracle(eq_text("all x. ex y. ~(x = y)", s)));
  EXPECT_FALSE(eq_oracle(eq_text("ex x. all y. x = y", s)));
  EXPECT_TRUE(eq_oracle(f_true()));
  EXPECT_THROW(eq_oracle(eq_text("x = y", s)), OracleError);
}

TEST(EqOracle, DomainSizeIsEnough) {
  FormulaGen gen(Signature::eq(), 17);
  RandomShape shape;
  for (int i = 0; i < 200; ++i) {
    Session s;
    Formula f = gen.next(s, shape);
    std::size_t q = quantified_count(f);
    ASSERT_EQ(eq_oracle(f, q + 1), eq_oracle(f, q + 2)) << print_formula(f, s);
  }
}

TEST(RaOracle, Examples) {
  Session s;
  EXPECT_TRUE(ra_oracle(ra_text("~(0 = 1)", s)));
  EXPECT_TRUE(ra_oracle(ra_text("all x. ex y. y + y = x", s)));
  EXPECT_FALSE(ra_oracle(ra_text("ex x. x = 1 & x = 0", s)));
  EXPECT_TRUE(ra_oracle(ra_text("ex x. 3*x = 1 & ~(x = 0)", s)));
  EXPECT_FALSE(ra_oracle(ra_text("all x y. x = y", s)));
  EXPECT_THROW(ra_oracle(ra_text("x = 1", s)), OracleError);
}

TEST(RaOracle, AgreesWithSampling) {
  FormulaGen gen(Signature::ra(), 23);
  RandomShape shape;
  shape.max_quantifier_depth = 3;
  int conclusive = 0;
  for (int i = 0; i < 300; ++i) {
    Session s;
    Formula body = gen.next(s, shape);
    // Only ∃-prefixed sentences over a quantifier-free matrix qualify.
    std::vector<Var> xs;
    Formula f = body;
    while (f->kind == FKind::kExists) {
      xs.insert(xs.end(), f->vars.begin(), f->vars.end());
      f = f->a;
    }
    if (!bound_vars(f).empty()) continue;
    auto sampled = ra_sample_witness(body, 1000 + i, 200);
    if (!sampled) continue;
    ++conclusive;
    ASSERT_TRUE(ra_oracle(body)) << print_formula(body, s);
  }
  EXPECT_GT(conclusive, 0);
}

TEST(GameBruteForce, Examples) {
  auto ints = [](const std::set<Position>& ps) {
    std::set<int> out;
    for (auto p : ps) out.insert(p.first);
    return out;
  };
  EXPECT_TRUE(game_brute_force(1, 0, 30).empty());
  EXPECT_EQ(ints(game_brute_force(1, 1, 30)), (std::set<int>{1, 2}));
  EXPECT_EQ(ints(game_brute_force(1, 2, 30)), (std::set<int>{1, 2, 4, 5}));
  EXPECT_EQ(game_brute_force(2, 1, 8), (std::set<Position>{{0, 1}, {1, 0}}));
}

TEST(GameBruteForce, MonotoneInK) {
  for (int game : {1, 2}) {
    int bound = game == 1 ? 40 : 6;
    std::set<Position> prev;
    for (int k = 0; k <= 5; ++k) {
      auto cur = game_brute_force(game, k, bound);
      for (auto p : prev) EXPECT_TRUE(cur.count(p)) << game << " k=" << k;
      prev = cur;
    }
  }
}

TEST(EvalSolvedOnGround, GameOneSolution) {
  Session s;
  GameSpec g = GameSpec::game1();
  Formula d = parse_formula("(ex y. x = s(y) & y = 0) | (ex y t. x = s(t) & t = s(y) & y = 0)", g.sig, s);
  Var x = *s.find("x");
  EXPECT_TRUE(eval_solved_on_ground(d, {{x, encode_position(g, {1, 0})}}));
  EXPECT_FALSE(eval_solved_on_ground(d, {{x, encode_position(g, {0, 0})}}));
  EXPECT_FALSE(eval_solved_on_ground(d, {{x, encode_position(g, {3, 0})}}));
  EXPECT_THROW(eval_solved_on_ground(d, {}), OracleError);
}

TEST(EvalSolvedOnGround, NegatedBlocksAndCycles) {
  Session s;
  Signature sig = decomp::testing::trees_sig();
  Formula d = parse_formula("~(ex y. x = f(y)) & ~(x = 0)", sig, s);
  Var x = *s.find("x");
  Term zero = t_app("0");
  EXPECT_FALSE(eval_solved_on_ground(d, {{x, zero}}));
  EXPECT_FALSE(eval_solved_on_ground(d, {{x, t_app("f", {zero})}}));
  EXPECT_TRUE(eval_solved_on_ground(d, {{x, t_app("s", {zero})}}));
  Formula cyc = parse_formula("ex y. y = f(y) & x = y", sig, s);
  EXPECT_FALSE(eval_solved_on_ground(cyc, {{x, t_app("f", {zero})}}));
}
