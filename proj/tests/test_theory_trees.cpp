#include <gtest/gtest.h>

#include <random>

#include "decomp/theories.hpp"
#include "util.hpp"

using namespace decomp;
using decomp::testing::sorted;
using decomp::testing::trees_sig;

namespace {

FlatAtom eq(Var a, Var b) { return FlatAtom::eq(a, b); }
FlatAtom app(Var a, std::string f, std::vector<Var> ys) { return FlatAtom::app(a, std::move(f), ys); }
Core atoms(std::vector<FlatAtom> as) { return Core::of_atoms(std::move(as)); }

}  // namespace

TEST(TreeUnify, PhiOneCore) {
  // z ≻ w ≻ v ≻ y ≻ x
  Session s;
  Var x = s.var("x"), y = s.var("y"), v = s.var("v"), w = s.var("w"), z = s.var("z");
  Core c = atoms({app(y, "f", {z}), app(y, "f", {x}), app(w, "g", {z, v})});
  EXPECT_EQ(tree_unify(c), atoms({app(y, "f", {z}), eq(z, x), app(w, "g", {z, v})}));
}

TEST(TreeUnify, ClashAndCycle) {
  Session s;
  Var z = s.var("z"), y = s.var("y"), x = s.var("x");
  EXPECT_TRUE(tree_unify(atoms({app(x, "f", {y}), app(x, "g", {z, z})})).is_false());
  Core cyc = atoms({app(x, "f", {x})});
  EXPECT_EQ(tree_unify(cyc), cyc);
  EXPECT_TRUE(tree_is_solved(cyc));
}

TEST(TreeUnify, OrientsAndDropsReflexive) {
  Session s;
  Var b = s.var("b"), a = s.var("a");
  EXPECT_EQ(tree_unify(atoms({eq(b, a)})), atoms({eq(a, b)}));
  EXPECT_TRUE(tree_unify(atoms({eq(a, a)})).is_true());
}

TEST(Reachable, PaperExample) {
  Session s;
  Var z = s.var("z"), u = s.var("u"), v = s.var("v"), w = s.var("w");
  Core c = atoms({app(z, "f", {u, v}), app(v, "g", {v, u}), app(w, "f", {u, v})});
  ReachabilityReport r = reachable({u, v, w}, c);
  EXPECT_EQ(r.vars, (std::set<Var>{u, v}));
  std::set<FlatAtom> eqs;
  for (auto i : r.equations) eqs.insert(c.atoms[i]);
  EXPECT_EQ(eqs, (std::set<FlatAtom>{app(z, "f", {u, v}), app(v, "g", {v, u})}));
}

TEST(Reachable, ClosedAndUnquantified) {
  Session s;
  Var a = s.var("a"), b = s.var("b"), c = s.var("c");
  Core k = atoms({app(a, "f", {b}), app(b, "h", {c})});
  EXPECT_EQ(reachable({}, k).equations.size(), 2u);
  auto closed = reachable({a, b, c}, k);
  EXPECT_TRUE(closed.vars.empty());
  EXPECT_TRUE(closed.equations.empty());
}

TEST(TreeDecompose, WorkedExample) {
  Session s;
  Var z = s.var("z"), w = s.var("w"), x = s.var("x"), y = s.var("y"), v = s.var("v");
  Core solved = tree_unify(atoms({app(z, "f", {x, y}), app(z, "f", {x, w}), app(v, "f", {z})}));
  Decomposition d = tree_decompose({x, y, v}, solved);
  EXPECT_EQ(sorted(d.x_prime), sorted({x, y}));
  EXPECT_EQ(d.a_prime, atoms({app(z, "f", {x, y}), eq(y, w)}));
  EXPECT_TRUE(d.x_dprime.empty());
  EXPECT_TRUE(d.a_dprime.is_true());
  EXPECT_EQ(d.x_tprime, std::vector<Var>{v});
  EXPECT_EQ(d.a_tprime, atoms({app(v, "f", {z})}));
}

TEST(TreeDecompose, PhiOneSubformula) {
  Session s;
  Var x = s.var("x"), y = s.var("y"), v = s.var("v"), w = s.var("w"), z = s.var("z");
  Core solved = tree_unify(atoms({app(y, "f", {z}), app(y, "f", {x}), app(w, "g", {z, v})}));
  Decomposition d = tree_decompose({z, w, v}, solved);
  EXPECT_EQ(d.x_prime, std::vector<Var>{z});
  EXPECT_EQ(d.a_prime, atoms({app(y, "f", {z}), eq(z, x)}));
  EXPECT_EQ(d.x_dprime, std::vector<Var>{v});
  EXPECT_TRUE(d.a_dprime.is_true());
  EXPECT_EQ(d.x_tprime, std::vector<Var>{w});
  EXPECT_EQ(d.a_tprime, atoms({app(w, "g", {z, v})}));
}

TEST(TreeDecompose, NoBindersAndFalse) {
  Session s;
  Var a = s.var("a"), b = s.var("b");
  Core k = atoms({app(a, "f", {b})});
  Decomposition d = tree_decompose({}, k);
  EXPECT_EQ(d.a_prime, k);
  EXPECT_TRUE(d.third_trivial());
  EXPECT_TRUE(tree_decompose({}, Core::falsity()).a_prime.is_false());
}

TEST(TreeTheory, Membership) {
  Session s;
  Var z = s.var("z"), w = s.var("w"), x = s.var("x"), y = s.var("y");
  TreeTheory th(trees_sig());
  EXPECT_TRUE(th.in_a_prime({x, y}, atoms({app(z, "f", {x, y}), eq(y, w)})));
  EXPECT_FALSE(th.in_a_prime({x}, Core::truth()));
  EXPECT_TRUE(th.in_a_prime({}, Core::falsity()));
}

TEST(TreeTheory, ForeignSymbol) {
  Session s;
  Var a = s.var("a"), b = s.var("b");
  TreeTheory th(trees_sig());
  EXPECT_THROW(th.flat_to_core({FlatAtom::app(a, "nope", {b})}), TheoryError);
}

TEST(TreeRewrite, MeasureDecreasesAndAgreesWithUnify) {
  std::mt19937_64 rng(21);
  const char* fns[] = {"f", "h", "g"};
  for (int round = 0; round < 800; ++round) {
    Session s;
    std::vector<Var> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(s.fresh("t"));
    std::vector<FlatAtom> as;
    int n = 1 + int(rng() % 6);
    auto pick = [&] { return vs[rng() % vs.size()]; };
    for (int i = 0; i < n; ++i) {
      int kind = int(rng() % 4);
      if (kind == 0) {
        as.push_back(eq(pick(), pick()));
      } else {
        std::string f = fns[rng() % 3];
        std::vector<Var> args(f == "g" ? 2 : 1);
        for (auto& a : args) a = pick();
        as.push_back(app(pick(), f, args));
      }
    }
    Core cur = atoms(as);
    int steps = 0;
    while (auto next = tree_rewrite_once(cur)) {
      if (!next->is_false()) {
        ASSERT_LT(tree_measure(*next), tree_measure(cur));
      }
      cur = *next;
      ASSERT_LT(++steps, 1000);
    }
    Core u = tree_unify(atoms(as));
    ASSERT_EQ(cur.is_false(), u.is_false());
    if (!u.is_false()) {
      ASSERT_TRUE(tree_is_solved(u));
      ASSERT_TRUE(tree_is_solved(cur));
      ASSERT_EQ(tree_unify(u), u);
    }
  }
}
