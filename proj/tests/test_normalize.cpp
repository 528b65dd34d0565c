#include <gtest/gtest.h>

#include "decomp/normalize.hpp"
#include "decomp/oracles.hpp"
#include "decomp/random.hpp"
#include "decomp/syntax.hpp"
#include "decomp/theories.hpp"
#include "util.hpp"

using namespace decomp;
using decomp::testing::lin;
using decomp::testing::read_normalized;
using decomp::testing::tree_iso;
using decomp::testing::trees_sig;

namespace {

// Observed worst case on these generators is below this; see the size test.
constexpr double kSizeFactor = 8.0;

bool has_iff(const Formula& f) {
  if (!f) return false;
  return f->kind == FKind::kIff || has_iff(f->a) || has_iff(f->b);
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f->kind != FKind::kAnd) return {f};
  auto l = conjuncts(f->a), r = conjuncts(f->b);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

bool only_core_connectives(const Formula& f) {
  switch (f->kind) {
    case FKind::kTrue:
    case FKind::kFalse:
    case FKind::kEq:
    case FKind::kRel: return true;
    case FKind::kNot:
    case FKind::kExists: return only_core_connectives(f->a);
    case FKind::kAnd: return only_core_connectives(f->a) && only_core_connectives(f->b);
    default: return false;
  }
}

Formula universal_closure(const Formula& f) {
  auto fv = free_vars(f);
  return f_forall(std::vector<Var>(fv.begin(), fv.end()), f);
}

}  // namespace

TEST(Flatten, NestedEquationGetsOneVariable) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}});
  auto f = flatten(parse_formula("f(u,v) = f(w,u)", sig, s), s);
  ASSERT_EQ(f->kind, FKind::kExists);
  ASSERT_EQ(f->vars.size(), 1u);
  Var u1 = f->vars[0];
  Var u = *s.find("u"), v = *s.find("v"), w = *s.find("w");
  auto parts = conjuncts(f->a);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(formula_equal(parts[0], f_eq(t_var(u1), t_app("f", {t_var(u), t_var(v)}))));
  EXPECT_TRUE(formula_equal(parts[1], f_eq(t_var(u1), t_app("f", {t_var(w), t_var(u)}))));
}

TEST(Flatten, FlatInputUnchanged) {
  Session s;
  auto f = parse_formula("x = y", Signature::eq(), s);
  EXPECT_TRUE(formula_equal(flatten(f, s), f));
}

TEST(Flatten, DeepArgument) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}, {"g", 1}});
  auto f = flatten(parse_formula("u = f(v, g(w))", sig, s), s);
  ASSERT_EQ(f->kind, FKind::kExists);
  ASSERT_EQ(f->vars.size(), 1u);
  Var t = f->vars[0];
  Var u = *s.find("u"), v = *s.find("v"), w = *s.find("w");
  auto parts = conjuncts(f->a);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(formula_equal(parts[0], f_eq(t_var(u), t_app("f", {t_var(v), t_var(t)}))));
  EXPECT_TRUE(formula_equal(parts[1], f_eq(t_var(t), t_app("g", {t_var(w)}))));
}

TEST(Flatten, DeepArgumentAgreesOnGroundInstances) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}, {"g", 1}, {"a", 0}});
  auto f = parse_formula("u = f(v, g(w))", sig, s);
  auto g = flatten(f, s);
  Var u = *s.find("u"), v = *s.find("v"), w = *s.find("w");
  Term a = t_app("a"), ga = t_app("g", {a});
  std::vector<Term> pool{a, ga, t_app("f", {a, ga}), t_app("f", {ga, ga})};
  for (const auto& tu : pool)
    for (const auto& tv : pool)
      for (const auto& tw : pool) {
        GroundBinding b{{u, tu}, {v, tv}, {w, tw}};
        bool direct = term_equal(tu, t_app("f", {tv, t_app("g", {tw})}));
        EXPECT_EQ(eval_solved_on_ground(g, b), direct);
      }
}

TEST(ToCore, Connectives) {
  Session s;
  auto sig = Signature::eq();
  auto p = parse_formula("x = y", sig, s), q = parse_formula("y = z", sig, s);
  EXPECT_TRUE(formula_equal(to_core(f_or(p, q)), f_not(f_and(f_not(p), f_not(q)))));
  Var x = *s.find("x");
  EXPECT_TRUE(formula_equal(to_core(f_forall({x}, p)), f_not(f_exists({x}, f_not(p)))));
  auto core = f_not(f_exists({x}, f_and(p, f_not(q))));
  EXPECT_TRUE(formula_equal(to_core(core), core));
  EXPECT_TRUE(only_core_connectives(to_core(f_iff(f_implies(p, q), f_or(q, p)))));
}

TEST(Normalize, WorkedExampleDepthFour) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}});
  auto f = parse_formula("(f(u,v) = f(w,u) & ex x. u = x) | (ex u. all w. u = f(v,w))", sig, s);
  NegTree got = normalize(f, s);
  auto want = read_normalized(parse_formula(
      "~(ex . true & ~(ex u1 x. u1 = f(u,v) & u1 = f(w,u) & u = x)"
      " & ~(ex u2. true & ~(ex w1. true & ~(ex . u2 = f(v,w1)))))",
      sig, s));
  EXPECT_EQ(depth(got), 4u);
  EXPECT_TRUE(tree_iso(got, want)) << print_tree(got, s);
}

TEST(Normalize, TrueGetsWrapped) {
  Session s;
  NegTree n = normalize(f_true(), s);
  NegTree leaf;
  NegTree want;
  want.children.push_back(leaf);
  EXPECT_EQ(n, want);
  EXPECT_EQ(print_tree(n, s), "~(ex . true & ~(ex . true))");
}

TEST(Normalize, AlreadyNormalized) {
  Session s;
  NegTree n = normalize(f_not(f_exists({}, f_true())), s);
  EXPECT_EQ(n, NegTree{});
}

TEST(Normalize, FalseAtomBecomesFalseCore) {
  Session s;
  NegTree n = normalize(f_not(f_exists({}, f_false())), s);
  EXPECT_TRUE(n.core.is_false());
  EqTheory th;
  EXPECT_TRUE(to_working(n, th).core.is_false());
}

TEST(ToWorking, RaExample) {
  Session s;
  auto sig = Signature::ra();
  auto f = parse_formula(
      "~(ex . true & ~(ex x. y = -z & z = x + y) & ~(ex . true & ~(ex w. true & ~(ex . z = w))))",
      sig, s);
  RaTheory th;
  NegTree w = to_working(normalize(f, s), th);
  ASSERT_EQ(w.children.size(), 2u);
  ASSERT_EQ(w.children[0].bound.size(), 1u);
  ASSERT_EQ(w.children[1].children.size(), 1u);
  ASSERT_EQ(w.children[1].children[0].bound.size(), 1u);
  // The binders were renamed by normalization; read the new ones back.
  Var x = w.children[0].bound[0], wv = w.children[1].children[0].bound[0];
  Var y = *s.find("y"), z = *s.find("z");
  NegTree first{{x}, Core::of_block({lin({{y, 1}, {z, 1}}, 0), lin({{z, 1}, {x, -1}, {y, -1}}, 0)}), {}};
  NegTree innermost{{}, Core::of_block({lin({{z, 1}, {wv, -1}}, 0)}), {}};
  NegTree second{{}, Core::truth(), {NegTree{{wv}, Core::truth(), {innermost}}}};
  NegTree want{{}, Core::truth(), {first, second}};
  EXPECT_TRUE(tree_iso(w, want)) << print_tree(w, s);
  EXPECT_EQ(depth(w), 4u);
  EXPECT_TRUE(ra_oracle(universal_closure(f_iff(embed(w), f))));
}

TEST(ToWorking, EqAndTreesKeepCores) {
  Session s;
  auto f = parse_formula("ex x. all y. x = y | y = z", Signature::eq(), s);
  NegTree n = normalize(f, s);
  EqTheory eq;
  EXPECT_EQ(to_working(n, eq), n);
  auto g = parse_formula("ex x. x = f(x) & ~(x = y)", trees_sig(), s);
  NegTree m = normalize(g, s);
  TreeTheory tt(trees_sig());
  EXPECT_EQ(to_working(m, tt), m);
}

class NormalizeProperties : public ::testing::TestWithParam<TheoryTag> {};

TEST_P(NormalizeProperties, RandomFormulas) {
  const bool ra = GetParam() == TheoryTag::kRa;
  Signature sig = ra ? Signature::ra() : Signature::eq();
  FormulaGen gen(sig, 99);
  RandomShape shape;
  shape.max_nodes = 30;
  shape.max_quantifier_depth = 3;
  double worst_ratio = 0;
  for (int i = 0; i < 300; ++i) {
    Session s;
    Formula f = gen.next(s, shape);
    NegTree n = normalize(f, s);
    std::vector<NegTree> one{n};
    ASSERT_TRUE(decomp::testing::binders_distinct(one));
    Formula e = embed(n);
    ASSERT_TRUE(free_vars(e).empty());
    bool want = ra ? ra_oracle(f) : eq_oracle(f);
    bool got = ra ? ra_oracle(e) : eq_oracle(e);
    ASSERT_EQ(got, want) << print_formula(f, s);
    if (!has_iff(f))
      worst_ratio = std::max(worst_ratio, double(formula_size(e)) / double(formula_size(f)));
  }
  EXPECT_LE(worst_ratio, kSizeFactor);
}

TEST_P(NormalizeProperties, NoNewFreeVariables) {
  const bool ra = GetParam() == TheoryTag::kRa;
  Signature sig = ra ? Signature::ra() : Signature::eq();
  FormulaGen gen(sig, 5);
  RandomShape shape;
  shape.free_vars = 3;
  for (int i = 0; i < 300; ++i) {
    Session s;
    Formula f = gen.next(s, shape);
    auto fv = free_vars(f);
    NegTree n = normalize(f, s);
    for (Var v : free_vars(embed(n))) ASSERT_TRUE(fv.count(v)) << print_formula(f, s);
    std::vector<NegTree> one{n};
    ASSERT_TRUE(decomp::testing::binders_distinct(one));
  }
}

INSTANTIATE_TEST_SUITE_P(Theories, NormalizeProperties,
                         ::testing::Values(TheoryTag::kEq, TheoryTag::kRa));
