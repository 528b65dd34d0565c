#include <gtest/gtest.h>

#include "decomp/normalize.hpp"
#include "decomp/random.hpp"
#include "decomp/syntax.hpp"
#include "util.hpp"

using namespace decomp;
using decomp::testing::trees_sig;

namespace {

std::set<std::string> names(const std::set<Var>& vs, const Session& s) {
  std::set<std::string> out;
  for (Var v : vs) out.insert(s.name(v));
  return out;
}

}  // namespace

TEST(FreeVars, BoundVariableIsExcluded) {
  Session s;
  auto f = parse_formula("ex x. y = f(x)", trees_sig(), s);
  EXPECT_EQ(names(free_vars(f), s), (std::set<std::string>{"y"}));
  EXPECT_TRUE(free_vars(f_true()).empty());
}

TEST(FreeVars, NormalizationExample) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}});
  auto f = parse_formula("(f(u,v) = f(w,u) & ex x. u = x) | (ex u. all w. u = f(v,w))", sig, s);
  EXPECT_EQ(names(free_vars(f), s), (std::set<std::string>{"u", "v", "w"}));
}

TEST(FreshRename, BindersBecomeDistinctAndFresh) {
  Session s;
  auto f = parse_formula("ex x. ex x. x = y", Signature::eq(), s);
  std::size_t before = s.size();
  auto g = fresh_rename(f, s);
  EXPECT_TRUE(alpha_equal(f, g));
  EXPECT_EQ(free_vars(f), free_vars(g));
  auto b = bound_vars(g);
  EXPECT_EQ(b.size(), 2u);
  for (Var v : b) EXPECT_GE(v.id, before);
}

TEST(FreshRename, ShadowedFreeNamesAreRenamed) {
  Session s;
  Signature sig = Signature::trees({{"f", 2}});
  auto f = parse_formula("u = w & ex u. ~(ex w. ~(u = f(v,w)))", sig, s);
  auto g = fresh_rename(f, s);
  EXPECT_TRUE(alpha_equal(f, g));
  for (Var v : bound_vars(g)) EXPECT_FALSE(free_vars(g).count(v));
}

TEST(Signature, ParsesDeclarations) {
  auto sig = parse_signature("theory trees\nfun s/1\nfun 0/0\nfun f/2\n# comment\n");
  EXPECT_EQ(sig.tag, TheoryTag::kTrees);
  EXPECT_EQ(sig.functions, (std::vector<Symbol>{{"s", 1}, {"0", 0}, {"f", 2}}));
}

TEST(Signature, RaIsFixed) {
  auto sig = parse_signature("theory ra");
  ASSERT_NE(sig.function("+"), nullptr);
  EXPECT_EQ(sig.function("+")->arity, 2);
  EXPECT_EQ(sig.function("-")->arity, 1);
  EXPECT_NE(sig.function("0"), nullptr);
  EXPECT_NE(sig.function("1"), nullptr);
}

TEST(Signature, Errors) {
  EXPECT_THROW(parse_signature("theory eq\nfun f/1"), ParseError);
  EXPECT_THROW(parse_signature("theory trees\nfun f/1\nfun f/2"), ParseError);
  EXPECT_THROW(parse_signature("theory nope"), ParseError);
  EXPECT_THROW(parse_signature("theory trees\nfun f/x"), ParseError);
}

TEST(Parse, ErrorsCarrySpans) {
  Session s;
  const std::string bad[] = {"ex x. y = f(x", "ex x. y = q(x)", "x = f(x, x)", "x = & y", "ex . "};
  for (const auto& text : bad) {
    try {
      parse_formula(text, trees_sig(), s);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_LE(e.span().start, e.span().end) << text;
      EXPECT_LE(e.span().end, text.size()) << text;
    }
  }
}

TEST(Parse, UnclosedParenReportedAtEnd) {
  Session s;
  std::string text = "ex x. y = f(x";
  try {
    parse_formula(text, trees_sig(), s);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start, text.size());
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  Session s;
  auto sig = Signature::eq();
  auto f = parse_formula("a = b | c = d & ~e = f -> x = y -> y = z <-> true", sig, s);
  ASSERT_EQ(f->kind, FKind::kIff);
  ASSERT_EQ(f->a->kind, FKind::kImplies);
  EXPECT_EQ(f->a->b->kind, FKind::kImplies);
  ASSERT_EQ(f->a->a->kind, FKind::kOr);
  EXPECT_EQ(f->a->a->b->kind, FKind::kAnd);
  EXPECT_EQ(f->a->a->b->b->kind, FKind::kNot);
}

TEST(Parse, QuantifierScopesRight) {
  Session s;
  auto f = parse_formula("ex x y. x = y & y = z", Signature::eq(), s);
  ASSERT_EQ(f->kind, FKind::kExists);
  EXPECT_EQ(f->vars.size(), 2u);
  EXPECT_EQ(f->a->kind, FKind::kAnd);
  auto e = parse_formula("ex . true", Signature::eq(), s);
  ASSERT_EQ(e->kind, FKind::kExists);
  EXPECT_TRUE(e->vars.empty());
}

TEST(Print, EmptyBinderList) {
  Session s;
  EXPECT_EQ(print_formula(f_not(f_exists({}, f_true())), s), "~(ex . true)");
}

TEST(Print, RaMonomials) {
  Session s;
  Var w = s.var("w"), v = s.var("v");
  EXPECT_EQ(print_linear(decomp::testing::lin({{v, 2}, {w, 1}}, 3), s), "2*v + 1*w = 3*1");
}

TEST(Print, RaSugarRoundTrips) {
  Session s;
  auto f = parse_formula("ex x. 2*x + -y = 3*1 & x + x = 0", Signature::ra(), s);
  auto g = parse_formula(print_formula(f, s), Signature::ra(), s);
  EXPECT_TRUE(formula_equal(f, g));
}

TEST(Depth, Examples) {
  NegTree leaf;
  EXPECT_EQ(depth(leaf), 1u);
  NegTree two;
  two.children.push_back(leaf);
  EXPECT_EQ(depth(two), 2u);
  NegTree three;
  three.children = {leaf, two};
  EXPECT_EQ(depth(three), 3u);
}

class RoundTrip : public ::testing::TestWithParam<TheoryTag> {};

TEST_P(RoundTrip, RandomFormulas) {
  Signature sig = GetParam() == TheoryTag::kEq   ? Signature::eq()
                  : GetParam() == TheoryTag::kRa ? Signature::ra()
                                                 : trees_sig();
  FormulaGen gen(sig, 1234);
  RandomShape shape;
  shape.free_vars = 2;
  for (int i = 0; i < 1000; ++i) {
    Session s;
    Formula f = gen.next(s, shape);
    std::string text = print_formula(f, s);
    Formula g = parse_formula(text, sig, s);
    ASSERT_TRUE(formula_equal(f, g)) << text;
    ASSERT_EQ(print_formula(g, s), text);
  }
}

INSTANTIATE_TEST_SUITE_P(Theories, RoundTrip,
                         ::testing::Values(TheoryTag::kEq, TheoryTag::kRa, TheoryTag::kTrees));
