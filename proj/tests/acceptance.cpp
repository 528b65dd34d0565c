// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "decomp/games.hpp"
#include "decomp/oracles.hpp"
#include "decomp/random.hpp"
#include "decomp/solver.hpp"
#include "decomp/syntax.hpp"
#include "decomp/theories.hpp"
#include "util.hpp"

using namespace decomp;
using decomp::testing::lin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), seconds_since(start),
              o.detail.c_str());
  std::fflush(stdout);
}

std::string set_str(const std::set<Position>& ps, bool pairs) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto p : ps) {
    out << (first ? "" : ",");
    first = false;
    if (pairs) out << '(' << p.first << ',' << p.second << ')';
    else out << p.first;
  }
  out << '}';
  return out.str();
}

Outcome normalization_golden() {
  Session s;
  Signature sig = Signature::trees({{"f", 2}});
  auto f = parse_formula("(f(u,v) = f(w,u) & ex x. u = x) | (ex u. all w. u = f(v,w))", sig, s);
  NegTree got = normalize(f, s);
  NegTree want = decomp::testing::read_normalized(parse_formula(
      "~(ex . true & ~(ex u1 x. u1 = f(u,v) & u1 = f(w,u) & u = x)"
      " & ~(ex u2. true & ~(ex w1. true & ~(ex . u2 = f(v,w1)))))",
      sig, s));
  bool ok = depth(got) == 4 && decomp::testing::tree_iso(got, want);
  return {ok, print_tree(got, s)};
}

Outcome phi_verdicts() {
  Signature sig = decomp::testing::trees_sig();
  TreeTheory th(sig);
  const std::pair<const char*, bool> cases[] = {
      {"ex x. all y. ((ex z w v. y=f(z) & y=f(x) & w=g(z,v)) | (x=f(y) & x=f(x)))", false},
      {"ex x. all y. ((ex z. y=f(z) & z=x) | (x=f(y) & y=x) | ~(x=f(y)))", true}};
  std::ostringstream d;
  bool ok = true;
  for (auto [text, want] : cases) {
    Session s;
    auto start = Clock::now();
    bool got = finalize_closed(solve_formula(parse_formula(text, sig, s), th, s));
    double t = seconds_since(start);
    ok = ok && got == want && t < 1.0;
    d << (got ? "true" : "false") << " in " << t * 1000 << " ms; ";
  }
  return {ok, d.str()};
}

bool same(const Decomposition& a, const Decomposition& b) {
  auto srt = decomp::testing::sorted;
  return srt(a.x_prime) == srt(b.x_prime) && a.a_prime == b.a_prime &&
         srt(a.x_dprime) == srt(b.x_dprime) && a.a_dprime == b.a_dprime &&
         srt(a.x_tprime) == srt(b.x_tprime) && a.a_tprime == b.a_tprime;
}

Outcome decompositions() {
  std::string bad;
  {
    Session s;
    Var w = s.var("w"), v = s.var("v"), z = s.var("z"), y = s.var("y"), x = s.var("x");
    auto e = [](Var a, Var b) { return FlatAtom::eq(a, b); };
    Core c = Core::of_atoms({e(v, w), e(z, z), e(z, x), e(v, y)});
    Decomposition want{{}, Core::of_atoms({e(v, w)}), {z}, Core::truth(), {x, y},
                       Core::of_atoms({e(x, z), e(y, w)})};
    if (!same(EqTheory().decompose({x, y, z}, c), want)) bad += " eq";
  }
  {
    Session s;
    Var w = s.var("w"), v = s.var("v"), z = s.var("z"), y = s.var("y"), x = s.var("x");
    Core c = Core::of_block({lin({{v, 2}, {w, 1}}, 3), lin({{v, 1}, {x, 1}}, 2),
                             lin({{v, 1}, {x, 1}, {z, 2}}, 4)});
    Decomposition want{{}, Core::of_block({lin({{v, 2}, {w, 1}}, 3)}), {y}, Core::truth(), {x, z},
                       Core::of_block({lin({{x, 2}, {w, -1}}, 1), lin({{z, 1}}, 1)})};
    if (!same(RaTheory().decompose({x, y, z}, c), want)) bad += " ra";
  }
  {
    Session s;
    Var z = s.var("z"), w = s.var("w"), x = s.var("x"), y = s.var("y"), v = s.var("v");
    Core c = Core::of_atoms({FlatAtom::app(z, "f", {x, y}), FlatAtom::app(z, "f", {x, w}),
                             FlatAtom::app(v, "f", {z})});
    Decomposition want{{x, y}, Core::of_atoms({FlatAtom::app(z, "f", {x, y}), FlatAtom::eq(y, w)}),
                       {}, Core::truth(), {v}, Core::of_atoms({FlatAtom::app(v, "f", {z})})};
    if (!same(tree_decompose({x, y, v}, c), want)) bad += " trees";
  }
  return {bad.empty(), bad.empty() ? "eq, ra, trees exact" : "mismatch:" + bad};
}

std::set<Position> game_solution(int game, int k, int bound, double& secs) {
  GameSpec g = GameSpec::by_id(game);
  Session s;
  Var x = s.var("x");
  TreeTheory th(g.sig);
  auto start = Clock::now();
  Solutions sol = present_solutions(gen_winning(g, k, x, s), th, s);
  secs = seconds_since(start);
  Formula d = embed_solutions(sol);
  std::set<Position> out;
  for (int i = 0; i <= bound; ++i)
    for (int j = 0; j <= (game == 1 ? 0 : bound); ++j)
      if (eval_solved_on_ground(d, {{x, encode_position(g, {i, j})}})) out.insert({i, j});
  return out;
}

Outcome game1_k1() {
  double t = 0;
  auto got = game_solution(1, 1, 50, t);
  std::set<Position> want{{1, 0}, {2, 0}};
  return {got == want && t < 5.0, set_str(got, false) + " solved in " + std::to_string(t) + " s"};
}

Outcome game2_k1() {
  double t = 0;
  auto got = game_solution(2, 1, 8, t);
  std::set<Position> want{{0, 1}, {1, 0}};
  return {got == want && t < 60.0, set_str(got, true) + " solved in " + std::to_string(t) + " s"};
}

Outcome oracle_agreement() {
  auto start = Clock::now();
  std::ostringstream d;
  bool ok = true;
  for (TheoryTag tag : {TheoryTag::kEq, TheoryTag::kRa}) {
    Signature sig = tag == TheoryTag::kEq ? Signature::eq() : Signature::ra();
    auto th = make_theory(sig);
    FormulaGen gen(sig, 42);
    RandomShape shape;
    int agree = 0;
    for (int n = 0; n < 500; ++n) {
      Session s;
      Formula f = gen.next(s, shape);
      bool want = tag == TheoryTag::kEq ? eq_oracle(f) : ra_oracle(f);
      if (finalize_closed(solve_formula(f, *th, s)) == want) ++agree;
    }
    ok = ok && agree == 500;
    d << to_string(tag) << ' ' << agree << "/500; ";
  }
  return {ok && seconds_since(start) < 600, d.str()};
}

Outcome game1_sweep() {
  BenchConfig cfg;
  cfg.k_max = 6;
  cfg.budget_seconds = 600;
  cfg.position_bound = 50;
  auto rows = run_bench(GameSpec::game1(), cfg);
  bool ok = rows.size() == 7;
  std::ostringstream d;
  for (const auto& r : rows) {
    ok = ok && r.completed && r.validated;
    d << "k=" << r.k << (r.validated ? " ok " : " MISMATCH ");
  }
  if (rows.size() > 2) {
    std::set<Position> k2{{1, 0}, {2, 0}, {4, 0}, {5, 0}};
    auto low = rows[2].reference;
    std::erase_if(low, [](Position p) { return p.first > 5; });
    ok = ok && low == k2;
  }
  return {ok, d.str()};
}

Outcome structural_invariants() {
  std::ostringstream d;
  bool ok = true;
  for (TheoryTag tag : {TheoryTag::kEq, TheoryTag::kRa, TheoryTag::kTrees}) {
    auto rep = decomp::testing::check_random_working(tag, 1000, 8);
    ok = ok && rep.failures == 0;
    d << to_string(tag) << ": " << rep.formulas - rep.failures - rep.limit_hits << " ok, " << rep.failures
      << " failed, " << rep.limit_hits << " over limit, " << rep.measured << " measured; ";
    if (rep.failures) d << rep.first_failure << "; ";
  }
  return {ok, d.str()};
}

Outcome game1_k10() {
  GameSpec g = GameSpec::game1();
  Session s;
  Var x = s.var("x");
  TreeTheory th(g.sig);
  SolveOptions o;
  o.limits.max_seconds = 60;
  auto start = Clock::now();
  Solutions sol = present_solutions(gen_winning(g, 10, x, s), th, s, o);
  double t = seconds_since(start);
  std::ostringstream d;
  d << t << " s, " << sol.raw.stats.steps << " steps, " << sol.disjuncts.size() << " disjuncts";
  return {t < 60.0, d.str()};
}

}  // namespace

int main() {
  run(1, "normalization worked example", normalization_golden);
  run(2, "phi1 false and phi2 true, each under 1 s", phi_verdicts);
  run(3, "worked decompositions (eq, ra, trees)", decompositions);
  run(4, "game 1 k=1 equals {1,2} over 0..50, under 5 s", game1_k1);
  run(5, "game 2 k=1 equals {(0,1),(1,0)} over components <= 8, under 60 s", game2_k1);
  run(6, "500 eq + 500 ra sentences agree with the oracles, under 10 min", oracle_agreement);
  run(7, "game 1 k=0..6 matches brute force over 0..50", game1_sweep);
  run(8, "structural invariants on 1000 random working formulas per theory", structural_invariants);
  run(9, "game 1 k=10 under 60 s", game1_k10);
  return failures == 0 ? 0 : 1;
}
