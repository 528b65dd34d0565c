#include "decomp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>

#include "decomp/syntax.hpp"

namespace decomp {
namespace {

using Clock = std::chrono::steady_clock;

bool is_leaf(const NegTree& t) { return t.children.empty(); }

// Free variables of ¬(∃bound core ∧ ⋀children).
std::set<Var> tree_free_vars(const NegTree& t) {
  std::set<Var> out;
  collect_vars(t.core, out);
  for (const auto& c : t.children) {
    auto inner = tree_free_vars(c);
    out.insert(inner.begin(), inner.end());
  }
  for (Var v : t.bound) out.erase(v);
  return out;
}

bool tree_mentions_free(const NegTree& t, const std::set<Var>& vs) {
  for (Var v : tree_free_vars(t)) {
    if (vs.count(v)) return true;
  }
  return false;
}

void unsettle(NegTree& t) {
  t.settled = false;
  for (auto& c : t.children) unsettle(c);
}

// Copies `t` under `m`, giving every binder inside it a fresh name.
NegTree rename_tree(const NegTree& t, VarMap m, Session& s) {
  NegTree out;
  for (Var v : t.bound) {
    Var fresh = s.fresh_like(v);
    m[v] = fresh;
    out.bound.push_back(fresh);
  }
  out.core = rename(t.core, m);
  out.children.reserve(t.children.size());
  for (const auto& c : t.children) out.children.push_back(rename_tree(c, m, s));
  return out;
}

std::vector<Var> fresh_copies(const std::vector<Var>& vs, VarMap& m, Session& s) {
  std::vector<Var> out;
  std::vector<Var> ordered = vs;
  std::sort(ordered.begin(), ordered.end());
  for (Var v : ordered) m[v] = s.fresh_like(v);
  out.reserve(vs.size());
  for (Var v : vs) out.push_back(m.at(v));
  return out;
}

constexpr std::uint32_t kCanonBase = 0x80000000U;

// `t` with binders renamed by position, so alpha-variants get equal keys.
NegTree alpha_key(const NegTree& t, VarMap m, std::uint32_t next) {
  NegTree k;
  for (Var v : t.bound) {
    Var c{kCanonBase + next++};
    m[v] = c;
    k.bound.push_back(c);
  }
  k.core = rename(t.core, m);
  for (const auto& c : t.children) k.children.push_back(alpha_key(c, m, next));
  std::sort(k.children.begin(), k.children.end(),
            [](const NegTree& a, const NegTree& b) { return compare_trees(a, b) < 0; });
  k.children.erase(std::unique(k.children.begin(), k.children.end()), k.children.end());
  return k;
}

// Positions of conjuncts that repeat an earlier one up to bound-variable
// names, in decreasing order.
std::vector<std::size_t> duplicates(const std::vector<NegTree>& list) {
  std::vector<std::size_t> out;
  if (list.size() < 2) return out;
  auto less = [](const NegTree& a, const NegTree& b) { return compare_trees(a, b) < 0; };
  std::set<NegTree, decltype(less)> seen(less);
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (!seen.insert(alpha_key(list[k], {}, 0)).second) out.push_back(k);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

struct Applied {
  int rule = 0;
  std::size_t span = 0;  // conjuncts now occupying the rewritten slot
};

bool children_leaves_in_a_prime(const NegTree& t, const Theory& th) {
  return std::all_of(t.children.begin(), t.children.end(), [&](const NegTree& c) {
    return is_leaf(c) && th.in_a_prime(c.bound, c.core);
  });
}

std::optional<Applied> rule5(std::vector<NegTree>& list, std::size_t i, const Theory& th,
                             Session& s) {
  NegTree& n = list[i];
  std::size_t ci = n.children.size();
  for (std::size_t j = 0; j < n.children.size(); ++j) {
    const NegTree& c = n.children[j];
    if (is_leaf(c) || !th.in_a_prime(c.bound, c.core)) continue;
    if (!children_leaves_in_a_prime(c, th)) continue;
    ci = j;
    break;
  }
  if (ci == n.children.size()) return std::nullopt;

  NegTree mid = std::move(n.children[ci]);
  std::vector<NegTree> others;
  for (std::size_t j = 0; j < n.children.size(); ++j) {
    if (j != ci) others.push_back(std::move(n.children[j]));
  }

  std::vector<NegTree> out;
  NegTree first{n.bound, n.core, {}};
  first.children = others;
  first.children.insert(first.children.begin() + static_cast<std::ptrdiff_t>(ci),
                        NegTree{mid.bound, mid.core, {}});
  out.push_back(std::move(first));

  for (const auto& g : mid.children) {
    VarMap m;
    NegTree copy;
    copy.bound = fresh_copies(n.bound, m, s);
    std::vector<Var> ys = fresh_copies(mid.bound, m, s);
    copy.bound.insert(copy.bound.end(), ys.begin(), ys.end());
    copy.bound.insert(copy.bound.end(), g.bound.begin(), g.bound.end());
    copy.core = th.conjoin(th.conjoin(rename(n.core, m), rename(mid.core, m)), rename(g.core, m));
    for (const auto& o : others) copy.children.push_back(rename_tree(o, m, s));
    out.push_back(std::move(copy));
  }

  std::size_t span = out.size();
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
  list.insert(list.begin() + static_cast<std::ptrdiff_t>(i), std::make_move_iterator(out.begin()),
              std::make_move_iterator(out.end()));
  return Applied{5, span};
}

// Rules (1) and (2): both erase list[i].
std::optional<Applied> prune_at(std::vector<NegTree>& list, std::size_t i) {
  const NegTree& n = list[i];
  int rule = 0;
  if (std::any_of(n.children.begin(), n.children.end(),
                  [](const NegTree& c) { return is_leaf(c) && c.core.is_true(); })) {
    rule = 1;
  } else if (n.core.is_false()) {
    rule = 2;
  }
  if (rule == 0) return std::nullopt;
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
  return Applied{rule, 0};
}

// Tries rules (1)-(5) at list[i].
std::optional<Applied> apply_at(std::vector<NegTree>& list, std::size_t i, const Theory& th,
                                Session& s) {
  if (auto a = prune_at(list, i)) return a;
  NegTree& n = list[i];

  if (std::all_of(n.children.begin(), n.children.end(), is_leaf)) {
    Decomposition d = th.decompose(n.bound, n.core);
    if (!d.third_trivial()) {
      NegTree r;
      r.bound = d.x_prime;
      r.bound.insert(r.bound.end(), d.x_dprime.begin(), d.x_dprime.end());
      r.core = th.conjoin(d.a_prime, d.a_dprime);
      for (auto& c : n.children) {
        VarMap m;
        NegTree child;
        child.bound = fresh_copies(d.x_tprime, m, s);
        child.bound.insert(child.bound.end(), c.bound.begin(), c.bound.end());
        child.core = th.conjoin(rename(d.a_tprime, m), rename(c.core, m));
        r.children.push_back(std::move(child));
      }
      n = std::move(r);
      return Applied{3, 1};
    }
    if (!th.in_a_prime(n.bound, n.core) && children_leaves_in_a_prime(n, th)) {
      std::set<Var> dropped(d.x_dprime.begin(), d.x_dprime.end());
      NegTree r;
      r.bound = d.x_prime;
      r.core = d.a_prime;
      for (auto& c : n.children) {
        if (!tree_mentions_free(c, dropped)) {
          c.settled = false;
          r.children.push_back(std::move(c));
        }
      }
      n = std::move(r);
      return Applied{4, 1};
    }
    return std::nullopt;
  }
  return rule5(list, i, th, s);
}

std::size_t total_nodes(const std::vector<NegTree>& list, std::size_t from, std::size_t span) {
  std::size_t n = 0;
  for (std::size_t k = from; k < from + span; ++k) n += node_count(list[k]);
  return n;
}

void check_distinct_binders(const std::vector<NegTree>& conj, const std::set<Var>& free) {
  for (const auto& t : conj) {
    std::set<Var> bound;
    std::size_t count = 0;
    std::vector<const NegTree*> stack{&t};
    while (!stack.empty()) {
      const NegTree* n = stack.back();
      stack.pop_back();
      count += n->bound.size();
      bound.insert(n->bound.begin(), n->bound.end());
      for (const auto& c : n->children) stack.push_back(&c);
    }
    if (bound.size() != count) throw InvariantError("binder repeated inside a working formula");
    for (Var v : tree_free_vars(t)) {
      if (bound.count(v)) throw InvariantError("binder clashes with a free variable");
      if (!free.count(v)) throw InvariantError("new free variable");
    }
  }
}

class Engine {
 public:
  Engine(const Theory& th, Session& s, const SolveOptions& opts)
      : th_(th), s_(s), opts_(opts), start_(Clock::now()) {}

  SolveResult run(NegTree w) {
    if (depth(w) > opts_.limits.max_depth) fail("depth limit exceeded");
    nodes_ = node_count(w);
    result_.stats.peak_nodes = nodes_;
    free_ = tree_free_vars(w);
    top_.push_back(std::move(w));
    if (opts_.check_binders) check_distinct_binders(top_, free_);
    if (opts_.check_measure) measure_ = debug_measure(top_, th_, opts_.measure_depth_cap);
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < top_.size();) i += settle(top_, i, path);

    dedupe(top_, path);
    canonicalize_conjunction(top_);
    for (const auto& t : top_) {
      if (!is_solved(t, th_)) throw InvariantError("unsolved formula at fixpoint: " + print_tree(t, s_));
    }
    result_.solved = std::move(top_);
    result_.stats.wall_ms = elapsed_ms();
    return std::move(result_);
  }

 private:
  // Brings list[i] to a fixpoint; returns how many conjuncts now sit at i.
  // ctx_.back() is the conjunction of the cores of list[i]'s ancestors.
  std::size_t settle(std::vector<NegTree>& list, std::size_t i, std::vector<std::size_t>& path) {
    if (list[i].settled) return 1;
    path.push_back(i);
    for (;;) {
      if (opts_.prune_first && (contradicts_context(list, i, path) || pruned(list, i, path))) {
        path.pop_back();
        return 0;
      }
      {
        ctx_.push_back(conjoin(ctx_.back(), list[i].core));
        auto& kids = list[i].children;
        for (std::size_t j = 0; j < kids.size();) j += settle(kids, j, path);
        dedupe(kids, path);
        ctx_.pop_back();
      }
      if (opts_.prune_first && drop_redundant(list, i, path)) {
        path.pop_back();
        return 0;
      }
      std::string before = opts_.trace ? print_tree(list[i], s_) : std::string();
      std::size_t old_nodes = node_count(list[i]);
      auto a = apply_at(list, i, th_, s_);
      if (!a) {
        list[i].settled = true;
        path.pop_back();
        return 1;
      }
      record(*a, list, i, path, before, old_nodes);
      if (a->rule == 3 || a->rule == 4) continue;
      path.pop_back();
      if (a->rule != 5) return 0;
      std::size_t end = i + a->span;
      std::size_t k = i;
      while (k < end) {
        std::size_t got = settle(list, k, path);
        end = end + got - 1;
        k += got;
      }
      return end - i;
    }
  }

  // Erases list[i] and records the step under `rule`.
  void erase_recorded(std::vector<NegTree>& list, std::size_t i,
                      const std::vector<std::size_t>& path, int rule) {
    std::string before = opts_.trace ? print_tree(list[i], s_) : std::string();
    std::size_t old_nodes = node_count(list[i]);
    list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
    record(Applied{rule, 0}, list, i, path, std::move(before), old_nodes);
  }

  // Idempotence of conjunction, up to bound-variable names.
  void dedupe(std::vector<NegTree>& list, std::vector<std::size_t>& path) {
    for (std::size_t k : duplicates(list)) {
      path.push_back(k);
      erase_recorded(list, k, path, 0);
      path.pop_back();
    }
  }

  bool pruned(std::vector<NegTree>& list, std::size_t i, const std::vector<std::size_t>& path) {
    std::string before = opts_.trace ? print_tree(list[i], s_) : std::string();
    std::size_t old_nodes = node_count(list[i]);
    auto a = prune_at(list, i);
    if (a) record(*a, list, i, path, std::move(before), old_nodes);
    return a.has_value();
  }

  // The deletions below are justified by the theory rather than by rules
  // (1)-(5). A conjunct only matters where its ancestors' cores hold, so a
  // conjunct whose core contradicts them is true there.
  bool contradicts_context(std::vector<NegTree>& list, std::size_t i,
                           const std::vector<std::size_t>& path) {
    if (ctx_.size() < 2 || !th_.conjoin(ctx_.back(), list[i].core).is_false()) return false;
    erase_recorded(list, i, path, 0);
    return true;
  }

  // Children contradicting the node in context are dropped; a leaf child
  // implied by the node in context makes the whole node true. Returns true
  // when list[i] was erased.
  bool drop_redundant(std::vector<NegTree>& list, std::size_t i, std::vector<std::size_t>& path) {
    Core here = conjoin(ctx_.back(), list[i].core);
    auto& kids = list[i].children;
    for (std::size_t j = 0; j < kids.size();) {
      if (!th_.conjoin(here, kids[j].core).is_false()) {
        ++j;
        continue;
      }
      path.push_back(j);
      erase_recorded(kids, j, path, 0);
      path.pop_back();
    }
    for (const auto& c : kids) {
      if (!is_leaf(c) || !th_.entails(here, c.bound, c.core)) continue;
      erase_recorded(list, i, path, 0);
      return true;
    }
    return false;
  }

  void record(const Applied& a, const std::vector<NegTree>& list, std::size_t i,
              const std::vector<std::size_t>& path, std::string before, std::size_t old_nodes) {
    auto& st = result_.stats;
    ++st.steps;
    ++st.rule_counts[static_cast<std::size_t>(a.rule)];
    nodes_ = nodes_ - old_nodes + total_nodes(list, i, a.span);
    st.peak_nodes = std::max<std::uint64_t>(st.peak_nodes, nodes_);
    if (opts_.trace) {
      std::vector<NegTree> after(list.begin() + static_cast<std::ptrdiff_t>(i),
                                 list.begin() + static_cast<std::ptrdiff_t>(i + a.span));
      result_.trace.push_back(
          TraceStep{st.steps, a.rule, path, std::move(before), print_trees(after, s_)});
    }
    if (opts_.check_binders) {
      try {
        check_distinct_binders(top_, free_);
      } catch (const InvariantError& e) {
        throw InvariantError(std::string(e.what()) + " after " + describe_last());
      }
    }
    if (opts_.check_measure) {
      auto m = debug_measure(top_, th_, opts_.measure_depth_cap);
      if (m && measure_ && !(*m < *measure_)) {
        throw InvariantError("measure did not decrease after " + describe_last());
      }
      measure_ = m;
    }
    if (st.steps >= opts_.limits.max_steps) fail("step limit exceeded");
    if (nodes_ > opts_.limits.max_nodes) fail("node limit exceeded");
    if (opts_.limits.max_seconds > 0 && elapsed_ms() > opts_.limits.max_seconds * 1000) {
      fail("time limit exceeded");
    }
  }

  std::string describe_last() const {
    std::string out = "step " + std::to_string(result_.stats.steps);
    if (result_.trace.empty()) return out;
    const TraceStep& t = result_.trace.back();
    return out + " (rule " + std::to_string(t.rule) + " at " + format_path(t.path) +
           ")\n  before: " + t.before + "\n  after: " + t.after;
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

  [[noreturn]] void fail(const std::string& what) {
    throw SolveLimitError(what, std::move(result_.trace));
  }

  const Theory& th_;
  Session& s_;
  const SolveOptions& opts_;
  Clock::time_point start_;
  std::vector<NegTree> top_;
  SolveResult result_;
  std::uint64_t nodes_ = 0;
  std::optional<Measure> measure_;
  std::set<Var> free_;
  std::vector<Core> ctx_{Core::truth()};
};

void canonicalize_tree(NegTree& t) {
  canonicalize_conjunction(t.children);
}

}  // namespace

SolveOptions SolveOptions::from_env() {
  SolveOptions o;
  const char* v = std::getenv("DECOMP_DEBUG_MEASURE");
  o.check_measure = v && std::string(v) == "1";
  return o;
}

std::string format_path(const std::vector<std::size_t>& path) {
  std::string out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += '.';
    out += std::to_string(path[k]);
  }
  return out;
}

namespace {

// The list holding the formula at `path`, and its index there.
std::optional<std::pair<std::vector<NegTree>*, std::size_t>> locate(
    std::vector<WorkingFormula>& conj, const std::vector<std::size_t>& path) {
  if (path.empty()) return std::nullopt;
  std::vector<NegTree>* list = &conj;
  std::size_t i = path.front();
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (i >= list->size()) return std::nullopt;
    list = &(*list)[i].children;
    i = path[k];
  }
  if (i >= list->size()) return std::nullopt;
  return std::make_pair(list, i);
}

}  // namespace

bool erase_at(std::vector<WorkingFormula>& conj, const std::vector<std::size_t>& path) {
  auto at = locate(conj, path);
  if (!at) return false;
  at->first->erase(at->first->begin() + static_cast<std::ptrdiff_t>(at->second));
  return true;
}

std::optional<int> apply_rule(std::vector<WorkingFormula>& conj,
                              const std::vector<std::size_t>& path, const Theory& th, Session& s) {
  auto at = locate(conj, path);
  if (!at) return std::nullopt;
  auto a = apply_at(*at->first, at->second, th, s);
  if (!a) return std::nullopt;
  return a->rule;
}

SolveResult solve(const WorkingFormula& w, const Theory& th, Session& s, const SolveOptions& opts) {
  NegTree copy = w;
  unsettle(copy);
  return Engine(th, s, opts).run(std::move(copy));
}

SolveResult solve_formula(const Formula& f, const Theory& th, Session& s,
                          const SolveOptions& opts) {
  return solve(to_working(normalize(f, s), th), th, s, opts);
}

std::vector<WorkingFormula> replay(std::vector<WorkingFormula> start,
                                   const std::vector<TraceStep>& trace, const Theory& th,
                                   Session& s) {
  for (const auto& step : trace) {
    bool ok = false;
    if (step.rule == 0) {
      ok = erase_at(start, step.path);
    } else {
      auto rule = apply_rule(start, step.path, th, s);
      ok = rule && *rule == step.rule;
    }
    if (!ok) {
      throw InvariantError("replay diverged at step " + std::to_string(step.step) + " (path " +
                           format_path(step.path) + ")");
    }
  }
  canonicalize_conjunction(start);
  return start;
}

bool is_solved(const WorkingFormula& w, const Theory& th) {
  if (w.core.is_false() || !th.in_a_prime(w.bound, w.core)) return false;
  return std::all_of(w.children.begin(), w.children.end(), [&](const NegTree& c) {
    return is_leaf(c) && !c.core.is_true() && !c.core.is_false() && th.in_a_prime(c.bound, c.core);
  });
}

void canonicalize_conjunction(std::vector<WorkingFormula>& conj) {
  for (auto& t : conj) canonicalize_tree(t);
  std::sort(conj.begin(), conj.end(),
            [](const NegTree& a, const NegTree& b) { return compare_trees(a, b) < 0; });
  conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
}

bool finalize_closed(const SolveResult& r) {
  for (const auto& t : r.solved) {
    if (!tree_free_vars(t).empty()) {
      throw std::invalid_argument("finalize_closed: solved conjunction has free variables");
    }
  }
  return r.solved.empty();
}

Solutions present_solutions(const Formula& psi, const Theory& th, Session& s,
                            const SolveOptions& opts) {
  Solutions out;
  out.raw = solve_formula(f_not(psi), th, s, opts);
  for (const auto& t : out.raw.solved) {
    SolvedDisjunct d{t.bound, t.core, {}};
    for (const auto& c : t.children) d.negated.emplace_back(c.bound, c.core);
    out.disjuncts.push_back(std::move(d));
  }
  return out;
}

Formula embed_solutions(const Solutions& sol) {
  std::vector<Formula> ds;
  for (const auto& d : sol.disjuncts) {
    std::vector<Formula> parts{embed_core(d.alpha)};
    for (const auto& [ys, beta] : d.negated) {
      Formula inner = embed_core(beta);
      parts.push_back(f_not(ys.empty() ? inner : f_exists(ys, inner)));
    }
    Formula body = f_and_all(parts);
    ds.push_back(d.x.empty() ? body : f_exists(d.x, body));
  }
  return f_or_all(ds);
}

std::string print_solutions(const Solutions& sol, const Session& s) {
  if (sol.disjuncts.empty()) return "false";
  std::string out;
  for (std::size_t i = 0; i < sol.disjuncts.size(); ++i) {
    if (i) out += " | ";
    Solutions one;
    one.disjuncts.push_back(sol.disjuncts[i]);
    out += "(" + print_formula(embed_solutions(one), s) + ")";
  }
  return out;
}

}  // namespace decomp
