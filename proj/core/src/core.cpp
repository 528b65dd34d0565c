#include "decomp/core.hpp"

#include <algorithm>

namespace decomp {

const mpz_class* LinearEq::coeff(Var v) const {
  for (const auto& [x, a] : terms) {
    if (x == v) return &a;
  }
  return nullptr;
}

void LinearEq::normalize_terms() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return outranks(a.first, b.first); });
  std::vector<std::pair<Var, mpz_class>> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0; });
  terms = std::move(merged);
}

void LinearEq::canonicalize() {
  normalize_terms();
  mpz_class g = constant;
  for (const auto& t : terms) g = gcd(g, t.second);
  if (g == 0) return;
  g = abs(g);
  bool negate = terms.empty() ? constant < 0 : terms.front().second < 0;
  if (negate) g = -g;
  if (g == 1) return;
  for (auto& t : terms) t.second /= g;
  constant /= g;
}

namespace {
std::strong_ordering cmp(const mpz_class& a, const mpz_class& b) {
  int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}
}  // namespace

std::strong_ordering operator<=>(const LinearEq& a, const LinearEq& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    // Higher-ranked leaders sort first.
    if (auto c = b.terms[i].first <=> a.terms[i].first; c != 0) return c;
    if (auto c = cmp(a.terms[i].second, b.terms[i].second); c != 0) return c;
  }
  if (auto c = a.terms.size() <=> b.terms.size(); c != 0) return c;
  return cmp(a.constant, b.constant);
}

Core Core::of_atoms(std::vector<FlatAtom> atoms) {
  Core c;
  c.atoms = std::move(atoms);
  c.canonicalize();
  return c;
}

Core Core::of_block(std::vector<LinearEq> block) {
  Core c;
  c.block = std::move(block);
  c.canonicalize();
  return c;
}

void Core::canonicalize() {
  if (std::any_of(atoms.begin(), atoms.end(),
                  [](const FlatAtom& a) { return a.kind == FlatAtom::Kind::kFalse; })) {
    falsum = true;
  }
  if (falsum) {
    atoms.clear();
    block.clear();
    return;
  }
  std::erase_if(atoms, [](const FlatAtom& a) { return a.kind == FlatAtom::Kind::kTrue; });
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
}

std::strong_ordering operator<=>(const Core& a, const Core& b) {
  if (auto c = a.falsum <=> b.falsum; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.atoms.begin(), a.atoms.end(),
                                                      b.atoms.begin(), b.atoms.end());
      c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.block.begin(), a.block.end(), b.block.begin(),
                                                b.block.end());
}

Core conjoin(const Core& a, const Core& b) {
  if (a.falsum || b.falsum) return Core::falsity();
  Core c = a;
  c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
  c.block.insert(c.block.end(), b.block.begin(), b.block.end());
  c.canonicalize();
  return c;
}

void collect_vars(const FlatAtom& a, std::set<Var>& out) {
  if (a.is_equation()) out.insert(a.lhs);
  out.insert(a.args.begin(), a.args.end());
}

void collect_vars(const LinearEq& e, std::set<Var>& out) {
  for (const auto& t : e.terms) out.insert(t.first);
}

void collect_vars(const Core& c, std::set<Var>& out) {
  for (const auto& a : c.atoms) collect_vars(a, out);
  for (const auto& e : c.block) collect_vars(e, out);
}

std::set<Var> vars_of(const Core& c) {
  std::set<Var> out;
  collect_vars(c, out);
  return out;
}

bool mentions(const Core& c, Var v) {
  for (const auto& a : c.atoms) {
    if (a.is_equation() && a.lhs == v) return true;
    if (std::find(a.args.begin(), a.args.end(), v) != a.args.end()) return true;
  }
  for (const auto& e : c.block) {
    if (e.coeff(v)) return true;
  }
  return false;
}

namespace {
Var map_var(Var v, const VarMap& m) {
  auto it = m.find(v);
  return it == m.end() ? v : it->second;
}
}  // namespace

FlatAtom rename(const FlatAtom& a, const VarMap& m) {
  FlatAtom r = a;
  if (r.is_equation()) r.lhs = map_var(r.lhs, m);
  for (Var& v : r.args) v = map_var(v, m);
  return r;
}

LinearEq rename(const LinearEq& e, const VarMap& m) {
  LinearEq r = e;
  for (auto& t : r.terms) t.first = map_var(t.first, m);
  r.canonicalize();
  return r;
}

Core rename(const Core& c, const VarMap& m) {
  if (c.falsum) return c;
  Core r;
  r.atoms.reserve(c.atoms.size());
  for (const auto& a : c.atoms) r.atoms.push_back(rename(a, m));
  r.block.reserve(c.block.size());
  for (const auto& e : c.block) r.block.push_back(rename(e, m));
  r.canonicalize();
  return r;
}

std::string print_atom(const FlatAtom& a, const Session& s) {
  switch (a.kind) {
    case FlatAtom::Kind::kTrue: return "true";
    case FlatAtom::Kind::kFalse: return "false";
    case FlatAtom::Kind::kEqVar: return s.name(a.lhs) + " = " + s.name(a.rhs());
    case FlatAtom::Kind::kEqApp:
    case FlatAtom::Kind::kRel: {
      std::string out;
      if (a.kind == FlatAtom::Kind::kEqApp) out = s.name(a.lhs) + " = ";
      out += a.sym;
      if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          if (i) out += ", ";
          out += s.name(a.args[i]);
        }
        out += ')';
      }
      return out;
    }
  }
  return "?";
}

std::string print_linear(const LinearEq& e, const Session& s) {
  std::string out;
  if (e.terms.empty()) {
    out = "0";
  } else {
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      if (i) out += " + ";
      out += e.terms[i].second.get_str() + "*" + s.name(e.terms[i].first);
    }
  }
  out += " = " + e.constant.get_str() + "*1";
  return out;
}

std::string print_core(const Core& c, const Session& s) {
  if (c.falsum) return "false";
  if (c.is_true()) return "true";
  std::string out;
  bool first = true;
  for (const auto& a : c.atoms) {
    if (!first) out += " & ";
    first = false;
    out += print_atom(a, s);
  }
  for (const auto& e : c.block) {
    if (!first) out += " & ";
    first = false;
    out += print_linear(e, s);
  }
  return out;
}

}  // namespace decomp
