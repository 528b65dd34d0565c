#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "decomp/syntax.hpp"

namespace decomp {
namespace {

enum class Tok { kName, kLParen, kRParen, kComma, kDot, kEq, kNot, kAnd, kOr, kImplies, kIff, kPlus, kMinus, kStar, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(src.substr(start, len)), {start, start + len}});
      i = start + len;
    };
    if (name_char(c)) {
      std::size_t j = i;
      while (j < src.size() && name_char(src[j])) ++j;
      emit(Tok::kName, j - i);
      continue;
    }
    switch (c) {
      case '(': emit(Tok::kLParen, 1); continue;
      case ')': emit(Tok::kRParen, 1); continue;
      case ',': emit(Tok::kComma, 1); continue;
      case '.': emit(Tok::kDot, 1); continue;
      case '=': emit(Tok::kEq, 1); continue;
      case '~': emit(Tok::kNot, 1); continue;
      case '&': emit(Tok::kAnd, 1); continue;
      case '|': emit(Tok::kOr, 1); continue;
      case '+': emit(Tok::kPlus, 1); continue;
      case '*': emit(Tok::kStar, 1); continue;
      case '-':
        if (src.substr(i, 2) == "->") {
          emit(Tok::kImplies, 2);
        } else {
          emit(Tok::kMinus, 1);
        }
        continue;
      case '<':
        if (src.substr(i, 3) == "<->") {
          emit(Tok::kIff, 3);
          continue;
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", {i, i + 1});
  }
  out.push_back({Tok::kEnd, "", {src.size(), src.size()}});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "ex" || s == "all" || s == "true" || s == "false";
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig, Session& s)
      : toks_(lex(src)), sig_(sig), s_(s) {}

  Formula formula_eof() {
    Formula f = iff();
    expect(Tok::kEnd, "end of input");
    return f;
  }

  Term term_eof() {
    Term t = sum();
    expect(Tok::kEnd, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.span);
  }

  Formula iff() {
    Formula f = implies();
    while (accept(Tok::kIff)) f = f_iff(f, implies());
    return f;
  }

  Formula implies() {
    Formula f = disj();
    if (accept(Tok::kImplies)) return f_implies(f, implies());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::kOr)) f = f_or(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::kAnd)) f = f_and(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::kNot)) return f_not(unary());
    const Token& t = peek();
    if (t.kind == Tok::kName && (t.text == "ex" || t.text == "all")) {
      bool ex = t.text == "ex";
      next();
      std::vector<Var> vars;
      while (peek().kind == Tok::kName) {
        const Token& v = next();
        check_variable_name(v);
        vars.push_back(s_.var(v.text));
      }
      expect(Tok::kDot, "'.' after quantified variables");
      Formula body = iff();
      return ex ? f_exists(std::move(vars), body) : f_forall(std::move(vars), body);
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::kName && t.text == "true") {
      next();
      return f_true();
    }
    if (t.kind == Tok::kName && t.text == "false") {
      next();
      return f_false();
    }
    if (t.kind == Tok::kName && sig_.relation(t.text)) return relation();
    if (t.kind == Tok::kLParen) {
      // A parenthesis opens either a formula or a term on the left of '='.
      std::size_t save = pos_;
      try {
        Term l = sum();
        if (peek().kind == Tok::kEq) {
          next();
          return f_eq(l, sum());
        }
      } catch (const ParseError&) {
      }
      pos_ = save;
      next();
      Formula f = iff();
      expect(Tok::kRParen, "')'");
      return f;
    }
    Term l = sum();
    expect(Tok::kEq, "'='");
    return f_eq(l, sum());
  }

  Formula relation() {
    const Token& name = next();
    const Symbol* r = sig_.relation(name.text);
    std::vector<Term> args;
    if (accept(Tok::kLParen)) args = arguments();
    if (static_cast<int>(args.size()) != r->arity) {
      throw ParseError("relation '" + name.text + "' expects " + std::to_string(r->arity) +
                           " argument(s), got " + std::to_string(args.size()),
                       name.span);
    }
    return f_rel(name.text, std::move(args));
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (accept(Tok::kRParen)) return args;
    args.push_back(sum());
    while (accept(Tok::kComma)) args.push_back(sum());
    expect(Tok::kRParen, "')' or ','");
    return args;
  }

  bool has_fn(const char* name, int arity) const {
    const Symbol* f = sig_.function(name);
    return f && f->arity == arity;
  }

  Term sum() {
    Term t = signed_term();
    while (peek().kind == Tok::kPlus) {
      if (!has_fn("+", 2)) fail("'+' is not in the signature");
      next();
      t = t_app("+", {t, signed_term()});
    }
    return t;
  }

  Term signed_term() {
    if (peek().kind == Tok::kMinus) {
      if (!has_fn("-", 1)) fail("'-' is not in the signature");
      next();
      if (coefficient_ahead()) {
        auto [k, body] = scaled();
        return repeat(t_app("-", {body}), k);
      }
      return t_app("-", {signed_term()});
    }
    if (coefficient_ahead()) {
      auto [k, body] = scaled();
      return repeat(body, k);
    }
    return primary();
  }

  bool coefficient_ahead() const {
    return peek().kind == Tok::kName && all_digits(peek().text) && peek(1).kind == Tok::kStar;
  }

  std::pair<unsigned long, Term> scaled() {
    const Token& k = next();
    next();  // '*'
    unsigned long n = 0;
    try {
      n = std::stoul(k.text);
    } catch (const std::exception&) {
      throw ParseError("coefficient out of range", k.span);
    }
    if (n > 100000) throw ParseError("coefficient out of range", k.span);
    return {n, primary()};
  }

  // k*t is t + ... + t (k copies); 0*t is the constant 0.
  Term repeat(const Term& t, unsigned long k) {
    if (k == 0) {
      if (!has_fn("0", 0)) fail("'0' is not in the signature");
      return t_app("0");
    }
    Term acc = t;
    for (unsigned long i = 1; i < k; ++i) {
      if (!has_fn("+", 2)) fail("'+' is not in the signature");
      acc = t_app("+", {acc, t});
    }
    return acc;
  }

  Term primary() {
    if (accept(Tok::kLParen)) {
      Term t = sum();
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (peek().kind != Tok::kName) fail("expected a term");
    const Token& name = next();
    if (is_keyword(name.text)) {
      throw ParseError("keyword '" + name.text + "' cannot be used as a term", name.span);
    }
    if (sig_.relation(name.text)) {
      throw ParseError("relation '" + name.text + "' used as a term", name.span);
    }
    const Symbol* f = sig_.function(name.text);
    if (peek().kind == Tok::kLParen) {
      SourceSpan at = name.span;
      if (!f) throw ParseError("unknown function symbol '" + name.text + "'", at);
      next();
      std::vector<Term> args = arguments();
      if (static_cast<int>(args.size()) != f->arity) {
        throw ParseError("function '" + name.text + "' expects " + std::to_string(f->arity) +
                             " argument(s), got " + std::to_string(args.size()),
                         at);
      }
      return t_app(name.text, std::move(args));
    }
    if (f) {
      if (f->arity != 0) {
        throw ParseError("function '" + name.text + "' expects " + std::to_string(f->arity) +
                             " argument(s), got 0",
                         name.span);
      }
      return t_app(name.text);
    }
    check_variable_name(name);
    return t_var(s_.var(name.text));
  }

  void check_variable_name(const Token& t) const {
    if (is_keyword(t.text)) {
      throw ParseError("keyword '" + t.text + "' cannot be a variable", t.span);
    }
    if (all_digits(t.text)) {
      throw ParseError("unknown constant '" + t.text + "'", t.span);
    }
    if (sig_.function(t.text) || sig_.relation(t.text)) {
      throw ParseError("symbol '" + t.text + "' cannot be a variable", t.span);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  Session& s_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig, Session& s) {
  return Parser(text, sig, s).formula_eof();
}

Term parse_term(std::string_view text, const Signature& sig, Session& s) {
  return Parser(text, sig, s).term_eof();
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  bool have_theory = false;
  std::set<std::string> seen;
  std::vector<Symbol> funs, rels;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    SourceSpan span{line_start, line_start + line.size()};

    std::istringstream in{std::string(line)};
    std::string kw, arg, extra;
    in >> kw >> arg >> extra;
    if (!kw.empty()) {
      if (!extra.empty()) throw ParseError("trailing text in declaration", span);
      if (kw == "theory") {
        if (have_theory) throw ParseError("duplicate theory declaration", span);
        auto tag = parse_theory_tag(arg);
        if (!tag) throw ParseError("unknown theory '" + arg + "'", span);
        sig.tag = *tag;
        have_theory = true;
      } else if (kw == "fun" || kw == "rel") {
        auto slash = arg.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == arg.size() ||
            !all_digits(arg.substr(slash + 1))) {
          throw ParseError("expected NAME/ARITY", span);
        }
        std::string name = arg.substr(0, slash);
        int arity = std::stoi(arg.substr(slash + 1));
        for (char c : name) {
          if (!name_char(c) && c != '+' && c != '-') {
            throw ParseError("invalid symbol name '" + name + "'", span);
          }
        }
        if (is_keyword(name)) throw ParseError("keyword '" + name + "' cannot be a symbol", span);
        if (!seen.insert(name).second) throw ParseError("duplicate symbol '" + name + "'", span);
        (kw == "fun" ? funs : rels).push_back({name, arity});
      } else {
        throw ParseError("unknown declaration '" + kw + "'", span);
      }
    }
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  if (!have_theory) throw ParseError("missing theory declaration", {0, 0});

  switch (sig.tag) {
    case TheoryTag::kEq:
      if (!funs.empty() || !rels.empty()) {
        throw ParseError("theory eq has no function or relation symbols", {0, text.size()});
      }
      return Signature::eq();
    case TheoryTag::kRa: {
      Signature ra = Signature::ra();
      if (!rels.empty()) throw ParseError("theory ra has no relation symbols", {0, text.size()});
      for (const auto& f : funs) {
        const Symbol* known = ra.function(f.name);
        if (!known || known->arity != f.arity) {
          throw ParseError("theory ra fixes its symbols to +/2 -/1 0/0 1/0; got " + f.name + "/" +
                               std::to_string(f.arity),
                           {0, text.size()});
        }
      }
      return ra;
    }
    case TheoryTag::kTrees:
      for (const auto& f : funs) {
        if (f.name == "+" || f.name == "-") {
          throw ParseError("symbol '" + f.name + "' is reserved for theory ra", {0, text.size()});
        }
      }
      sig.functions = std::move(funs);
      sig.relations = std::move(rels);
      return sig;
  }
  return sig;
}

}  // namespace decomp
