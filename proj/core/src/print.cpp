#include "decomp/syntax.hpp"

namespace decomp {
namespace {

void print_term_into(const Term& t, const Session& s, std::string& out) {
  if (t->is_var) {
    out += s.name(t->var);
    return;
  }
  if (t->fn == "+" && t->args.size() == 2) {
    print_term_into(t->args[0], s, out);
    out += " + ";
    bool wrap = !t->args[1]->is_var && t->args[1]->fn == "+" && t->args[1]->args.size() == 2;
    if (wrap) out += '(';
    print_term_into(t->args[1], s, out);
    if (wrap) out += ')';
    return;
  }
  if (t->fn == "-" && t->args.size() == 1) {
    out += '-';
    const Term& a = t->args[0];
    bool wrap = !a->is_var && a->fn == "+" && a->args.size() == 2;
    if (wrap) out += '(';
    print_term_into(a, s, out);
    if (wrap) out += ')';
    return;
  }
  out += t->fn;
  if (t->args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    print_term_into(t->args[i], s, out);
  }
  out += ')';
}

int prec(FKind k) {
  switch (k) {
    case FKind::kIff: return 1;
    case FKind::kImplies: return 2;
    case FKind::kOr: return 3;
    case FKind::kAnd: return 4;
    default: return 5;
  }
}

const char* op_text(FKind k) {
  switch (k) {
    case FKind::kIff: return " <-> ";
    case FKind::kImplies: return " -> ";
    case FKind::kOr: return " | ";
    case FKind::kAnd: return " & ";
    default: return "";
  }
}

bool is_quant(const Formula& f) { return f->kind == FKind::kExists || f->kind == FKind::kForall; }
bool is_binary(const Formula& f) { return prec(f->kind) < 5; }

void print_into(const Formula& f, const Session& s, std::string& out);

void print_wrapped(const Formula& f, const Session& s, std::string& out, bool wrap) {
  if (wrap) out += '(';
  print_into(f, s, out);
  if (wrap) out += ')';
}

void print_into(const Formula& f, const Session& s, std::string& out) {
  switch (f->kind) {
    case FKind::kTrue: out += "true"; return;
    case FKind::kFalse: out += "false"; return;
    case FKind::kEq:
      print_term_into(f->lhs, s, out);
      out += " = ";
      print_term_into(f->rhs, s, out);
      return;
    case FKind::kRel:
      out += f->rel;
      if (!f->rel_args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < f->rel_args.size(); ++i) {
          if (i) out += ", ";
          print_term_into(f->rel_args[i], s, out);
        }
        out += ')';
      }
      return;
    case FKind::kNot:
      out += '~';
      print_wrapped(f->a, s, out, is_binary(f->a) || is_quant(f->a));
      return;
    case FKind::kExists:
    case FKind::kForall:
      out += f->kind == FKind::kExists ? "ex" : "all";
      for (Var v : f->vars) {
        out += ' ';
        out += s.name(v);
      }
      out += f->vars.empty() ? " . " : ". ";
      print_into(f->a, s, out);
      return;
    default: {
      int p = prec(f->kind);
      bool right_assoc = f->kind == FKind::kImplies;
      int pl = prec(f->a->kind), pr = prec(f->b->kind);
      bool wrap_l = is_quant(f->a) || pl < p || (pl == p && right_assoc);
      bool wrap_r = is_quant(f->b) || pr < p || (pr == p && !right_assoc);
      print_wrapped(f->a, s, out, wrap_l);
      out += op_text(f->kind);
      print_wrapped(f->b, s, out, wrap_r);
    }
  }
}

}  // namespace

std::string print_term(const Term& t, const Session& s) {
  std::string out;
  print_term_into(t, s, out);
  return out;
}

std::string print_formula(const Formula& f, const Session& s) {
  std::string out;
  print_into(f, s, out);
  return out;
}

}  // namespace decomp
