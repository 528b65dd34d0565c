#include "decomp/signature.hpp"

namespace decomp {

std::string_view to_string(TheoryTag t) {
  switch (t) {
    case TheoryTag::kEq: return "eq";
    case TheoryTag::kRa: return "ra";
    case TheoryTag::kTrees: return "trees";
  }
  return "?";
}

std::optional<TheoryTag> parse_theory_tag(std::string_view s) {
  if (s == "eq") return TheoryTag::kEq;
  if (s == "ra") return TheoryTag::kRa;
  if (s == "trees") return TheoryTag::kTrees;
  return std::nullopt;
}

namespace {
const Symbol* lookup(const std::vector<Symbol>& syms, std::string_view name) {
  for (const auto& s : syms) {
    if (s.name == name) return &s;
  }
  return nullptr;
}
}  // namespace

const Symbol* Signature::function(std::string_view name) const { return lookup(functions, name); }
const Symbol* Signature::relation(std::string_view name) const { return lookup(relations, name); }

Signature Signature::eq() { return Signature{TheoryTag::kEq, {}, {}}; }

Signature Signature::ra() {
  return Signature{TheoryTag::kRa, {{"+", 2}, {"-", 1}, {"0", 0}, {"1", 0}}, {}};
}

Signature Signature::trees(std::vector<Symbol> functions) {
  return Signature{TheoryTag::kTrees, std::move(functions), {}};
}

}  // namespace decomp
