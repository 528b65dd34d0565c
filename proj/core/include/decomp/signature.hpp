#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decomp {

enum class TheoryTag { kEq, kRa, kTrees };

std::string_view to_string(TheoryTag t);
std::optional<TheoryTag> parse_theory_tag(std::string_view s);

struct Symbol {
  std::string name;
  int arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Signature {
  TheoryTag tag = TheoryTag::kTrees;
  std::vector<Symbol> functions;
  std::vector<Symbol> relations;

  const Symbol* function(std::string_view name) const;
  const Symbol* relation(std::string_view name) const;

  static Signature eq();
  static Signature ra();
  static Signature trees(std::vector<Symbol> functions);
};

}  // namespace decomp
