#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "decomp/formula.hpp"
#include "decomp/signature.hpp"

namespace decomp {

/// Byte offsets [start, end) into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Lines: `theory eq|ra|trees`, `fun NAME/ARITY`, `rel NAME/ARITY`, `#` comments.
Signature parse_signature(std::string_view text);

/// Variables are resolved by name through `s`: equal names give equal
/// variables, and unseen names create new ones in order of appearance.
Formula parse_formula(std::string_view text, const Signature& sig, Session& s);
Term parse_term(std::string_view text, const Signature& sig, Session& s);

std::string print_term(const Term& t, const Session& s);
std::string print_formula(const Formula& f, const Session& s);

}  // namespace decomp
