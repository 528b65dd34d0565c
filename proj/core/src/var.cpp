#include "decomp/var.hpp"

#include <cctype>

namespace decomp {

Var Session::make(std::string name) {
  Var v{static_cast<std::uint32_t>(names_.size())};
  by_name_.emplace(name, v.id);
  names_.push_back(std::move(name));
  return v;
}

Var Session::var(std::string_view name) {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    return Var{it->second};
  }
  return make(std::string(name));
}

std::optional<Var> Session::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    return Var{it->second};
  }
  return std::nullopt;
}

Var Session::fresh(std::string_view base) {
  std::string stem(base);
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  auto& next = next_suffix_[stem];
  for (;;) {
    std::string candidate = stem + std::to_string(++next);
    if (!by_name_.contains(candidate)) return make(std::move(candidate));
  }
}

Var Session::fresh_like(Var v) { return fresh(name(v)); }

}  // namespace decomp
