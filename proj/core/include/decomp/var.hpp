#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace decomp {

/// A variable handle. Ids come from one increasing counter per Session, so
/// the id is also the rank: a larger id means the variable is greater in the
/// order used by every decomposition.
struct Var {
  std::uint32_t id = 0;

  std::uint32_t rank() const { return id; }
  friend auto operator<=>(Var, Var) = default;
};

inline bool outranks(Var a, Var b) { return a.id > b.id; }

/// Owns variable names and hands out fresh variables.
class Session {
 public:
  Session() = default;

  /// Returns the variable with this display name, creating it if needed.
  Var var(std::string_view name);
  std::optional<Var> find(std::string_view name) const;

  /// A new variable that outranks every existing one. Its display name is
  /// `base` followed by the smallest unused numeric suffix.
  Var fresh(std::string_view base);
  Var fresh_like(Var v);

  const std::string& name(Var v) const { return names_.at(v.id); }
  std::size_t size() const { return names_.size(); }

 private:
  Var make(std::string name);

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::unordered_map<std::string, std::uint32_t> next_suffix_;
};

}  // namespace decomp

template <>
struct std::hash<decomp::Var> {
  std::size_t operator()(decomp::Var v) const noexcept { return v.id; }
};
