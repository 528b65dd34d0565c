#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace decomp {

/// A natural number written as a sum of distinct powers of two whose
/// exponents are themselves HNats. Tower-sized values such as 2^(2^(…)) stay
/// small in memory; addition and comparison are exact.
class HNat {
 public:
  HNat() = default;
  static HNat zero() { return {}; }
  static HNat one();
  static HNat of(std::uint64_t n);
  static HNat pow2(HNat e);

  bool is_zero() const { return exps_.empty(); }
  /// The value, if it fits in `max_bits` bits.
  std::optional<mpz_class> to_mpz(std::size_t max_bits = 4096) const;
  std::string str() const;

  friend HNat operator+(const HNat& a, const HNat& b);
  HNat& operator+=(const HNat& b) { return *this = *this + b; }
  friend std::strong_ordering operator<=>(const HNat& a, const HNat& b);
  friend bool operator==(const HNat& a, const HNat& b) { return (a <=> b) == 0; }

 private:
  std::vector<HNat> exps_;  // strictly decreasing
};

struct Measure {
  HNat n1, n2, n3;
  friend std::strong_ordering operator<=>(const Measure& a, const Measure& b) {
    if (auto c = a.n1 <=> b.n1; c != 0) return c;
    if (auto c = a.n2 <=> b.n2; c != 0) return c;
    return a.n3 <=> b.n3;
  }
  friend bool operator==(const Measure& a, const Measure& b) { return (a <=> b) == 0; }
};

}  // namespace decomp
