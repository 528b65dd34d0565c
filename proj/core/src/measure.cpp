#include "decomp/measure.hpp"

#include <algorithm>
#include <set>

#include "decomp/solver.hpp"

namespace decomp {

HNat HNat::one() { return pow2(zero()); }

HNat HNat::pow2(HNat e) {
  HNat r;
  r.exps_.push_back(std::move(e));
  return r;
}

HNat HNat::of(std::uint64_t n) {
  HNat r;
  for (int bit = 63; bit >= 0; --bit) {
    if (n >> bit & 1U) r.exps_.push_back(of(static_cast<std::uint64_t>(bit)));
  }
  return r;
}

HNat operator+(const HNat& a, const HNat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::multiset<HNat> pending(a.exps_.begin(), a.exps_.end());
  pending.insert(b.exps_.begin(), b.exps_.end());
  std::vector<HNat> ascending;
  while (!pending.empty()) {
    HNat e = *pending.begin();
    pending.erase(pending.begin());
    auto twin = pending.find(e);
    if (twin != pending.end()) {
      pending.erase(twin);
      pending.insert(e + HNat::one());
    } else {
      ascending.push_back(std::move(e));
    }
  }
  HNat r;
  r.exps_.assign(std::make_move_iterator(ascending.rbegin()),
                 std::make_move_iterator(ascending.rend()));
  return r;
}

std::strong_ordering operator<=>(const HNat& a, const HNat& b) {
  std::size_t n = std::min(a.exps_.size(), b.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
  }
  return a.exps_.size() <=> b.exps_.size();
}

std::optional<mpz_class> HNat::to_mpz(std::size_t max_bits) const {
  mpz_class r = 0;
  for (const auto& e : exps_) {
    auto ev = e.to_mpz(64);
    if (!ev || *ev >= max_bits) return std::nullopt;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, ev->get_ui());
    r += term;
  }
  return r;
}

std::string HNat::str() const {
  if (auto v = to_mpz(256)) return v->get_str();
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) out += " + ";
    out += "2^(" + exps_[i].str() + ")";
  }
  return out;
}

namespace {

struct MeasureRec {
  const Theory& th;

  // Returns (α, β) of one working formula; counts nodes outside A′ into n3.
  std::pair<HNat, HNat> node(const NegTree& t, std::uint64_t& n3) const {
    HNat a_sum, b_sum;
    for (const auto& c : t.children) {
      auto [a, b] = node(c, n3);
      a_sum += a;
      b_sum += b;
    }
    if (!th.in_a_prime(t.bound, t.core)) ++n3;
    HNat alpha = HNat::pow2(a_sum);
    HNat base = HNat::one() + b_sum;
    bool third = !t.core.falsum && !th.decompose(t.bound, t.core).third_trivial();
    // 4^(1+Σ) = 2^((1+Σ)+(1+Σ))
    HNat beta = third ? HNat::pow2(base + base) : base;
    return {alpha, beta};
  }
};

}  // namespace

std::optional<Measure> debug_measure(const std::vector<NegTree>& conj, const Theory& th,
                                     std::size_t depth_cap) {
  for (const auto& t : conj) {
    if (depth(t) > depth_cap) return std::nullopt;
  }
  MeasureRec rec{th};
  Measure m;
  std::uint64_t n3 = 0;
  for (const auto& t : conj) {
    auto [a, b] = rec.node(t, n3);
    m.n1 += a;
    m.n2 += b;
  }
  m.n3 = HNat::of(n3);
  return m;
}

}  // namespace decomp
