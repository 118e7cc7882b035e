#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "powsum2/nat.hpp"

namespace powsum2 {

/// 2-adic valuation: the largest v with 2^v dividing a number. Finite for
/// every nonzero input; the distinguished Infinite value belongs to 0 alone.
class Valuation {
 public:
  static Valuation finite(std::uint64_t v) { return Valuation(v); }
  static Valuation infinite() { return Valuation(); }

  bool is_finite() const { return v_.has_value(); }
  bool is_infinite() const { return !v_.has_value(); }

  /// The finite exponent. Throws if infinite; callers that need finiteness
  /// must check first.
  std::uint64_t value() const {
    if (!v_) throw std::logic_error("Valuation: infinite has no finite value");
    return *v_;
  }

  std::string str() const { return v_ ? std::to_string(*v_) : "inf"; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return os << v.str();
  }

 private:
  Valuation() = default;
  explicit Valuation(std::uint64_t v) : v_(v) {}
  std::optional<std::uint64_t> v_;
};

/// The unique factorization k = 2^d * q with q odd.
struct TwoAdicSplit {
  std::uint64_t d = 0;
  Nat q;
};

/// v2(k): Finite(trailing zero bits) for k >= 1, Infinite for k = 0.
Valuation v2(const Nat& k);

/// Splits k >= 1 as 2^d * q with q odd. Rejects k = 0, which has no finite
/// split.
TwoAdicSplit split2(const Nat& k);

/// k(k+1)/2, exactly. One of the two consecutive factors is even, so the
/// halving is always exact.
Nat triangular(const Nat& k);

/// v2(m(m+1)/2) for m >= 1, computed without forming the product: it equals
/// d - 1 where d is the valuation of whichever of m, m+1 is even.
Valuation v2_half_product(const Nat& m);

}  // namespace powsum2
