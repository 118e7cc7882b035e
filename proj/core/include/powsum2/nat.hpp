#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace powsum2 {

/// Exponent of a power sum. Machine-width on purpose: exponents stay small
/// while bases and sums grow without bound.
using Exponent = std::uint64_t;

/// Arbitrary-precision nonnegative integer. Thin value wrapper over GMP's
/// mpz_class that rejects negative values at every boundary and serializes
/// as a base-10 string.
class Nat {
 public:
  Nat() : v_(0) {}

  template <std::integral T>
  Nat(T v) {  // NOLINT: implicit by design, literals are everywhere
    if constexpr (std::is_signed_v<T>) {
      if (v < 0) throw std::invalid_argument("Nat: negative value");
    }
    v_ = static_cast<unsigned long>(v);
  }

  explicit Nat(mpz_class v) : v_(std::move(v)) {
    if (sgn(v_) < 0) throw std::invalid_argument("Nat: negative value");
  }

  /// Parses a base-10 string. Anything that is not a plain string of
  /// decimal digits yields nullopt.
  static std::optional<Nat> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    for (char c : text) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    Nat n;
    if (mpz_set_str(n.v_.get_mpz_t(), std::string(text).c_str(), 10) != 0) {
      return std::nullopt;
    }
    return n;
  }

  std::string str() const { return v_.get_str(); }

  const mpz_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
  bool even() const { return !odd(); }

  bool fits_u64() const { return mpz_fits_ulong_p(v_.get_mpz_t()) != 0; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Nat: value exceeds 64 bits");
    return mpz_get_ui(v_.get_mpz_t());
  }

  /// Number of bits in the binary representation; 0 for zero.
  std::size_t bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
  }

  friend Nat operator+(const Nat& a, const Nat& b) {
    return Nat(mpz_class(a.v_ + b.v_));
  }
  friend Nat operator*(const Nat& a, const Nat& b) {
    return Nat(mpz_class(a.v_ * b.v_));
  }
  friend Nat operator-(const Nat& a, const Nat& b) {
    if (a.v_ < b.v_) throw std::underflow_error("Nat: subtraction underflow");
    return Nat(mpz_class(a.v_ - b.v_));
  }
  friend Nat operator/(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("Nat: division by zero");
    return Nat(mpz_class(a.v_ / b.v_));
  }
  friend Nat operator%(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("Nat: division by zero");
    return Nat(mpz_class(a.v_ % b.v_));
  }
  friend Nat operator<<(const Nat& a, std::uint64_t bits) {
    return Nat(mpz_class(a.v_ << static_cast<mp_bitcnt_t>(bits)));
  }
  friend Nat operator>>(const Nat& a, std::uint64_t bits) {
    return Nat(mpz_class(a.v_ >> static_cast<mp_bitcnt_t>(bits)));
  }

  friend bool operator==(const Nat& a, const Nat& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Nat& n) {
    return os << n.v_;
  }

 private:
  mpz_class v_;
};

/// base^e, exactly.
inline Nat pow(const Nat& base, Exponent e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.raw().get_mpz_t(), e);
  return Nat(std::move(r));
}

/// Whether d divides n (0 divides only 0).
inline bool divides(const Nat& d, const Nat& n) {
  return mpz_divisible_p(n.raw().get_mpz_t(), d.raw().get_mpz_t()) != 0;
}

/// Quotient and remainder of a / b, b >= 1.
inline std::pair<Nat, Nat> divmod(const Nat& a, const Nat& b) {
  if (b.is_zero()) throw std::domain_error("Nat: division by zero");
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.raw().get_mpz_t(),
              b.raw().get_mpz_t());
  return {Nat(std::move(q)), Nat(std::move(r))};
}

}  // namespace powsum2
