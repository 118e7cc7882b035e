#include "powsum2/valuation.hpp"

namespace powsum2 {

Valuation v2(const Nat& k) {
  if (k.is_zero()) return Valuation::infinite();
  return Valuation::finite(mpz_scan1(k.raw().get_mpz_t(), 0));
}

TwoAdicSplit split2(const Nat& k) {
  if (k.is_zero()) throw std::domain_error("split2: 0 has no finite split");
  const std::uint64_t d = mpz_scan1(k.raw().get_mpz_t(), 0);
  return {d, k >> d};
}

Nat triangular(const Nat& k) {
  return (k * (k + 1)) >> 1;
}

Valuation v2_half_product(const Nat& m) {
  if (m.is_zero()) throw std::domain_error("v2_half_product: m must be >= 1");
  // Dividing m(m+1)/2 by 2 strips exactly one factor of 2 from the even one
  // of m, m+1.
  const std::uint64_t d = m.even() ? v2(m).value() : v2(m + 1).value();
  return Valuation::finite(d - 1);
}

}  // namespace powsum2
