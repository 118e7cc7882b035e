#pragma once

#include <cstdint>

#include "powsum2/errors.hpp"
#include "powsum2/nat.hpp"
#include "powsum2/valuation.hpp"

namespace powsum2 {

/// Default iteration cap for oracle_sum. The oracle is O(m); the cap keeps
/// it honest about that cost. Overridable per call and via the CLI.
inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Default ceiling for the modular valuation's working precision, in bits.
inline constexpr std::uint64_t kDefaultMaxPrecisionBits = 4096;

/// A power sum query: S_n(m) = 1^n + 2^n + ... + m^n with m >= 1, n >= 1.
struct PowerSumQuery {
  Nat m;
  Exponent n = 1;
};

/// A power sum reduced mod 2^precision_bits.
struct ResidueResult {
  Nat residue;
  std::uint64_t precision_bits = 0;
};

/// Ground truth: the exact sum 1^n + ... + m^n by direct summation.
/// O(m) big-integer operations; refuses m beyond the budget (use
/// doubling_sum or the modular path instead).
Nat oracle_sum(const Nat& m, Exponent n,
               std::uint64_t budget = kDefaultOracleBudget);

/// Exact binomial coefficient, 0 <= k <= n.
Nat binomial(std::uint64_t n, std::uint64_t k);

/// The same exact value as oracle_sum(m, n), computed in O(polylog m)
/// big-integer operations: even arguments m = 2a expand through
///
///   S_n(2a) = a^n + 2 * sum_{i=0}^{floor(n/2)} C(n,2i) a^(n-2i) S_2i(a)
///
/// and odd arguments peel one term. S_0(a) = a (the count of summands)
/// closes the recursion. Memoization is per call; the function is pure.
Nat doubling_sum(const Nat& m, Exponent n);

/// S_n(m) mod 2^K by periodicity: j -> j^n mod 2^K has period 2^K, so
/// whole blocks contribute floor(m / 2^K) * sum_{j=0}^{2^K-1} j^n and the
/// tail is summed directly, all with square-and-multiply. Work scales with
/// min(m, 2^K) modular exponentiations, independent of the size of S_n(m).
ResidueResult modular_sum(const Nat& m, Exponent n,
                          std::uint64_t precision_bits);

/// Valuation of S_n(2^d * q) for d >= 1 and odd q, straight from the case
/// split: d - 1 when n = 1 or n is even, 2(d - 1) when n >= 3 is odd.
Valuation v2_lemma(Exponent n, std::uint64_t d, const Nat& q);

/// Closed-form valuation of S_n(m): v2(m(m+1)/2), doubled when n >= 3 is
/// odd. O(1) in the number of terms of the sum. Never Infinite.
Valuation v2_closed_form(const Nat& m, Exponent n);

/// Formula-independent valuation of S_n(m) via modular residues: compute
/// S_n(m) mod 2^K at increasing K until the residue is nonzero, then count
/// its trailing zero bits. The closed form is consulted only to pick the
/// starting K (prediction + 8 bits of slack); the answer comes from the
/// residue alone. Throws PrecisionCeilingError if the residue is still zero
/// at max_precision_bits.
Valuation v2_modular(const Nat& m, Exponent n,
                     std::uint64_t max_precision_bits = kDefaultMaxPrecisionBits);

/// Whether m(m+1)/2 divides S_n(m) exactly. Requires odd n (the statement's
/// hypothesis); the divisibility holds for every such m, n.
bool check_prop1(const Nat& m, Exponent n,
                 std::uint64_t budget = kDefaultOracleBudget);

}  // namespace powsum2
