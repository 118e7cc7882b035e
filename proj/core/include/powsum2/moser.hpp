#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "powsum2/nat.hpp"
#include "powsum2/powersum.hpp"

namespace powsum2 {

/// A candidate solution of 1^n + 2^n + ... + (m-1)^n = a * m^n.
struct MoserCandidate {
  Nat m;  // >= 2 so the left side is nonempty
  Exponent n = 1;
  Nat a;  // >= 1
};

/// Why an even m cannot solve the equation for n >= 2: a solution would
/// force v2(S_n(m)) = n*d with d = v2(m), but the valuation can never
/// exceed 2(d-1).
struct ObstructionReport {
  std::uint64_t d = 0;          // v2(m)
  std::uint64_t needed = 0;     // n * d
  std::uint64_t available = 0;  // 2 * (d - 1)
  bool blocked = false;         // needed > available
};

/// Exact check of the equation for one candidate.
bool check_candidate(const MoserCandidate& c,
                     std::uint64_t budget = kDefaultOracleBudget);

/// The multiplier a forced by (m, n), when it exists: the equation fixes
/// a = S_n(m-1) / m^n, so a is returned iff that quotient is an integer
/// >= 1.
std::optional<Nat> implied_multiplier(const Nat& m, Exponent n,
                                      std::uint64_t budget = kDefaultOracleBudget);

/// The parity obstruction for even m and n >= 2. blocked is true for every
/// such input: needed = n*d >= 2d always beats available = 2(d-1).
ObstructionReport parity_obstruction(const Nat& m, Exponent n);

/// The n = 1 family: 1 + 2 + ... + 2a = a(2a+1), i.e. (m, n, a) = (2a+1, 1, a).
MoserCandidate trivial_solution(const Nat& a);

struct SearchOptions {
  std::uint64_t budget = kDefaultOracleBudget;
  /// Cross-check every obstruction-based discard against the exact check;
  /// a disagreement throws DiscrepancyError.
  bool verify_pruning = false;
  unsigned jobs = 1;
};

/// Every (m, n, a) with 2 <= m <= m_max, 1 <= n <= n_max solving the
/// equation, in ascending (m, n) order. Even m with n >= 2 are discarded
/// via the parity obstruction before any exact arithmetic.
std::vector<MoserCandidate> search(const Nat& m_max, Exponent n_max,
                                   const SearchOptions& options = {});

}  // namespace powsum2
