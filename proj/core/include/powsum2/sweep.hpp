#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "powsum2/nat.hpp"
#include "powsum2/powersum.hpp"

namespace powsum2 {

struct SweepOptions {
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultOracleBudget;
  std::uint64_t max_precision_bits = kDefaultMaxPrecisionBits;
  /// Fault-injection hook for exercising the discrepancy detector: offsets
  /// the closed-form value before comparison. Zero in all real use.
  std::int64_t formula_bias = 0;
};

struct SweepDiscrepancy {
  std::uint64_t m = 0;
  Exponent n = 0;
  std::string detail;
};

struct SweepReport {
  std::uint64_t checked = 0;
  std::uint64_t discrepancies = 0;
  std::optional<SweepDiscrepancy> first;
};

/// Runs the full cross-verification grid over 1 <= m <= m_max,
/// 1 <= n <= n_max. Per cell: the doubling recursion must reproduce the
/// oracle sum exactly, and the closed-form and modular valuations must both
/// equal the valuation of the oracle sum. Any mismatch would falsify the
/// underlying formula, so discrepancies are reported with their inputs
/// verbatim.
SweepReport sweep_verify(std::uint64_t m_max, Exponent n_max,
                         const SweepOptions& options = {});

}  // namespace powsum2
