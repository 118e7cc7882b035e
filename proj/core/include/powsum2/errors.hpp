#pragma once

#include <stdexcept>

namespace powsum2 {

/// The direct summation path refuses inputs beyond its iteration budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The modular valuation saw a zero residue at its precision ceiling.
/// This never happens for correct code; it would mean a bug or a genuine
/// counterexample to the closed form.
class PrecisionCeilingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two methods that must agree did not.
class DiscrepancyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace powsum2
