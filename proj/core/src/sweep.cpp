#include "powsum2/sweep.hpp"

#include <exception>
#include <thread>
#include <vector>

namespace powsum2 {

namespace {

Valuation biased(const Valuation& v, std::int64_t bias) {
  if (bias == 0 || v.is_infinite()) return v;
  const std::int64_t shifted = static_cast<std::int64_t>(v.value()) + bias;
  return Valuation::finite(shifted < 0 ? 0 : static_cast<std::uint64_t>(shifted));
}

}  // namespace

SweepReport sweep_verify(std::uint64_t m_max, Exponent n_max,
                         const SweepOptions& options) {
  if (m_max == 0) throw std::invalid_argument("sweep_verify: m_max must be >= 1");
  if (n_max == 0) throw std::invalid_argument("sweep_verify: n_max must be >= 1");

  auto scan = [&](std::uint64_t lo, std::uint64_t hi,
                  std::vector<SweepDiscrepancy>& bad) {
    for (std::uint64_t mv = lo; mv < hi; ++mv) {
      const Nat m(mv);
      for (Exponent n = 1; n <= n_max; ++n) {
        const Nat exact = oracle_sum(m, n, options.budget);
        const Valuation truth = v2(exact);

        const Nat doubled = doubling_sum(m, n);
        if (doubled != exact) {
          bad.push_back({mv, n,
                         "doubling_sum = " + doubled.str() +
                             " but oracle_sum = " + exact.str()});
          continue;
        }
        const Valuation formula =
            biased(v2_closed_form(m, n), options.formula_bias);
        if (formula != truth) {
          bad.push_back({mv, n,
                         "closed form gives " + formula.str() +
                             " but the oracle sum has valuation " +
                             truth.str()});
          continue;
        }
        const Valuation modular = v2_modular(m, n, options.max_precision_bits);
        if (modular != truth) {
          bad.push_back({mv, n,
                         "modular path gives " + modular.str() +
                             " but the oracle sum has valuation " +
                             truth.str()});
        }
      }
    }
  };

  const unsigned jobs = options.jobs == 0 ? 1 : options.jobs;
  std::vector<std::vector<SweepDiscrepancy>> partial(jobs);

  if (jobs == 1 || m_max < jobs) {
    scan(1, m_max + 1, partial[0]);
  } else {
    std::vector<std::exception_ptr> failures(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t lo = 1 + m_max * w / jobs;
      const std::uint64_t hi = 1 + m_max * (w + 1) / jobs;
      workers.emplace_back([&, w, lo, hi] {
        try {
          scan(lo, hi, partial[w]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  SweepReport report;
  report.checked = m_max * n_max;
  for (auto& block : partial) {
    for (auto& d : block) {
      if (report.discrepancies == 0) report.first = std::move(d);
      ++report.discrepancies;
    }
  }
  return report;
}

}  // namespace powsum2
