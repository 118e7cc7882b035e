#include "powsum2/moser.hpp"

#include <exception>
#include <limits>
#include <thread>

#include "powsum2/errors.hpp"
#include "powsum2/valuation.hpp"

namespace powsum2 {

namespace {

void require_moser(const Nat& m, Exponent n) {
  if (m < Nat(2)) throw std::invalid_argument("moser: m must be >= 2");
  if (n == 0) throw std::invalid_argument("moser: n must be >= 1");
}

}  // namespace

bool check_candidate(const MoserCandidate& c, std::uint64_t budget) {
  require_moser(c.m, c.n);
  if (c.a.is_zero()) throw std::invalid_argument("moser: a must be >= 1");
  return oracle_sum(c.m - 1, c.n, budget) == c.a * pow(c.m, c.n);
}

std::optional<Nat> implied_multiplier(const Nat& m, Exponent n,
                                      std::uint64_t budget) {
  require_moser(m, n);
  const Nat sum = oracle_sum(m - 1, n, budget);
  const auto [quotient, remainder] = divmod(sum, pow(m, n));
  if (!remainder.is_zero() || quotient.is_zero()) return std::nullopt;
  return quotient;
}

ObstructionReport parity_obstruction(const Nat& m, Exponent n) {
  if (m.is_zero() || m.odd()) {
    throw std::invalid_argument("parity_obstruction: m must be even");
  }
  if (n < 2) {
    throw std::invalid_argument(
        "parity_obstruction: n must be >= 2 (n = 1 is the trivial family)");
  }
  const std::uint64_t d = v2(m).value();  // >= 1 for even m
  if (d != 0 && n > std::numeric_limits<std::uint64_t>::max() / d) {
    throw std::overflow_error("parity_obstruction: n * d overflows");
  }
  ObstructionReport report;
  report.d = d;
  report.needed = n * d;
  report.available = 2 * (d - 1);
  report.blocked = report.needed > report.available;
  return report;
}

MoserCandidate trivial_solution(const Nat& a) {
  if (a.is_zero()) throw std::invalid_argument("trivial_solution: a must be >= 1");
  return {a + a + 1, 1, a};
}

std::vector<MoserCandidate> search(const Nat& m_max, Exponent n_max,
                                   const SearchOptions& options) {
  require_moser(m_max, n_max);
  if (!m_max.fits_u64() || m_max.to_u64() > options.budget) {
    throw BudgetExceededError("search: m_max = " + m_max.str() +
                              " exceeds the iteration budget of " +
                              std::to_string(options.budget));
  }
  const std::uint64_t last = m_max.to_u64();

  auto scan = [&](std::uint64_t lo, std::uint64_t hi,
                  std::vector<MoserCandidate>& out) {
    for (std::uint64_t mv = lo; mv < hi; ++mv) {
      const Nat m(mv);
      for (Exponent n = 1; n <= n_max; ++n) {
        if (mv % 2 == 0 && n >= 2) {
          if (parity_obstruction(m, n).blocked) {
            if (options.verify_pruning && implied_multiplier(m, n, options.budget)) {
              throw DiscrepancyError(
                  "parity obstruction discarded a real solution at m=" +
                  m.str() + " n=" + std::to_string(n));
            }
            continue;
          }
        }
        if (auto a = implied_multiplier(m, n, options.budget)) {
          out.push_back({m, n, std::move(*a)});
        }
      }
    }
  };

  const unsigned jobs = options.jobs == 0 ? 1 : options.jobs;
  if (jobs == 1 || last < 2 + jobs) {
    std::vector<MoserCandidate> found;
    scan(2, last + 1, found);
    return found;
  }

  // Contiguous m-blocks per worker; concatenation in block order keeps the
  // output in ascending (m, n).
  const std::uint64_t span = last - 1;  // number of m values in [2, last]
  std::vector<std::vector<MoserCandidate>> partial(jobs);
  std::vector<std::exception_ptr> failures(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t lo = 2 + span * w / jobs;
    const std::uint64_t hi = 2 + span * (w + 1) / jobs;
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

  std::vector<MoserCandidate> found;
  for (auto& block : partial) {
    for (auto& c : block) found.push_back(std::move(c));
  }
  return found;
}

}  // namespace powsum2
