#include <doctest.h>

#include "powsum2/errors.hpp"
#include "powsum2/moser.hpp"
#include "powsum2/powersum.hpp"

#include "test_support.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

using namespace powsum2;
using testsupport::random_positive_nat;

namespace {

MoserCandidate cand(std::uint64_t m, Exponent n, std::uint64_t a) {
  MoserCandidate c;
  c.m = Nat(m);
  c.n = n;
  c.a = Nat(a);
  return c;
}

}  // namespace

TEST_CASE("check_candidate: spot values") {
  CHECK(check_candidate(cand(3, 1, 1)));    // 1 + 2 = 3
  CHECK(check_candidate(cand(5, 1, 2)));    // 1 + 2 + 3 + 4 = 10
  CHECK(check_candidate(cand(9, 1, 4)));    // 36 = 4 * 9
  CHECK(!check_candidate(cand(3, 1, 2)));
  CHECK(!check_candidate(cand(4, 2, 1)));   // 14 != 16
  CHECK(!check_candidate(cand(6, 3, 1)));
  CHECK_THROWS_AS(check_candidate(cand(1, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(check_candidate(cand(5, 0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(check_candidate(cand(5, 1, 0)), std::invalid_argument);
}

TEST_CASE("implied_multiplier: recovers a exactly when it exists") {
  CHECK(implied_multiplier(Nat(3), 1) == Nat(1));
  CHECK(implied_multiplier(Nat(5), 1) == Nat(2));
  CHECK(implied_multiplier(Nat(101), 1) == Nat(50));
  CHECK(!implied_multiplier(Nat(4), 1));    // S_1(3) = 6, and 4 does not divide 6
  CHECK(!implied_multiplier(Nat(4), 2));    // S_2(3) = 14
  CHECK(!implied_multiplier(Nat(2), 1));    // S_1(1) = 1 < 2 forces a = 0
  CHECK_THROWS_AS(implied_multiplier(Nat(1), 1), std::invalid_argument);

  SUBCASE("consistency with check_candidate over a small grid") {
    for (std::uint64_t m = 2; m <= 40; ++m) {
      for (Exponent n = 1; n <= 4; ++n) {
        const auto a = implied_multiplier(Nat(m), n);
        if (a) {
          MoserCandidate c;
          c.m = Nat(m);
          c.n = n;
          c.a = *a;
          CHECK(check_candidate(c));
        } else {
          // No multiplier means no a >= 1 can work: the division either
          // leaves a remainder or the quotient collapses to zero.
          const Nat sum = oracle_sum(Nat(m - 1), n);
          CHECK((!divides(pow(Nat(m), n), sum) || sum < pow(Nat(m), n)));
        }
      }
    }
  }
}

TEST_CASE("parity_obstruction: spot reports") {
  const ObstructionReport r8 = parity_obstruction(Nat(8), 3);
  CHECK(r8.d == 3);
  CHECK(r8.needed == 9);
  CHECK(r8.available == 4);
  CHECK(r8.blocked);

  const ObstructionReport r2 = parity_obstruction(Nat(2), 2);
  CHECK(r2.d == 1);
  CHECK(r2.needed == 2);
  CHECK(r2.available == 0);
  CHECK(r2.blocked);

  CHECK_THROWS_AS(parity_obstruction(Nat(7), 2), std::invalid_argument);
  CHECK_THROWS_AS(parity_obstruction(Nat(8), 1), std::invalid_argument);
}

TEST_CASE("parity_obstruction: blocks every even m for every n >= 2") {
  // needed = n*d >= 2d > 2(d-1) = available, so the report must always block.
  std::mt19937_64 rng(0x5eed0201);
  for (int i = 0; i < 300; ++i) {
    Nat m = random_positive_nat(rng, 64);
    if (m.odd()) m = m + 1;
    const Exponent n = 2 + rng() % 40;
    const ObstructionReport r = parity_obstruction(m, n);
    CHECK(r.blocked);
    CHECK(r.needed == r.d * n);
    CHECK(r.available == 2 * (r.d - 1));
  }
}

TEST_CASE("parity_obstruction: obstruction matches the exact arithmetic") {
  // Where the oracle can reach, a blocked cell must really have no solution:
  // the valuation of the left side differs from that of any a * m^n.
  for (std::uint64_t m = 2; m <= 64; m += 2) {
    for (Exponent n = 2; n <= 5; ++n) {
      CHECK(parity_obstruction(Nat(m), n).blocked);
      CHECK(!implied_multiplier(Nat(m), n).has_value());
    }
  }
}

TEST_CASE("trivial_solution: the n = 1 family") {
  for (std::uint64_t a = 1; a <= 200; ++a) {
    const MoserCandidate c = trivial_solution(Nat(a));
    CHECK(c.m == Nat(2 * a + 1));
    CHECK(c.n == 1);
    CHECK(c.a == Nat(a));
    CHECK(check_candidate(c));
  }
  CHECK_THROWS_AS(trivial_solution(Nat(0)), std::invalid_argument);
}

TEST_CASE("search: finds exactly the trivial family at small scale") {
  const auto found = search(Nat(10), 1);
  REQUIRE(found.size() == 4);
  for (std::size_t i = 0; i < found.size(); ++i) {
    const std::uint64_t a = i + 1;
    CHECK(found[i].m == Nat(2 * a + 1));
    CHECK(found[i].n == 1);
    CHECK(found[i].a == Nat(a));
  }
}

TEST_CASE("search: higher exponents add nothing and no even m appears") {
  const auto found = search(Nat(40), 5);
  CHECK(found.size() == 19);  // a = 1..19 gives m = 3, 5, ..., 39
  for (const auto& c : found) {
    CHECK(c.m.odd());
    CHECK(c.n == 1);
    CHECK(check_candidate(c));
  }
}

TEST_CASE("search: results are ordered and thread count does not matter") {
  const auto reference = search(Nat(80), 3);
  for (const unsigned jobs : {2u, 3u, 7u}) {
    SearchOptions opts;
    opts.jobs = jobs;
    const auto got = search(Nat(80), 3, opts);
    REQUIRE(got.size() == reference.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].m == reference[i].m);
      CHECK(got[i].n == reference[i].n);
      CHECK(got[i].a == reference[i].a);
    }
  }
}

TEST_CASE("search: pruning verification finds no false discards") {
  SearchOptions opts;
  opts.verify_pruning = true;
  CHECK_NOTHROW(search(Nat(60), 4, opts));
}

TEST_CASE("search: degenerate ranges") {
  CHECK(search(Nat(2), 6).empty());
  CHECK_THROWS_AS(search(Nat(1), 3), std::invalid_argument);
  CHECK_THROWS_AS(search(Nat(10), 0), std::invalid_argument);
  SearchOptions tight;
  tight.budget = 5;
  CHECK_THROWS_AS(search(Nat(100), 2, tight), BudgetExceededError);
}
