#include "powsum2/powersum.hpp"

#include <map>
#include <utility>

namespace powsum2 {

namespace {

void require_query(const Nat& m, Exponent n) {
  if (m.is_zero()) throw std::invalid_argument("power sum: m must be >= 1");
  if (n == 0) throw std::invalid_argument("power sum: n must be >= 1");
}

using Memo = std::map<std::pair<mpz_class, std::uint64_t>, mpz_class>;

// Power sum with halving on even arguments and peeling on odd ones.
// Exponent 0 means S_0(a) = a, the number of summands; it appears as the
// i = 0 term of the expansion and nowhere at the surface.
const mpz_class& doubling_rec(const mpz_class& m, std::uint64_t n, Memo& memo) {
  if (auto it = memo.find({m, n}); it != memo.end()) return it->second;

  mpz_class result;
  if (sgn(m) == 0) {
    result = 0;
  } else if (n == 0) {
    result = m;
  } else if (mpz_odd_p(m.get_mpz_t())) {
    mpz_class top;
    mpz_pow_ui(top.get_mpz_t(), m.get_mpz_t(), n);
    result = doubling_rec(m - 1, n, memo) + top;
  } else {
    const mpz_class a = m / 2;
    mpz_pow_ui(result.get_mpz_t(), a.get_mpz_t(), n);  // a^n
    mpz_class inner = 0, coeff, apow;
    for (std::uint64_t i = 0; 2 * i <= n; ++i) {
      mpz_bin_uiui(coeff.get_mpz_t(), n, 2 * i);
      mpz_pow_ui(apow.get_mpz_t(), a.get_mpz_t(), n - 2 * i);
      inner += coeff * apow * doubling_rec(a, 2 * i, memo);
    }
    result += 2 * inner;
  }
  return memo.emplace(std::make_pair(m, n), std::move(result)).first->second;
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t mask) {
  std::uint64_t result = std::uint64_t{1} & mask;
  base &= mask;
  while (exp != 0) {
    if (exp & 1) result = (result * base) & mask;
    base = (base * base) & mask;
    exp >>= 1;
  }
  return result;
}

// sum_{j=1}^{r} j^n mod 2^bits, residues held in a word. r < 2^bits.
std::uint64_t partial_sum_u64(std::uint64_t r, std::uint64_t n,
                              std::uint64_t mask) {
  if (r == 0) return 0;
  std::uint64_t sum = 0;
  for (std::uint64_t j = 1;; ++j) {
    sum = (sum + powmod_u64(j, n, mask)) & mask;
    if (j == r) break;
  }
  return sum;
}

// sum_{j=0}^{2^bits - 1} j^n mod 2^bits: one full period of j -> j^n.
std::uint64_t period_sum_u64(std::uint64_t n, std::uint64_t mask) {
  return partial_sum_u64(mask, n, mask);  // the j = 0 term is 0 for n >= 1
}

mpz_class partial_sum_mpz(const mpz_class& r, std::uint64_t n,
                          const mpz_class& modulus) {
  mpz_class sum = 0, term;
  for (mpz_class j = 1; j <= r; ++j) {
    mpz_powm_ui(term.get_mpz_t(), j.get_mpz_t(), n, modulus.get_mpz_t());
    sum += term;
    sum %= modulus;
  }
  return sum;
}

}  // namespace

Nat oracle_sum(const Nat& m, Exponent n, std::uint64_t budget) {
  require_query(m, n);
  if (!m.fits_u64() || m.to_u64() > budget) {
    throw BudgetExceededError("oracle_sum: m = " + m.str() +
                              " exceeds the iteration budget of " +
                              std::to_string(budget) +
                              " terms; use doubling_sum or the modular path");
  }
  const std::uint64_t limit = m.to_u64();
  mpz_class sum = 0, term;
  for (std::uint64_t j = 1; j <= limit; ++j) {
    mpz_ui_pow_ui(term.get_mpz_t(), j, n);
    sum += term;
  }
  return Nat(std::move(sum));
}

Nat binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("binomial: k > n");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Nat(std::move(r));
}

Nat doubling_sum(const Nat& m, Exponent n) {
  require_query(m, n);
  Memo memo;
  return Nat(doubling_rec(m.raw(), n, memo));
}

ResidueResult modular_sum(const Nat& m, Exponent n,
                          std::uint64_t precision_bits) {
  require_query(m, n);
  if (precision_bits == 0) {
    throw std::invalid_argument("modular_sum: precision must be >= 1");
  }
  const std::uint64_t bits = precision_bits;

  if (bits <= 64) {
    const std::uint64_t mask =
        (bits == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    mpz_class tmp;
    mpz_fdiv_r_2exp(tmp.get_mpz_t(), m.raw().get_mpz_t(), bits);
    const std::uint64_t tail = mpz_get_ui(tmp.get_mpz_t());

    std::uint64_t total = partial_sum_u64(tail, n, mask);

    mpz_class blocks;
    mpz_fdiv_q_2exp(blocks.get_mpz_t(), m.raw().get_mpz_t(), bits);
    if (sgn(blocks) != 0) {
      mpz_fdiv_r_2exp(tmp.get_mpz_t(), blocks.get_mpz_t(), bits);
      const std::uint64_t block_count = mpz_get_ui(tmp.get_mpz_t());
      total = (total + block_count * period_sum_u64(n, mask)) & mask;
    }
    return {Nat(total), bits};
  }

  // Wide path: residues exceed a word. Reached only when the caller asks
  // for more than 64 bits of precision.
  mpz_class modulus = 1;
  modulus <<= static_cast<mp_bitcnt_t>(bits);

  mpz_class tail, blocks;
  mpz_fdiv_r_2exp(tail.get_mpz_t(), m.raw().get_mpz_t(), bits);
  mpz_fdiv_q_2exp(blocks.get_mpz_t(), m.raw().get_mpz_t(), bits);

  mpz_class total = partial_sum_mpz(tail, n, modulus);
  if (sgn(blocks) != 0) {
    blocks %= modulus;
    total += blocks * partial_sum_mpz(modulus - 1, n, modulus);
    total %= modulus;
  }
  return {Nat(std::move(total)), bits};
}

Valuation v2_lemma(Exponent n, std::uint64_t d, const Nat& q) {
  if (n == 0) throw std::invalid_argument("v2_lemma: n must be >= 1");
  if (d == 0) throw std::invalid_argument("v2_lemma: d must be >= 1");
  if (q.even()) throw std::invalid_argument("v2_lemma: q must be odd");
  if (n == 1 || n % 2 == 0) return Valuation::finite(d - 1);
  return Valuation::finite(2 * (d - 1));
}

Valuation v2_closed_form(const Nat& m, Exponent n) {
  require_query(m, n);
  const std::uint64_t base = v2_half_product(m).value();
  if (n == 1 || n % 2 == 0) return Valuation::finite(base);
  return Valuation::finite(2 * base);
}

Valuation v2_modular(const Nat& m, Exponent n,
                     std::uint64_t max_precision_bits) {
  require_query(m, n);
  if (max_precision_bits == 0) {
    throw std::invalid_argument("v2_modular: precision ceiling must be >= 1");
  }
  // The prediction seeds the starting precision and nothing else; the
  // returned value is read off the residue.
  const std::uint64_t predicted = v2_closed_form(m, n).value();
  std::uint64_t bits = predicted + 8;
  if (bits > max_precision_bits) bits = max_precision_bits;

  for (;;) {
    const ResidueResult r = modular_sum(m, n, bits);
    if (!r.residue.is_zero()) return v2(r.residue);
    if (bits >= max_precision_bits) {
      throw PrecisionCeilingError(
          "v2_modular: residue of S_" + std::to_string(n) + "(" + m.str() +
          ") is still zero at " + std::to_string(bits) +
          " bits; raise the ceiling or suspect a bug");
    }
    bits = (bits > max_precision_bits / 2) ? max_precision_bits : bits * 2;
  }
}

bool check_prop1(const Nat& m, Exponent n, std::uint64_t budget) {
  require_query(m, n);
  if (n % 2 == 0) throw std::invalid_argument("check_prop1: n must be odd");
  return divides(triangular(m), oracle_sum(m, n, budget));
}

}  // namespace powsum2
