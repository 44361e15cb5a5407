#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sqfib {

using Count = mpz_class;

namespace nt {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

bool is_prime(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);

// Least r >= 1 with a^r = 1 (mod m). Requires gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Exact a^e, throwing BoundExceeded if it does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t a, unsigned e);

// If q = p^k for a prime p returns (p, k), otherwise (0, 0).
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q);

inline Count to_count(std::uint64_t v) {
  Count c;
  mpz_import(c.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return c;
}

Count count_pow(std::uint64_t base, std::uint64_t e);

}  // namespace nt
}  // namespace sqfib
