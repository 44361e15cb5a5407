#include "sqfib/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sqfib/errors.hpp"

namespace sqfib::nt {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  a %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  for (;;) {
    std::uint64_t y = rng() % (n - 1) + 1;
    const std::uint64_t c = rng() % (n - 1) + 1;
    const std::uint64_t m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (std::uint64_t sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
    if (n % sp == 0) {
      out.push_back(sp);
      factor_into(n / sp, out, rng);
      return;
    }
  }
  const std::uint64_t d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  require(n >= 1, "factor: n must be positive");
  std::vector<std::uint64_t> primes;
  std::mt19937_64 rng(0x5eed);
  factor_into(n, primes, rng);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, unsigned>> result;
  for (std::uint64_t pr : primes) {
    if (!result.empty() && result.back().first == pr) {
      ++result.back().second;
    } else {
      result.emplace_back(pr, 1);
    }
  }
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds{1};
  for (auto [pr, e] : factor(n)) {
    const std::size_t base = ds.size();
    std::uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= pr;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [pr, e] : factor(n)) phi = phi / pr * (pr - 1);
  return phi;
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (auto [pr, e] : factor(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  require(m >= 1, "multiplicative_order: modulus must be positive");
  require(std::gcd(a % m, m) == 1 || m == 1, "multiplicative_order: gcd(a, m) != 1");
  if (m == 1) return 1;
  // The order divides Carmichael's lambda(m), which divides phi(m).
  std::uint64_t ord = euler_phi(m);
  for (auto [pr, e] : factor(ord)) {
    (void)e;
    while (ord % pr == 0 && powmod(a, ord / pr, m) == 1) ord /= pr;
  }
  return ord;
}

std::uint64_t checked_pow(std::uint64_t a, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (a != 0 && r > (std::uint64_t{1} << 63U) / a) throw BoundExceeded("integer power exceeds 63 bits");
    r *= a;
  }
  return r;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  auto fs = factor(q);
  if (fs.size() != 1) return {0, 0};
  return fs.front();
}

Count count_pow(std::uint64_t base, std::uint64_t e) {
  Count r;
  mpz_pow_ui(r.get_mpz_t(), to_count(base).get_mpz_t(), e);
  return r;
}

}  // namespace sqfib::nt
