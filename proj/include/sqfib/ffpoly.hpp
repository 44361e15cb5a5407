#pragma once

#include <cstdint>
#include <vector>

#include "sqfib/field.hpp"
#include "sqfib/numtheory.hpp"
#include "sqfib/poly.hpp"

namespace sqfib {

struct Factor {
  Poly poly;
  unsigned multiplicity = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Rabin's test: x^(q^d) = x mod f and gcd(x^(q^(d/r)) - x, f) = 1 for all
// primes r | d.
bool is_irreducible(const Poly& f);

// Monic irreducible factorization: squarefree split, distinct-degree split,
// then Cantor-Zassenhaus with a fixed seed. Sorted by (degree, lex).
std::vector<Factor> factorize(const Poly& f);

// All monic irreducibles of degree d (x included when d == 1), lex-sorted.
std::vector<Poly> monic_irreducibles(const FieldPtr& field, unsigned d);

// (1/d) sum_{e | d} mu(e) q^(d/e)
Count irreducible_count(std::uint64_t q, unsigned d);

// f(x^m)
Poly substitute_power(const Poly& f, unsigned m);

// f*(x) = f(0)^{-1} x^d f(1/x)
Poly reciprocal(const Poly& f);

// f~(x) = conj(f(0))^{-1} x^d conj(f)(1/x) over a field of square order.
Poly conj_reciprocal(const Poly& f);

// Multiplicative order of a root of the monic irreducible f != x.
Count root_order(const Poly& f);
std::uint64_t root_order_u64(const Poly& f);

// M(s; q): least r >= 1 with q^r = 1 mod s.
Count mult_order(std::uint64_t s, std::uint64_t q);

// Minimal polynomial over the coefficient field of (element mod modulus) in
// F[x]/(modulus).
Poly minimal_polynomial_mod(const Poly& element, const Poly& modulus);

}  // namespace sqfib
