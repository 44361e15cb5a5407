#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sqfib/numtheory.hpp"
#include "sqfib/poly.hpp"

namespace sqfib {

struct ButlerEntry {
  std::uint64_t degree = 0;
  std::uint64_t count = 0;
  std::uint64_t root_order = 0;
  std::uint64_t e = 0;  // the divisor of m1 this entry comes from
  friend bool operator==(const ButlerEntry&, const ButlerEntry&) = default;
};

/// Predicted factorization shape of f(x^m) for irreducible f with roots of
/// order t: m = m1 * m2 with gcd(m1, t) = 1 and every prime of m2 dividing t;
/// for each e | m1 there are d m2 phi(e) / M(e m2 t; q) factors of degree
/// M(e m2 t; q), with roots of order e m2 t.
struct ButlerProfile {
  std::uint64_t m = 0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::uint64_t t = 0;
  std::vector<ButlerEntry> entries;  // ascending e

  // degree -> total number of factors of that degree
  std::map<std::uint64_t, std::uint64_t> degree_counts() const;
};

ButlerProfile butler_profile(const Poly& f, unsigned m);

// The same shape read off a direct factorization of f(x^m): degree -> count.
std::map<std::uint64_t, std::uint64_t> factored_profile(const Poly& f, unsigned m);

struct TwoPower {
  Poly f1;  // f1 < f2
  Poly f2;
};
struct SkewTwoPower {
  Poly F;  // f(x^2), irreducible
};
using TwoPowerClass = std::variant<TwoPower, SkewTwoPower>;

// Splits f(x^2) for monic irreducible f != x over a field of odd order.
// Either f(x^2) is irreducible or it is a product of two distinct
// irreducibles of degree deg f; anything else throws InvariantViolation.
TwoPowerClass classify2(const Poly& f);
inline bool is_two_power(const TwoPowerClass& c) { return std::holds_alternative<TwoPower>(c); }

bool is_self_reciprocal(const Poly& f);
bool is_self_conjugate(const Poly& f);

enum class StarClass { Power, SkewPower, Neither };
std::string to_string(StarClass c);

// For self-reciprocal f: skew if f(x^2) is irreducible; power if f(x^2) has a
// self-reciprocal irreducible factor of degree deg f; otherwise neither.
StarClass classify2_star(const Poly& f);
// Same with self-conjugacy (f = f~) over a field of square order.
StarClass classify2_tilde(const Poly& f);

}  // namespace sqfib
