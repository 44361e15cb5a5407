#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sqfib/numtheory.hpp"

namespace sqfib {

// A field element is its index sum_i c_i p^i, where c_0, c_1, ... are the
// coordinates in the power basis of F_p[w]/(modulus) (constant term first).
// For prime fields this is just the residue 0..p-1.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20U;

/// Finite field F_q of odd order q = p^k.
///
/// Instances are interned: make(p, k) returns the same object for equal
/// arguments, so fields compare by pointer. For k > 1 the field is built as
/// F_p[w]/(m) where m is the lexicographically smallest monic irreducible of
/// degree k, coefficients compared constant term first.
class Field {
 public:
  static FieldPtr make(std::uint64_t p, unsigned k = 1);
  static FieldPtr of_order(std::uint64_t q);
  // Accepts "p^k" or a plain prime power "q".
  static FieldPtr parse(std::string_view text);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  // Defining polynomial over F_p (constant term first); empty when k == 1.
  const std::vector<Elem>& modulus() const { return modulus_; }
  std::string name() const;

  FieldPtr prime_field() const;
  bool has_square_order() const { return k_ % 2 == 0; }
  // sqrt(q); requires has_square_order().
  std::uint32_t root_order() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem pow(Elem a, const Count& e) const;

  // Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const;
  // Fixed generator of the multiplicative group; exp(i) = generator^i.
  Elem generator() const { return exp_[1]; }
  Elem exp(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }
  std::uint32_t log(Elem a) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elem a) const;

  // a -> a^sqrt(q), the involution of F_{r^2} over F_r. Requires square order.
  Elem conjugate(Elem a) const;
  // a -> a^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }
  // Inverse of the absolute Frobenius: a -> a^(p^(k-1)).
  Elem frobenius_inverse(Elem a) const;

  bool contains(Elem a) const { return a < q_; }

  Field(std::uint32_t p, unsigned k, std::vector<Elem> modulus);

 private:
  Elem slow_mul(Elem a, Elem b) const;
  Elem digit_add(Elem a, Elem b, bool subtract) const;
  void build_tables();

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;           // length 2(q-1) to skip a reduction in mul
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Elem> add_table_;     // q*q entries when q is small and k > 1
};

}  // namespace sqfib
