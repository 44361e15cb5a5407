#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqfib/field.hpp"

namespace sqfib {

inline constexpr int kMaxPolyDegree = 64;

/// Univariate polynomial over a finite field, constant term first.
///
/// Coefficient vectors are kept trimmed, so the zero polynomial has no
/// coefficients and degree -1. Ordering is by degree, then lexicographic on
/// the coefficient vector (constant term most significant).
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly zero(FieldPtr field) { return Poly(std::move(field), {}); }
  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, std::size_t degree);
  static Poly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }
  // x - a
  static Poly linear(FieldPtr field, Elem a);

  // Comma-separated element indices, constant term first ("2,2,1").
  static Poly parse(FieldPtr field, std::string_view text);
  std::string to_string() const;
  // Human-readable form such as "x^2+2x+2" (element indices as coefficients).
  std::string pretty() const;

  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem constant_term() const { return coeff(0); }

  Elem eval(Elem a) const;
  Poly monic() const;
  Poly derivative() const;
  Poly scaled(Elem c) const;
  Poly shifted(std::size_t k) const;  // multiply by x^k

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, const Count& e, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

}  // namespace sqfib
