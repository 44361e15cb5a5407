#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sqfib/audit.hpp"
#include "sqfib/gl_classes.hpp"

namespace sqfib {

/// Everything the class-wise sums need about one class of GL_n(q).
struct ClassStats {
  GLClassData data;
  Count size;
  Count square_roots;  // |{g : g^2 = alpha}| for alpha in the class
  Count order;         // element order
  bool real = false;
};

std::vector<ClassStats> class_stats(unsigned n, std::uint64_t q, unsigned threads = 1);

// Number of g in GL_n(q) with g^M = 1.
Count count_order_dividing(unsigned n, std::uint64_t q, std::uint64_t M, unsigned threads = 1);
Count count_order_exactly(unsigned n, std::uint64_t q, std::uint64_t M, unsigned threads = 1);
Count count_order_dividing(const std::vector<ClassStats>& stats, std::uint64_t M);
Count count_order_exactly(const std::vector<ClassStats>& stats, std::uint64_t M);

/// Truncated power series with exact rational coefficients.
class SeriesCoeffs {
 public:
  explicit SeriesCoeffs(unsigned degree) : c_(degree + 1) {}
  static SeriesCoeffs one(unsigned degree);

  unsigned degree() const { return static_cast<unsigned>(c_.size() - 1); }
  mpq_class& operator[](unsigned i) { return c_[i]; }
  const mpq_class& operator[](unsigned i) const { return c_[i]; }
  SeriesCoeffs operator*(const SeriesCoeffs& o) const;
  SeriesCoeffs pow(std::uint64_t e) const;

 private:
  std::vector<mpq_class> c_;
};

// Same count from the generating function in z; needs gcd(M, q) = 1.
Count count_unity_roots_gf(unsigned n, std::uint64_t q, std::uint64_t M);

Count real_class_count_direct(unsigned n, std::uint64_t q, unsigned threads = 1);
// |{(g, h) : g^2 h^2 = 1}|.
Count s2_cardinality(unsigned n, std::uint64_t q, unsigned threads = 1);
Count real_class_count_ms(unsigned n, std::uint64_t q, unsigned threads = 1);
Count s2_cardinality(const std::vector<ClassStats>& stats);

// Reading of c_t in the four-set decomposition: c_2 either counts elements
// of order exactly 2 or all g with g^2 = 1; c_4 is always the exact count.
enum class C2Convention { ExactOrder, OrderDividing };
std::string to_string(C2Convention c);

mpq_class real_class_count_theorem(unsigned n, std::uint64_t q, C2Convention convention, unsigned threads = 1);
mpq_class real_class_count_theorem(const std::vector<ClassStats>& stats, std::uint64_t q, unsigned n,
                                   C2Convention convention);

AuditReport audit_real_counts(unsigned n, std::uint64_t q, bool with_oracle = false, unsigned threads = 1);

}  // namespace sqfib
