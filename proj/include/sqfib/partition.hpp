#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqfib/numtheory.hpp"

namespace sqfib {

inline constexpr unsigned kMaxPartitionWeight = 64;

/// Integer partition in multiplicity form 1^{m_1} 2^{m_2} ...
///
/// Stored as (part, multiplicity) pairs with strictly increasing parts and
/// positive multiplicities.
class Partition {
 public:
  struct Term {
    unsigned part = 0;
    unsigned mult = 0;
    friend auto operator<=>(const Term&, const Term&) = default;
  };

  Partition() = default;
  explicit Partition(std::vector<Term> terms);
  // From a multiset of parts in any order.
  static Partition from_parts(const std::vector<unsigned>& parts);
  // "1^2+3^4"; a bare "a" means a^1. The empty string is the empty partition.
  static Partition parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  unsigned weight() const;
  unsigned multiplicity(unsigned part) const;
  unsigned largest_part() const { return terms_.empty() ? 0 : terms_.back().part; }
  // Conjugate partition as a weakly decreasing list of parts.
  std::vector<unsigned> conjugate_parts() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<Term> terms_;
};

// All partitions of n, ascending lex order on (m_1, m_2, ..., m_n).
std::vector<Partition> partitions_of(unsigned n);

// Number of partitions p(n).
Count partition_count(unsigned n);

// d * (2 sum_{u<v} a_u m_u m_v + sum_j (a_j - 1) m_j^2), parts a increasing.
Count gamma_exponent(const Partition& lambda, unsigned d);
// d * (sum_i (lambda'_i)^2 - sum_j m_j^2).
Count gamma_exponent_conjugate(const Partition& lambda, unsigned d);

unsigned distinct_part_count(const Partition& lambda);

// Every multiplicity halved; nullopt if any multiplicity is odd.
std::optional<Partition> halve_multiplicities(const Partition& lambda);
Partition double_multiplicities(const Partition& lambda);
// Multiplicities added part by part.
Partition merge(const Partition& a, const Partition& b);

}  // namespace sqfib
