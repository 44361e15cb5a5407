#include <set>

#include "doctest.h"
#include "sqfib/errors.hpp"
#include "sqfib/partition.hpp"

using namespace sqfib;

namespace {

// Independent generator: weakly decreasing part lists.
void gen(unsigned rest, unsigned max_part, std::vector<unsigned>& cur, std::set<std::vector<unsigned>>& out) {
  if (rest == 0) {
    out.insert(cur);
    return;
  }
  for (unsigned p = std::min(rest, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen(rest - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<unsigned> parts_desc(const Partition& l) {
  std::vector<unsigned> v;
  for (auto it = l.terms().rbegin(); it != l.terms().rend(); ++it) v.insert(v.end(), it->mult, it->part);
  return v;
}

}  // namespace

TEST_CASE("partitions_of examples") {
  auto p0 = partitions_of(0);
  REQUIRE(p0.size() == 1);
  CHECK(p0[0].empty());
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(7).size() == 15);
  CHECK(partition_count(7) == 15);
  CHECK(partition_count(64) == Count("1741630"));
  CHECK_THROWS_AS(partitions_of(65), BoundExceeded);
}

TEST_CASE("partitions_of matches an independent generator and is sorted by multiplicity vectors") {
  for (unsigned n = 0; n <= 14; ++n) {
    std::set<std::vector<unsigned>> expect;
    std::vector<unsigned> cur;
    gen(n, n, cur, expect);
    auto got = partitions_of(n);
    std::set<std::vector<unsigned>> seen;
    for (const auto& l : got) {
      CHECK(l.weight() == n);
      seen.insert(parts_desc(l));
    }
    CHECK(got.size() == expect.size());
    CHECK(seen == expect);
    CHECK(partition_count(n) == expect.size());
    for (std::size_t i = 1; i < got.size(); ++i) {
      std::vector<unsigned> a, b;
      for (unsigned j = 1; j <= n; ++j) {
        a.push_back(got[i - 1].multiplicity(j));
        b.push_back(got[i].multiplicity(j));
      }
      CHECK(a < b);
    }
  }
}

TEST_CASE("text format") {
  auto l = Partition::parse("1^2+3^4");
  CHECK(l.weight() == 14);
  CHECK(l.multiplicity(1) == 2);
  CHECK(l.multiplicity(3) == 4);
  CHECK(l.to_string() == "1^2+3^4");
  CHECK(Partition::parse("2").to_string() == "2^1");
  CHECK(Partition::parse("3^1+1^1") == Partition::parse("1+3"));
  CHECK(Partition::parse("").empty());
  for (const char* bad : {"0^1", "1^0", "a", "1^", "^2", "1^2+", "1^2++3", "-1"}) {
    CHECK_THROWS_AS(Partition::parse(bad), InvalidInput);
  }
  CHECK(Partition::from_parts({2, 1, 2, 5}).to_string() == "1^1+2^2+5^1");
}

TEST_CASE("gamma_exponent examples") {
  CHECK(gamma_exponent(Partition::parse("2"), 1) == 1);
  CHECK(gamma_exponent(Partition::parse("1+2"), 1) == 3);
  CHECK(gamma_exponent(Partition::parse("1^2"), 1) == 0);
  CHECK_THROWS_AS(gamma_exponent(Partition(), 1), InvalidInput);
}

TEST_CASE("gamma forms agree and scale with d") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (const auto& l : partitions_of(n)) {
      CHECK(gamma_exponent(l, 1) == gamma_exponent_conjugate(l, 1));
      if (n <= 8) {
        for (unsigned d = 1; d <= 4; ++d) CHECK(gamma_exponent(l, d) == d * gamma_exponent(l, 1));
      }
    }
  }
}

TEST_CASE("distinct_part_count") {
  CHECK(distinct_part_count(Partition::parse("1^2")) == 1);
  CHECK(distinct_part_count(Partition::from_parts({1, 2, 2, 5})) == 3);
  CHECK(distinct_part_count(Partition()) == 0);
}

TEST_CASE("halve and double multiplicities") {
  CHECK(*halve_multiplicities(Partition::parse("1^2")) == Partition::parse("1"));
  CHECK(*halve_multiplicities(Partition::parse("1^2+3^4")) == Partition::parse("1+3^2"));
  CHECK_FALSE(halve_multiplicities(Partition::parse("2^3")).has_value());
  for (unsigned n = 0; n <= 12; ++n) {
    for (const auto& l : partitions_of(n)) {
      if (auto h = halve_multiplicities(l)) CHECK(double_multiplicities(*h) == l);
      CHECK(*halve_multiplicities(double_multiplicities(l)) == l);
    }
  }
  CHECK(merge(Partition::parse("1+2"), Partition::parse("2+3")) == Partition::parse("1+2^2+3"));
}

TEST_CASE("conjugate partition") {
  CHECK(Partition::parse("1+3^2").conjugate_parts() == std::vector<unsigned>{3, 2, 2});
  for (unsigned n = 1; n <= 10; ++n) {
    for (const auto& l : partitions_of(n)) {
      auto c = Partition::from_parts(l.conjugate_parts());
      CHECK(Partition::from_parts(c.conjugate_parts()) == l);
    }
  }
}
