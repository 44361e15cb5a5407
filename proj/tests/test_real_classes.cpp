#include <map>

#include "doctest.h"
#include "sqfib/errors.hpp"
#include "sqfib/oracle.hpp"
#include "sqfib/real_classes.hpp"

using namespace sqfib;

TEST_CASE("count_order_dividing and count_order_exactly examples") {
  CHECK(count_order_dividing(2, 3, 2) == 14);
  CHECK(count_order_dividing(2, 3, 4) == 20);
  for (unsigned q : {3u, 5u, 7u, 9u, 11u}) CHECK(count_order_dividing(1, q, 2) == 2);
  CHECK(count_order_exactly(2, 3, 2) == 13);
  CHECK(count_order_exactly(2, 3, 4) == 6);
  CHECK(count_order_exactly(1, 3, 2) == 1);
  // unipotent elements of GL_2(3) have order 3
  CHECK(count_order_exactly(2, 3, 3) == 8);
}

TEST_CASE("element orders summed over classes match the oracle") {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 5}, {3, 3}}) {
    auto table = oracle::ElementTable::enumerate(oracle::GroupSpec::make(oracle::GroupKind::GL, n, q));
    std::map<std::uint64_t, std::uint64_t> by_order;
    const Matrix I = Matrix::identity(table.spec().field, n);
    for (std::size_t i = 0; i < table.size(); ++i) {
      Matrix g = table.element(i), x = g;
      std::uint64_t k = 1;
      while (!(x == I)) {
        x = x * g;
        ++k;
      }
      ++by_order[k];
    }
    auto stats = class_stats(n, q);
    for (auto [order, count] : by_order) CHECK(count_order_exactly(stats, order) == count);
  }
}

TEST_CASE("series arithmetic") {
  SeriesCoeffs s(4);
  s[0] = 1;
  s[1] = 1;
  auto c = s.pow(3);
  CHECK(c[0] == 1);
  CHECK(c[1] == 3);
  CHECK(c[2] == 3);
  CHECK(c[3] == 1);
  CHECK(c[4] == 0);
  CHECK(s.pow(0)[0] == 1);
}

TEST_CASE("count_unity_roots_gf") {
  CHECK(count_unity_roots_gf(2, 3, 2) == 14);
  for (unsigned n = 1; n <= 4; ++n) CHECK(count_unity_roots_gf(n, 5, 1) == 1);
  CHECK(count_unity_roots_gf(3, 3, 2) == count_order_dividing(3, 3, 2));
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned q : {3u, 5u}) {
      for (unsigned M : {2u, 4u}) CHECK(count_unity_roots_gf(n, q, M) == count_order_dividing(n, q, M));
    }
  }
  CHECK(count_unity_roots_gf(2, 7, 8) == count_order_dividing(2, 7, 8));
  CHECK(count_unity_roots_gf(3, 5, 6) == count_order_dividing(3, 5, 6));
  CHECK_THROWS_AS(count_unity_roots_gf(2, 3, 3), InvalidInput);
  CHECK_THROWS_AS(count_unity_roots_gf(2, 9, 6), InvalidInput);
}

TEST_CASE("real class counts") {
  for (unsigned q : {3u, 5u, 7u, 9u}) CHECK(real_class_count_direct(1, q) == 2);
  CHECK(real_class_count_direct(2, 3) == 6);
  CHECK(real_class_count_direct(2, 5) == 8);
  CHECK(real_class_count_direct(2, 7) == 10);
  CHECK(real_class_count_direct(3, 3) == 12);
  CHECK(s2_cardinality(2, 3) == 288);
  CHECK(s2_cardinality(1, 3) == 4);
  CHECK(s2_cardinality(1, 5) == 8);
  CHECK(real_class_count_ms(2, 3) == 6);
  CHECK(real_class_count_ms(1, 3) == 2);
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {2, 3}, {3, 3}, {1, 5}, {2, 5}, {3, 5}, {1, 7}, {2, 7}}) {
    CHECK(real_class_count_ms(n, q) == real_class_count_direct(n, q));
    CHECK(s2_cardinality(n, q) % gl_order(n, q) == 0);
  }
}

TEST_CASE("real class counts match the oracle") {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 5}, {1, 7}, {2, 3}, {2, 5}, {3, 3}}) {
    auto table = oracle::ElementTable::enumerate(oracle::GroupSpec::make(oracle::GroupKind::GL, n, q));
    auto classes = oracle::conjugacy_classes(table);
    auto fibers = oracle::square_fiber_counts(table);
    CHECK(real_class_count_direct(n, q) == oracle::real_classes_oracle(table, classes));
    CHECK(s2_cardinality(n, q) == oracle::s2_oracle(table, fibers));
  }
}

TEST_CASE("four-set evaluator under both readings of c_2") {
  CHECK(real_class_count_theorem(1, 3, C2Convention::ExactOrder) == 1);
  CHECK(real_class_count_theorem(1, 3, C2Convention::OrderDividing) == 2);
  CHECK(real_class_count_theorem(2, 3, C2Convention::OrderDividing) == mpq_class(49, 8));
  CHECK(real_class_count_theorem(2, 3, C2Convention::ExactOrder) == mpq_class(67, 12));
}

TEST_CASE("audit_real_counts") {
  auto r = audit_real_counts(2, 3, true);
  CHECK(r.summary["real_classes_direct"] == "6");
  CHECK(r.summary["real_classes_ms"] == "6");
  CHECK(r.summary["s2"] == "288");
  CHECK(r.summary["s2_oracle"] == "288");
  for (const auto& rec : r.records) {
    if (rec["method"] == "direct" || rec["method"] == "murray-sambale" || rec["method"] == "oracle") {
      CHECK(rec["agrees_with_direct"] == true);
    }
  }
  for (unsigned q : {3u, 5u, 7u}) {
    auto r1 = audit_real_counts(1, q, true);
    CHECK(r1.summary["real_classes_direct"] == "2");
    CHECK(r1.summary["real_classes_ms"] == "2");
  }
  auto r3 = audit_real_counts(3, 3, false);
  CHECK(r3.summary["real_classes_direct"] == r3.summary["real_classes_ms"]);
  for (const auto& g : r3.summary["unity_roots"]) CHECK(g["agree"] == true);
}
