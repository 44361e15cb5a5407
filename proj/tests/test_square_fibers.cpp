#include <set>

#include "doctest.h"
#include "sqfib/errors.hpp"
#include "sqfib/oracle.hpp"
#include "sqfib/square_fibers.hpp"
#include "support/classes.hpp"

using namespace sqfib;
using sqfib::testing::cls;

namespace {

const std::vector<std::pair<unsigned, unsigned>> kSmall = {{1, 3}, {2, 3}, {3, 3}, {1, 5}, {2, 5}, {3, 5}};

}  // namespace

TEST_CASE("square_root_image and square_class") {
  auto F3 = Field::of_order(3);
  CHECK(square_root_image(Poly::parse(F3, "1,1")) == Poly::parse(F3, "2,1"));
  CHECK(square_root_image(Poly::parse(F3, "1,0,1")) == Poly::parse(F3, "1,1"));
  CHECK(square_class(cls(F3, {{"1,1", "1"}})) == cls(F3, {{"2,1", "1"}}));
  CHECK(square_class(cls(F3, {{"1,0,1", "1"}})) == cls(F3, {{"1,1", "1^2"}}));
  CHECK(square_class(cls(F3, {{"1,1", "1"}, {"2,1", "2"}})) == cls(F3, {{"2,1", "1+2"}}));
}

TEST_CASE("square_class agrees with squaring representative matrices") {
  for (auto [n, q] : kSmall) {
    auto F = Field::of_order(q);
    for (const auto& c : enumerate_classes(n, F)) {
      const Matrix g = representative_matrix(c);
      CHECK(square_class(c) == oracle::class_data_of_element(g * g));
    }
  }
  auto F9 = Field::of_order(9);
  for (const auto& c : enumerate_classes(2, F9)) {
    const Matrix g = representative_matrix(c);
    CHECK(square_class(c) == oracle::class_data_of_element(g * g));
  }
}

TEST_CASE("count_square_roots examples") {
  auto F3 = Field::of_order(3);
  CHECK(count_square_roots(cls(F3, {{"2,1", "1^2"}})) == 14);
  CHECK(count_square_roots(cls(F3, {{"1,1", "1^2"}})) == 6);
  CHECK(count_square_roots(cls(F3, {{"1,1", "1^3"}})) == 0);
  CHECK(count_square_roots(cls(F3, {{"2,1", "1"}})) == 2);
  CHECK(count_square_roots(cls(F3, {{"1,1", "1"}})) == 0);
  CHECK(square_root_classes(cls(F3, {{"2,1", "1^2"}})).roots.size() == 3);
}

TEST_CASE("root classes square back, existence consistency, inversion equivariance") {
  for (auto [n, q] : kSmall) {
    auto F = Field::of_order(q);
    for (const auto& c : enumerate_classes(n, F)) {
      auto roots = square_root_classes(c);
      std::set<std::string> distinct;
      for (const auto& r : roots.roots) {
        CHECK(square_class(r) == c);
        distinct.insert(r.to_string());
      }
      CHECK(distinct.size() == roots.roots.size());
      const Count R = count_square_roots(c);
      CHECK(has_square_root_gl(c) == (R > 0));
      CHECK(has_square_root_gl(c) == !roots.roots.empty());
      CHECK(count_square_roots(inverse_class(c)) == R);
    }
  }
}

TEST_CASE("every class is the square of its root classes and of nothing else") {
  auto F = Field::of_order(3);
  auto classes = enumerate_classes(3, F);
  std::map<std::string, std::set<std::string>> roots_of;
  for (const auto& g : classes) roots_of[square_class(g).to_string()].insert(g.to_string());
  for (const auto& c : classes) {
    std::set<std::string> listed;
    for (const auto& r : square_root_classes(c).roots) listed.insert(r.to_string());
    CHECK(listed == roots_of[c.to_string()]);
  }
}

TEST_CASE("mass conservation") {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {2, 3}, {3, 3}, {1, 5}, {2, 5}, {2, 7}, {4, 3}}) {
    auto F = Field::of_order(q);
    Count total = 0;
    for (const auto& c : enumerate_classes(n, F)) total += class_size(c) * count_square_roots(c);
    CHECK(total == gl_order(n, q));
  }
}

TEST_CASE("count_square_roots equals the oracle fiber") {
  for (auto [n, q] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {2, 3}, {2, 5}, {3, 3}}) {
    auto table = oracle::ElementTable::enumerate(oracle::GroupSpec::make(oracle::GroupKind::GL, n, q));
    auto fibers = oracle::square_fiber_counts(table);
    auto F = Field::of_order(q);
    for (const auto& c : enumerate_classes(n, F)) {
      auto idx = table.index_of(representative_matrix(c));
      REQUIRE(idx.has_value());
      CHECK(count_square_roots(c) == fibers[*idx]);
    }
  }
}

TEST_CASE("paper_count_formula is evaluated as printed") {
  auto F3 = Field::of_order(3);
  auto minus_i = paper_count_formula(cls(F3, {{"1,1", "1^2"}}));
  CHECK(minus_i.evaluable());
  CHECK(minus_i.value == 1);
  auto ident = paper_count_formula(cls(F3, {{"2,1", "1^2"}}));
  CHECK(ident.evaluable());
  CHECK(ident.value == 6);
  auto one = paper_count_formula(cls(F3, {{"2,1", "1"}}));
  CHECK(one.status == PaperFormulaResult::Status::UndefinedFactor);
  CHECK(one.status_name() == "undefined-factor");
  auto block = paper_count_formula(cls(F3, {{"2,1", "2"}}));
  CHECK(block.status == PaperFormulaResult::Status::NonIntegralExponent);
  CHECK_THROWS_AS(paper_count_formula(cls(F3, {{"1,1", "1"}})), InvalidInput);
}

TEST_CASE("unitary criterion examples") {
  auto F9 = Field::of_order(9);
  const Elem i = 3;  // root of the modulus x^2 + 1
  REQUIRE(F9->mul(i, i) == F9->neg(1));
  auto one = GLClassData(F9, {{Poly::linear(F9, 1), Partition::parse("1")}});
  auto gen = GLClassData(F9, {{Poly::linear(F9, i), Partition::parse("1")}});
  auto minus_one = GLClassData(F9, {{Poly::linear(F9, F9->neg(1)), Partition::parse("1")}});
  CHECK(has_square_root_unitary(one));
  CHECK_FALSE(has_square_root_unitary(gen));
  CHECK(has_square_root_unitary(minus_one));
  // 1 + i has (1 + i)^{q+1} = -1, so x - (1 + i) needs its partner
  auto lone = GLClassData(F9, {{Poly::linear(F9, 4), Partition::parse("1")}});
  CHECK_THROWS_AS(has_square_root_unitary(lone), InvalidInput);
  CHECK_THROWS_AS(has_square_root_unitary(cls(Field::of_order(3), {{"1,1", "1"}})), InvalidInput);
}

TEST_CASE("symplectic criterion examples") {
  auto F3 = Field::of_order(3);
  CHECK(has_square_root_symplectic(cls(F3, {{"2,1", "2"}})));
  CHECK_FALSE(has_square_root_symplectic(cls(F3, {{"1,1", "1^2"}})));
  CHECK_FALSE(has_square_root_symplectic(cls(F3, {{"1,0,1", "1"}})));
  CHECK_THROWS_AS(has_square_root_symplectic(cls(F3, {{"2,1,1", "1"}})), InvalidInput);
  // x^2+x+2 is skew with an odd multiplicity
  CHECK_FALSE(has_square_root_symplectic(cls(F3, {{"2,1,1", "1"}, {"2,2,1", "1"}})));
  CHECK(has_square_root_symplectic(cls(F3, {{"2,1,1", "1^2"}, {"2,2,1", "1^2"}})));
  CHECK(has_square_root_symplectic(cls(F3, {{"2,1", "1^2"}})));
}

TEST_CASE("audit_square_counts") {
  auto r = audit_square_counts(2, 3, true);
  REQUIRE(r.records.size() == 8);
  CHECK(r.summary["count_matches_oracle"] == 8);
  CHECK(r.summary["closed_form_mismatches"] == 2);
  std::set<std::string> mismatched;
  for (const auto& rec : r.records) {
    CHECK(rec["flags"]["count_matches_oracle"] == true);
    if (rec["flags"]["closed_form_matches_count"] == false) mismatched.insert(rec["label"].get<std::string>());
  }
  CHECK(mismatched == std::set<std::string>{"{x+1:1^2}", "{x+2:1^2}"});

  auto r1 = audit_square_counts(1, 3, true);
  REQUIRE(r1.records.size() == 2);
  for (const auto& rec : r1.records) {
    CHECK(rec["flags"]["count_matches_oracle"] == true);
    CHECK(rec["flags"]["existence_consistent"] == true);
  }
  CHECK(audit_square_counts(2, 3, true, 4).to_json().dump() == r.to_json().dump());
}

TEST_CASE("symplectic audit flags -I in Sp_2(3)") {
  auto r = audit_symplectic_predicate(2, 3);
  CHECK(r.records.size() == 7);
  CHECK(r.summary["mismatches"] == 1);
  bool flagged = false;
  for (const auto& rec : r.records) {
    if (rec["label"] == "{x+1:1^2}") {
      CHECK(rec["predicate"] == false);
      CHECK(rec["oracle_has_root"] == true);
      flagged = true;
    } else {
      CHECK(rec["agrees"] == true);
    }
  }
  CHECK(flagged);
}

TEST_CASE("unitary audit on U_1 and U_2") {
  auto r1 = audit_unitary_predicate(1, 3);
  CHECK(r1.records.size() == 4);
  CHECK(r1.summary["mismatches"] == 0);
  auto r2 = audit_unitary_predicate(2, 3);
  CHECK(r2.records.size() == 16);
  CHECK(r2.summary["rejected"] == 0);
}
