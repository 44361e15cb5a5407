#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "sqfib/errors.hpp"
#include "sqfib/oracle.hpp"
#include "support/classes.hpp"

using namespace sqfib;
using namespace sqfib::oracle;
using sqfib::testing::cls;
using sqfib::testing::mat;

namespace {

struct Row {
  GroupKind kind;
  unsigned n, q;
  std::uint64_t order, classes, real;
  const char* s2;
};

// Every row was produced by the exhaustive enumeration below and cross-checked
// against the classical order formula and the class-data side.
const std::vector<Row> kMatrix = {
    {GroupKind::GL, 1, 3, 2, 2, 2, "4"},        {GroupKind::GL, 2, 3, 48, 8, 6, "288"},
    {GroupKind::GL, 2, 5, 480, 24, 8, "3840"},  {GroupKind::GL, 3, 3, 11232, 24, 12, "134784"},
    {GroupKind::GL, 1, 7, 6, 6, 2, "12"},       {GroupKind::U, 1, 3, 4, 4, 2, "8"},
    {GroupKind::U, 2, 3, 96, 16, 6, "576"},     {GroupKind::Sp, 2, 3, 24, 7, 3, "72"},
    {GroupKind::Sp, 2, 5, 120, 9, 9, "1080"},   {GroupKind::Oodd, 1, 3, 2, 2, 2, "4"},
    {GroupKind::Oodd, 3, 3, 48, 10, 10, "480"}, {GroupKind::Oplus, 2, 3, 4, 4, 4, "16"},
    {GroupKind::Ominus, 2, 3, 8, 5, 5, "40"},   {GroupKind::Oplus, 4, 3, 1152, 25, 25, "28800"},
    {GroupKind::Ominus, 4, 3, 1440, 22, 22, "31680"}, {GroupKind::Oodd, 3, 5, 240, 14, 14, "3360"},
};

}  // namespace

TEST_CASE("group kinds") {
  CHECK(parse_kind("gl") == GroupKind::GL);
  CHECK(parse_kind("o+") == GroupKind::Oplus);
  CHECK(kind_name(GroupKind::Ominus) == "o-");
  CHECK_THROWS_AS(parse_kind("so"), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::make(GroupKind::Sp, 3, 3), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::make(GroupKind::Oplus, 3, 3), InvalidInput);
  CHECK_THROWS_AS(GroupSpec::make(GroupKind::GL, 2, 4), InvalidInput);
}

TEST_CASE("enumeration sizes and classical orders") {
  CHECK(classical_order(GroupKind::GL, 2, 3) == 48);
  CHECK(classical_order(GroupKind::U, 2, 3) == 96);
  CHECK(classical_order(GroupKind::Sp, 2, 3) == 24);
  CHECK(classical_order(GroupKind::Sp, 4, 3) == 51840);
  for (const auto& r : kMatrix) {
    auto t = ElementTable::enumerate(GroupSpec::make(r.kind, r.n, r.q));
    CHECK(t.size() == r.order);
    CHECK(classical_order(r.kind, r.n, r.q) == r.order);
  }
  CHECK_THROWS_AS(ElementTable::enumerate(GroupSpec::make(GroupKind::GL, 4, 3)), BoundExceeded);
  CHECK_THROWS_AS(ElementTable::enumerate(GroupSpec::make(GroupKind::GL, 3, 3), {.max_order = 1000}), BoundExceeded);
}

TEST_CASE("elements satisfy the form and the table is self-consistent") {
  for (auto kind : {GroupKind::U, GroupKind::Sp, GroupKind::Oplus, GroupKind::Ominus, GroupKind::Oodd}) {
    const unsigned n = kind == GroupKind::Oodd ? 3 : 2;
    auto spec = GroupSpec::make(kind, n, 3);
    auto t = ElementTable::enumerate(spec);
    for (std::size_t i = 0; i < t.size(); ++i) {
      Matrix g = t.element(i);
      Matrix lhs = kind == GroupKind::U ? g.conjugate().transpose() * spec.form * g : g.transpose() * spec.form * g;
      CHECK(lhs == spec.form);
      CHECK(t.index_of(g) == i);
      CHECK(t.element(t.inverses()[i]) * g == Matrix::identity(spec.field, n));
    }
  }
}

TEST_CASE("square fibers") {
  auto gl = ElementTable::enumerate(GroupSpec::make(GroupKind::GL, 2, 3));
  auto f = square_fiber_counts(gl);
  auto F3 = gl.spec().field;
  CHECK(f[gl.identity_index()] == 14);
  CHECK(f[*gl.index_of(mat(F3, 2, {2, 0, 0, 2}))] == 6);
  std::uint64_t total = 0;
  for (auto v : f) total += v;
  CHECK(total == gl.size());
  CHECK(square_fiber_counts(gl, 4) == f);

  auto sp = ElementTable::enumerate(GroupSpec::make(GroupKind::Sp, 2, 3));
  auto w = mat(F3, 2, {0, 1, 2, 0});
  REQUIRE(sp.index_of(w).has_value());
  CHECK(w * w == mat(F3, 2, {2, 0, 0, 2}));
  CHECK(square_fiber_counts(sp)[*sp.index_of(mat(F3, 2, {2, 0, 0, 2}))] >= 1);

  auto u1 = ElementTable::enumerate(GroupSpec::make(GroupKind::U, 1, 3));
  auto fu = square_fiber_counts(u1);
  std::multiset<std::uint64_t> got(fu.begin(), fu.end());
  CHECK(got == std::multiset<std::uint64_t>{0, 0, 2, 2});
  CHECK(fu[u1.identity_index()] == 2);
}

TEST_CASE("classes, real classes and Murray-Sambale across the test matrix") {
  for (const auto& r : kMatrix) {
    CAPTURE(kind_name(r.kind));
    CAPTURE(r.n);
    CAPTURE(r.q);
    auto t = ElementTable::enumerate(GroupSpec::make(r.kind, r.n, r.q));
    auto classes = conjugacy_classes(t);
    auto fibers = square_fiber_counts(t);
    CHECK(classes.count() == r.classes);
    std::uint64_t total = 0;
    for (auto s : classes.size) {
      CHECK(t.size() % s == 0);
      total += s;
    }
    CHECK(total == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(fibers[i] == fibers[classes.representative[classes.class_of[i]]]);
    const auto real = real_classes_oracle(t, classes);
    const Count s2 = s2_oracle(t, fibers);
    CHECK(real == r.real);
    CHECK(s2 == Count(r.s2));
    CHECK(s2 == Count(t.size()) * real);
  }
}

TEST_CASE("Sp_4(3) Murray-Sambale") {
  auto t = ElementTable::enumerate(GroupSpec::make(GroupKind::Sp, 4, 3));
  CHECK(t.size() == 51840);
  auto classes = conjugacy_classes(t);
  CHECK(classes.count() == 34);
  auto fibers = square_fiber_counts(t);
  CHECK(real_classes_oracle(t, classes) == 14);
  CHECK(s2_oracle(t, fibers) == 725760);
}

TEST_CASE("class_data_of_element") {
  auto F3 = Field::of_order(3);
  CHECK(class_data_of_element(mat(F3, 2, {2, 0, 0, 2})) == cls(F3, {{"1,1", "1^2"}}));
  CHECK(class_data_of_element(mat(F3, 2, {1, 1, 0, 1})) == cls(F3, {{"2,1", "2"}}));
  CHECK(class_data_of_element(companion_matrix(Poly::parse(F3, "1,0,1"))) == cls(F3, {{"1,0,1", "1"}}));
  CHECK_THROWS_AS(class_data_of_element(mat(F3, 2, {1, 1, 1, 1})), InvalidInput);
}

TEST_CASE("GL_3(3) conjugacy classes correspond to class data") {
  auto t = ElementTable::enumerate(GroupSpec::make(GroupKind::GL, 3, 3));
  auto classes = conjugacy_classes(t);
  auto F3 = t.spec().field;
  CHECK(classes.count() == enumerate_classes(3, F3).size());
  std::map<std::string, std::uint32_t> seen;
  for (std::size_t i = 0; i < t.size(); i += 37) {
    auto data = class_data_of_element(t.element(i));
    auto [it, fresh] = seen.emplace(data.to_string(), classes.class_of[i]);
    CHECK(it->second == classes.class_of[i]);
  }
}

TEST_CASE("parallel enumeration is identical") {
  auto spec = GroupSpec::make(GroupKind::U, 2, 3);
  CHECK(ElementTable::enumerate(spec, {.threads = 1}).codes() == ElementTable::enumerate(spec, {.threads = 4}).codes());
}

TEST_CASE("binary cache round trip") {
  auto spec = GroupSpec::make(GroupKind::Sp, 2, 5);
  auto t = ElementTable::enumerate(spec);
  auto path = (std::filesystem::temp_directory_path() / "sqfib_cache_test.sqf").string();
  t.save(path);
  {
    std::ifstream in(path, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "SQF1");
  }
  CHECK(std::filesystem::file_size(path) == 4 + 1 + 4 + 4 + 8 + 8 * t.size());
  auto back = ElementTable::load(path, spec);
  CHECK(back.codes() == t.codes());
  CHECK_THROWS_AS(ElementTable::load(path, GroupSpec::make(GroupKind::Sp, 2, 3)), InvalidInput);
  {
    std::fstream io(path, std::ios::binary | std::ios::in | std::ios::out);
    io.write("XQF1", 4);
  }
  CHECK_THROWS_AS(ElementTable::load(path, spec), InvalidInput);
  std::filesystem::remove(path);
}
