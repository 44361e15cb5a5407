#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sqfib/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sqfib::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("spec examples") {
  auto r = run({"sqrt-count", "--group", "gl", "--n", "2", "--q", "3", "--class",
                R"({"entries":[{"poly":"1,1","partition":"1^2"}]})"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["payload"]["count"] == "6");

  r = run({"real-classes", "--n", "2", "--q", "3", "--method", "ms"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["payload"]["real_classes"] == "6");

  r = run({"classify-poly", "--q", "3", "--poly", "1,1", "--m", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["payload"]["classification"] == "skew-2-power");
  CHECK(r.json()["payload"]["f_of_x2"] == "1,0,1");
}

TEST_CASE("envelope") {
  auto j = run({"real-classes", "--n", "1", "--q", "3"}).json();
  CHECK(j["schema_version"] == "1");
  CHECK(j["tool"] == "sqfib");
  CHECK(j["timestamp"].is_null());
  CHECK(j["command"]["verb"] == "real-classes");
  CHECK(j["command"]["options"]["--q"] == "3");
  CHECK(j["warnings"].is_array());
  CHECK(run({"--timestamp", "real-classes", "--n", "1", "--q", "3"}).json()["timestamp"].is_string());
}

TEST_CASE("audit mismatches are findings with exit 0") {
  auto r = run({"audit-squares", "--n", "2", "--q", "3", "--oracle"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["payload"]["records"].size() == 8);
  CHECK(j["payload"]["summary"]["count_matches_oracle"] == 8);
  CHECK(j["warnings"].size() == j["payload"]["findings"].size());
  CHECK(!j["warnings"].empty());
  r = run({"audit-squares", "--group", "sp", "--n", "2", "--q", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["payload"]["summary"]["mismatches"] == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classes", "--n", "2"}).code == 2);
  CHECK(run({"classes", "--n", "2", "--q", "4"}).code == 2);
  CHECK(run({"classes", "--n", "2", "--q", "3", "--bogus"}).code == 2);
  CHECK(run({"classify-poly", "--q", "3", "--poly", "1,x"}).code == 2);
  CHECK(run({"classify-poly", "--q", "3", "--poly", "2,0,1"}).code == 2);
  CHECK(run({"sqrt-count", "--q", "3", "--class", "{"}).code == 2);
  CHECK(run({"sqrt-count", "--q", "3", "--class", R"({"entries":[{"poly":"1,1","partition":"1^0"}]})"}).code == 2);
  CHECK(run({"sqrt-count", "--q", "3", "--n", "3", "--class", R"({"entries":[{"poly":"1,1","partition":"1^2"}]})"}).code == 2);
  CHECK(run({"real-classes", "--n", "2", "--q", "3", "--method", "guess"}).code == 2);
  CHECK(run({"--threads", "0", "classes", "--n", "1", "--q", "3"}).code == 2);
  CHECK(run({"oracle", "--kind", "gl", "--n", "4", "--q", "3"}).code == 3);
  CHECK(run({"oracle", "--kind", "gl", "--n", "2", "--q", "3", "--max-order", "100000000"}).code == 3);
  CHECK(run({"classes", "--n", "3", "--q", "3", "--limit", "10"}).code == 3);
  CHECK(run({"classes", "--n", "2", "--q", "1048583"}).code == 3);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--format", "csv", "real-classes", "--n", "1", "--q", "3"}).code == 2);
}

TEST_CASE("csv output") {
  auto r = run({"--format", "csv", "classes", "--n", "2", "--q", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "label,class_size,centralizer_order,element_order,real,square_roots");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  r = run({"--format", "csv", "audit-squares", "--n", "2", "--q", "3", "--oracle"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("label,class_size,count_square_roots,oracle_fiber", 0) == 0);
}

TEST_CASE("output does not depend on --threads") {
  const std::vector<std::vector<std::string>> cmds = {
      {"audit-squares", "--n", "3", "--q", "3", "--oracle"},
      {"classes", "--n", "3", "--q", "5"},
      {"real-classes", "--n", "2", "--q", "5", "--method", "gf-audit", "--oracle"},
      {"oracle", "--kind", "sp", "--n", "2", "--q", "5", "--report", "classes"},
      {"oracle", "--kind", "u", "--n", "2", "--q", "3", "--report", "fibers"},
  };
  for (const auto& c : cmds) {
    auto a = c, b = c;
    a.insert(a.begin(), {"--threads", "1"});
    b.insert(b.begin(), {"--threads", "4"});
    const auto ra = run(a), rb = run(b), rc = run(c);
    CHECK(ra.code == 0);
    CHECK(ra.out == rb.out);
    CHECK(ra.out == rc.out);
  }
}

TEST_CASE("oracle cache") {
  auto path = (std::filesystem::temp_directory_path() / "sqfib_cli_cache.sqf").string();
  std::filesystem::remove(path);
  auto first = run({"oracle", "--kind", "sp", "--n", "2", "--q", "3", "--report", "s2", "--cache", path});
  REQUIRE(first.code == 0);
  CHECK(std::filesystem::exists(path));
  auto second = run({"oracle", "--kind", "sp", "--n", "2", "--q", "3", "--report", "s2", "--cache", path});
  CHECK(second.out == first.out);
  CHECK(first.json()["payload"]["s2"] == "72");
  CHECK(run({"oracle", "--kind", "gl", "--n", "2", "--q", "3", "--cache", path}).code == 2);
  std::filesystem::remove(path);
}
