#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sqfib {

/// Per-class comparison of several counting methods. Mismatches are findings
/// recorded in the report, never exceptions.
struct AuditReport {
  std::string kind;  // e.g. "square-counts"
  std::string group;
  unsigned n = 0;
  std::uint64_t q = 0;
  std::vector<nlohmann::ordered_json> records;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> findings;

  nlohmann::ordered_json to_json() const;
};

}  // namespace sqfib
