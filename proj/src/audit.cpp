#include "sqfib/audit.hpp"

namespace sqfib {

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["audit"] = kind;
  j["group"] = group;
  j["n"] = n;
  j["q"] = std::to_string(q);
  j["summary"] = summary;
  j["records"] = records;
  j["findings"] = findings;
  return j;
}

}  // namespace sqfib
