#pragma once

// Machine-readable reports: a versioned JSON object with a `checks` array.

#include "json.hpp"

#include <string>
#include <vector>

namespace qgd {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string name;
  Json expected;
  Json actual;
  bool pass = false;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Records a check; returns whether it passed.
  bool check(std::string name, Json expected, Json actual) {
    bool pass = expected == actual;
    checks_.push_back({std::move(name), std::move(expected), std::move(actual), pass});
    return pass;
  }
  bool check_true(std::string name, bool value) { return check(std::move(name), true, value); }

  Json& data() { return data_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool ok() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command_;
    j["data"] = data_;
    Json cs = Json::array();
    for (const auto& c : checks_)
      cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    j["checks"] = cs;
    j["ok"] = ok();
    return j;
  }

  /// One line per check, for standard output.
  std::string summary() const {
    std::string s;
    for (const auto& c : checks_)
      s += std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": expected " + c.expected.dump() + ", got " +
           c.actual.dump() + "\n";
    return s;
  }

 private:
  std::string command_;
  Json data_ = Json::object();
  std::vector<Check> checks_;
};

}  // namespace qgd
