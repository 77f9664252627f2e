#pragma once

// Machine-readable check results shared by every module.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace conelab {

enum class Status { pass, fail, note };

std::string to_string(Status s);

struct Certificate {
  std::string name;
  Status status = Status::pass;
  double max_violation = 0.0;  // largest residual seen: a closed-form gap or a broken sign claim
  std::size_t samples = 0;
  nlohmann::json witness;      // null unless there is something to show
};

struct CheckReport {
  std::string subject;  // cone name or example name
  std::string check;
  double tolerance = 0.0;
  std::string conclusion;  // what the passing certificates establish, if anything
  std::vector<Certificate> certificates;

  /// True when no certificate failed; notes never fail a report.
  bool passed() const;
  const Certificate* first_failure() const;
  Certificate& add(std::string name, bool ok, nlohmann::json witness = nullptr);

  nlohmann::json to_json() const;
};

}  // namespace conelab
