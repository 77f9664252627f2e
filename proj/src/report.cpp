#include "conelab/report.hpp"

#include <algorithm>

namespace conelab {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::note: return "NOTE";
  }
  return "?";
}

bool CheckReport::passed() const { return first_failure() == nullptr; }

const Certificate* CheckReport::first_failure() const {
  auto it = std::find_if(certificates.begin(), certificates.end(),
                         [](const Certificate& c) { return c.status == Status::fail; });
  return it == certificates.end() ? nullptr : &*it;
}

Certificate& CheckReport::add(std::string name, bool ok, nlohmann::json witness) {
  Certificate c;
  c.name = std::move(name);
  c.status = ok ? Status::pass : Status::fail;
  c.samples = 1;
  c.witness = std::move(witness);
  certificates.push_back(std::move(c));
  return certificates.back();
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json out;
  out["subject"] = subject;
  out["check"] = check;
  out["verdict"] = passed() ? "PASS" : "FAIL";
  out["tolerance"] = tolerance;
  if (!conclusion.empty()) out["conclusion"] = conclusion;
  out["certificates"] = nlohmann::json::array();
  for (const auto& c : certificates) {
    nlohmann::json j{{"name", c.name},
                     {"status", to_string(c.status)},
                     {"max_violation", c.max_violation},
                     {"samples", c.samples}};
    if (!c.witness.is_null()) j["witness"] = c.witness;
    out["certificates"].push_back(std::move(j));
  }
  return out;
}

}  // namespace conelab
