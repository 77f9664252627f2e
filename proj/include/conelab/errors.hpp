#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Arithmetic left the declared field (two different surds met).
class FieldOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotMember : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyFace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoLift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the tangential depth exceeds the cone dimension. The bound is a
// theorem, so this signals a bug rather than bad input.
class DepthBoundViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ToleranceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON input; `path` names the offending location, e.g. "/rays/2/0".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace conelab
