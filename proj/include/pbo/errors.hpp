#pragma once

#include <stdexcept>
#include <string>

namespace pbo {

/// Malformed arguments: size mismatches, violated index constraints, unknown ids.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator applied outside its domain (e.g. the antiderivative of a field with mean).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid solver or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state during time integration.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace pbo
