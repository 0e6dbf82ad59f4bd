#pragma once

#include <stdexcept>
#include <string>

namespace symcube {

enum class ErrorKind {
  invalid_order,
  invalid_action,
  invalid_group,
  closure_too_large,
  dimension_mismatch,
  invalid_params,
  invalid_input,
  not_latin_square,
  not_a_cube,
  resource_limit,
  construction_bug,
  parse_error,
  io_error,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::invalid_action: return "invalid-action";
    case ErrorKind::invalid_group: return "invalid-group";
    case ErrorKind::closure_too_large: return "closure-too-large";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::not_latin_square: return "not-a-latin-square";
    case ErrorKind::not_a_cube: return "not-a-cube";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::construction_bug: return "construction-bug";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symcube
