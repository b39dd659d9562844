#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edeco {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  unknown_label,
  not_hermitian,
  non_commuting,
  precondition,
  cutoff,
  infeasible,
  numerical,
  config,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-readable kind so the
// command-line front end can emit a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace edeco
