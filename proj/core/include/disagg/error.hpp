#pragma once

#include <stdexcept>
#include <string>

namespace disagg {

// Error categories surfaced to callers. The CLI maps any of these to a
// nonzero exit and a stderr line carrying the message context.
enum class ErrorKind {
  invalid_arity,
  invalid_shares,
  parse,
  vocabulary,
  duplicate_key,
  degenerate_distribution,
  validation,
  empty_series,
  indicator_mismatch,
  geo_mismatch,
  config,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace disagg
