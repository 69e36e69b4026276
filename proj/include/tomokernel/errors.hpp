#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomokernel {

/// Coarse failure classes; the CLI reports these as machine-parsable tags.
enum class ErrorCategory { config, truncation, numeric };

constexpr std::string_view to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::truncation: return "truncation";
    case ErrorCategory::numeric: return "numeric";
  }
  return "numeric";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// A precondition on an argument or configuration value was violated.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// The Fock cutoff is too small for the requested amplitude.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what)
      : Error(ErrorCategory::truncation, what) {}
};

/// A numerical result failed a sanity check (mass, finiteness, tolerance).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

}  // namespace tomokernel
