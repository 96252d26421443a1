#pragma once

#include <stdexcept>
#include <string>

namespace rmcert {

// Base of every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a memory or compute limit (dense 2^N objects, design sums).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed record file or document. Carries the 1-based line number.
class IngestionError : public Error {
 public:
  IngestionError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// No measurement budget satisfies the requested constraints.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmcert
