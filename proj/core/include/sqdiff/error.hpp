#pragma once

#include <stdexcept>
#include <string>

namespace sqdiff {

// Caller passed a value outside an operation's domain (zero denominator,
// X < 2 for a logarithmic average, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural precondition on a set does not hold (per-denominator cap,
// gcd(a, q) > 1 for a Gauss sum, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Work or memory would exceed a configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact machine-width arithmetic overflowed and the caller asked for a
// signal instead of promotion.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A closed-form expression is undefined at these parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Derived length N' of a density-increment progression fell below 1.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data (set files, config files) is malformed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sqdiff
