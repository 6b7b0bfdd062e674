#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sidon {

/// Input violates a pattern constraint that an operation requires.
class pattern_violation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A memory or node budget would be exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certified result cannot reach the requested width at the configured precision.
class precision_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical quadrature failed to reach its tolerance.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// No object satisfies the request (e.g. no k-element set below a cap).
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed sequence text; carries the 1-based offending line.
class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sidon
