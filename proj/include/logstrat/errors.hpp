#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace logstrat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& m, std::size_t line, std::size_t column) {
    if (line == 0) return m;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + m;
  }
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Violated operation precondition (arity mismatch, wrong ring, bad index).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A decomposition branch could not be certified prime. `path` lists the
// ideals that led to the offending branch, outermost first.
class DecompositionIncomplete : public Error {
 public:
  DecompositionIncomplete(const std::string& what, std::vector<std::string> path = {})
      : Error(what), path_(std::move(path)) {}
  const std::vector<std::string>& path() const { return path_; }

 private:
  std::vector<std::string> path_;
};

// A mathematically honest "could not decide" outcome.
class Unresolved : public Error {
 public:
  using Error::Error;
};

}  // namespace logstrat
