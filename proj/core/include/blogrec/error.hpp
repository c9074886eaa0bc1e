#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blogrec {

// Bad or inconsistent configuration values (k < 1, empty grid, train_frac out of range).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke a precondition: dimension mismatch, index out of range.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input data that cannot be used (empty file, unreadable path, bad model file).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Non-finite loss during SGD.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scorer raised while ranking a user's candidates during evaluation.
class ScorerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blogrec
