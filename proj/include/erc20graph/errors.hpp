#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace erc20graph {

// Bad input data: malformed files, inconsistent labels, wrong model variant.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures that are not the caller's data: network, numerical, I/O.
// The CLI maps these to exit code 3.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValueError : public InputError {
 public:
  using InputError::InputError;
};

class DecodeError : public InputError {
 public:
  using InputError::InputError;
};

class LabelConflictError : public InputError {
 public:
  using InputError::InputError;
};

class FeatureMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class ModelFormatError : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateTrainingError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyGraphError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FetchError : public RuntimeFailure {
 public:
  using RuntimeFailure::RuntimeFailure;
};

class RangeTooDenseError : public FetchError {
 public:
  using FetchError::FetchError;
};

}  // namespace erc20graph
