#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cobi {

/// Malformed textual input; `position` is the 0-based offset of the offending
/// character in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Two scopes (or scope-indexed values) that were required to line up do not.
class ScopeMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A free variable could not be resolved against the ambient scope.
class UnboundVariableError : public std::runtime_error {
 public:
  explicit UnboundVariableError(std::string name)
      : std::runtime_error("unbound variable: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An operation was handed a value violating its representation invariant.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cobi
