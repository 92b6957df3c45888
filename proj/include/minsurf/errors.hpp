#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minsurf {

/// Input text could not be parsed; `offset` is the byte position of the
/// first offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A computation left its numerical domain: pole at a base point, branch
/// point under a square root, division by a vanishing series, quadrature
/// failure, and so on.  The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minsurf
