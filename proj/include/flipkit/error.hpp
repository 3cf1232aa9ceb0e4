// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_ERROR_HPP
#define FLIPKIT_ERROR_HPP

#include <stdexcept>
#include <string>

#include "flipkit/ast.hpp"

namespace flipkit {

/// Syntax errors and duplicate top-level names.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" +
                           std::to_string(loc.col) + ": " + message),
        loc_(loc),
        message_(message) {}

  SourceLoc loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

/// Raised by the interpreter when evaluation goes wrong at runtime: a linear
/// binding read twice, no matching branch, an exhausted step budget, or a
/// host bijection rejecting its input.
class RuntimeFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flipkit

#endif  // FLIPKIT_ERROR_HPP
