// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_TESTS_SUPPORT_HPP
#define FLIPKIT_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "flipkit/checker.hpp"
#include "flipkit/parser.hpp"

namespace flipkit::testing {

inline std::string source_path(const std::string& rel) {
  return std::string(FLIPKIT_SOURCE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& rel) {
  std::ifstream in(source_path(rel), std::ios::binary);
  if (!in) throw std::runtime_error("missing " + rel);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Checked program or an exception listing the diagnostics.
inline CheckedProgram must_check(Program p) {
  CheckResult r = check_program(std::move(p));
  if (!r.ok()) {
    std::string msg;
    for (const auto& e : r.errors) msg += format_diagnostic("src", e) + "\n";
    throw std::runtime_error(msg);
  }
  return std::move(*r.checked);
}

inline CheckedProgram must_check(std::string_view text) {
  return must_check(parse_program(text));
}

}  // namespace flipkit::testing

#endif  // FLIPKIT_TESTS_SUPPORT_HPP
