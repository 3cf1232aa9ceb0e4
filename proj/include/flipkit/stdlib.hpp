// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_STDLIB_HPP
#define FLIPKIT_STDLIB_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flipkit/ast.hpp"
#include "flipkit/checker.hpp"

namespace flipkit {

struct StdlibEntry {
  std::string name;
  std::string source_file;
  std::string signature;  // rendered, e.g. "(f : a <-> b) (g : b <-> c) : a <-> c"
};

/// (file name, text) for every shipped `.flp` source.
const std::vector<std::pair<std::string_view, std::string_view>>&
stdlib_sources();

/// All stdlib declarations merged into one parsed program.
Program stdlib_program();

/// Every definition with its source file and signature.
std::vector<StdlibEntry> stdlib_manifest();

/// The checked stdlib. Throws std::logic_error if the shipped sources fail
/// to parse or check.
const CheckedProgram& load_stdlib();

/// `user` merged after the stdlib. A stdlib source declaring any name the
/// user program also declares is left out.
Program with_stdlib(Program user);

}  // namespace flipkit

#endif  // FLIPKIT_STDLIB_HPP
