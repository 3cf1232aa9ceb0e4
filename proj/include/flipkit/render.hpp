// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_RENDER_HPP
#define FLIPKIT_RENDER_HPP

#include <string>

#include "flipkit/ast.hpp"

namespace flipkit {

// Canonical surface syntax. parse_program(render(p)) == p for every
// well-formed program, and rendering is deterministic.

std::string render(const Program& program);
std::string render(const FlipDef& def);
std::string render(const DataDecl& decl);
std::string render(const ExternDecl& decl);
std::string render(const ParamSig& sig);
std::string render(const TypeExpr& type);
std::string render(const Pattern& pattern);
std::string render(const FExpr& fexpr);
std::string render(const Branch& branch);

}  // namespace flipkit

#endif  // FLIPKIT_RENDER_HPP
