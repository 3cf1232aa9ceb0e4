// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_PARSER_HPP
#define FLIPKIT_PARSER_HPP

#include <string_view>

#include "flipkit/ast.hpp"
#include "flipkit/error.hpp"

namespace flipkit {

/// Parses a `.flp` source. Purely syntactic: a parsed program may still be
/// rejected by the checker. Throws ParseError with the offending position.
Program parse_program(std::string_view text);

ParamSig parse_param_sig(std::string_view text);
TypeExpr parse_type(std::string_view text);
Pattern parse_pattern(std::string_view text);
FExpr parse_fexpr(std::string_view text);

}  // namespace flipkit

#endif  // FLIPKIT_PARSER_HPP
