// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_REVERSER_HPP
#define FLIPKIT_REVERSER_HPP

#include <string>
#include <string_view>
#include <utility>

#include "flipkit/ast.hpp"

namespace flipkit {

/// Collapses every `flip (flip e)` to `e`.
FExpr simplify_flips(const FExpr& e);
FlipDef simplify_flips(const FlipDef& def);

/// Reads a branch backwards: lhs and rhs swap, steps run in reverse order,
/// and each `p1 < f > p2` becomes `p2 < flip f > p1` with `flip (flip e)`
/// collapsed to `e`.
Branch reverse_branch(const Branch& branch);

/// The definition of signature B <-> A for a checked definition of A <-> B.
/// Branch order is kept. Toggles the ReversedMark, so reversing twice gives
/// back a structurally equal definition.
FlipDef reverse_flippable(const FlipDef& def);

/// A copy of `program` with reverse_flippable(def) added under a fresh name
/// (returned). Self-references inside the reversed body still name the
/// original definition, which is what their `flip` wrapping expects.
std::pair<Program, std::string> with_reversed(const Program& program,
                                              std::string_view def);

}  // namespace flipkit

#endif  // FLIPKIT_REVERSER_HPP
