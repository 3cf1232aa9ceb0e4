// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/reverser.hpp"

#include <algorithm>
#include <stdexcept>

namespace flipkit {

FExpr simplify_flips(const FExpr& e) {
  switch (e.kind) {
    case FExpr::Kind::Ref:
      return e;
    case FExpr::Kind::App:
      return FExpr::app(simplify_flips(e.head()), simplify_flips(e.arg()), e.loc);
    case FExpr::Kind::Flip:
      return FExpr::flipped(simplify_flips(e.inner()), e.loc);
  }
  return e;
}

FlipDef simplify_flips(const FlipDef& def) {
  FlipDef out = def;
  for (Branch& b : out.branches) {
    for (Step& s : b.steps) s.fexpr = simplify_flips(s.fexpr);
  }
  return out;
}

Branch reverse_branch(const Branch& branch) {
  Branch out;
  out.loc = branch.loc;
  out.lhs = branch.rhs;
  out.rhs = branch.lhs;
  out.steps.reserve(branch.steps.size());
  for (auto it = branch.steps.rbegin(); it != branch.steps.rend(); ++it) {
    out.steps.push_back(
        Step{it->in, FExpr::flipped(simplify_flips(it->fexpr), it->fexpr.loc),
             it->out, it->loc});
  }
  return out;
}

FlipDef reverse_flippable(const FlipDef& def) {
  FlipDef out;
  out.name = def.name;
  out.params = def.params;
  out.domain = def.codomain;
  out.codomain = def.domain;
  out.loc = def.loc;
  out.branches.reserve(def.branches.size());
  for (const Branch& b : def.branches) out.branches.push_back(reverse_branch(b));
  if (!def.mark) out.mark = ReversedMark{def.name, true};
  return out;
}

std::pair<Program, std::string> with_reversed(const Program& program,
                                              std::string_view def) {
  const FlipDef* original = program.find_flip(def);
  if (original == nullptr) {
    throw std::invalid_argument("unknown flippable '" + std::string(def) + "'");
  }
  std::string name = std::string(def) + "Rev";
  while (program.find_flip(name) != nullptr ||
         program.find_extern(name) != nullptr) {
    name += "'";
  }
  Program out = program;
  FlipDef reversed = reverse_flippable(*original);
  reversed.name = name;
  out.flips.push_back(std::move(reversed));
  return {std::move(out), name};
}

}  // namespace flipkit
