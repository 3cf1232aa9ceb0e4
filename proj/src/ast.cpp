// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/ast.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "flipkit/error.hpp"

namespace flipkit {

namespace {

bool ident_tail_ok(std::string_view name) {
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  });
}

}  // namespace

bool is_reserved_word(std::string_view name) {
  static constexpr std::array<std::string_view, 4> kReserved = {
      "data", "flip", "extern", "Msg"};
  return std::find(kReserved.begin(), kReserved.end(), name) !=
         kReserved.end();
}

bool is_lower_ident(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0])) &&
         ident_tail_ok(name) && !is_reserved_word(name);
}

bool is_upper_ident(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0])) &&
         ident_tail_ok(name) && !is_reserved_word(name);
}

bool is_builtin_type(std::string_view name) {
  return name == kMsgType || name == kIntType;
}

TypeExpr TypeExpr::var(std::string name, SourceLoc loc) {
  return TypeExpr{Kind::Var, std::move(name), {}, loc};
}

TypeExpr TypeExpr::named(std::string name, std::vector<TypeExpr> args,
                         SourceLoc loc) {
  return TypeExpr{Kind::Named, std::move(name), std::move(args), loc};
}

TypeExpr TypeExpr::pair(TypeExpr left, TypeExpr right, SourceLoc loc) {
  std::vector<TypeExpr> args;
  args.push_back(std::move(left));
  args.push_back(std::move(right));
  return TypeExpr{Kind::Pair, {}, std::move(args), loc};
}

Pattern Pattern::var(std::string name, SourceLoc loc) {
  return Pattern{Kind::Var, std::move(name), {}, loc};
}

Pattern Pattern::ctor(std::string name, std::vector<Pattern> args,
                      SourceLoc loc) {
  return Pattern{Kind::Ctor, std::move(name), std::move(args), loc};
}

Pattern Pattern::pair(Pattern left, Pattern right, SourceLoc loc) {
  std::vector<Pattern> args;
  args.push_back(std::move(left));
  args.push_back(std::move(right));
  return Pattern{Kind::Pair, {}, std::move(args), loc};
}

void Pattern::collect_variables(std::vector<const Pattern*>& out) const {
  if (kind == Kind::Var) {
    out.push_back(this);
    return;
  }
  for (const Pattern& arg : args) arg.collect_variables(out);
}

std::vector<std::string> Pattern::variables() const {
  std::vector<const Pattern*> vars;
  collect_variables(vars);
  std::vector<std::string> names;
  names.reserve(vars.size());
  for (const Pattern* v : vars) names.push_back(v->name);
  return names;
}

FExpr FExpr::ref(std::string name, SourceLoc loc) {
  return FExpr{Kind::Ref, std::move(name), {}, loc};
}

FExpr FExpr::app(FExpr head, FExpr arg, SourceLoc loc) {
  std::vector<FExpr> args;
  args.push_back(std::move(head));
  args.push_back(std::move(arg));
  return FExpr{Kind::App, {}, std::move(args), loc};
}

FExpr FExpr::flipped(FExpr inner, SourceLoc loc) {
  if (inner.kind == Kind::Flip) {
    FExpr unwrapped = std::move(inner.args[0]);
    return unwrapped;
  }
  std::vector<FExpr> args;
  args.push_back(std::move(inner));
  return FExpr{Kind::Flip, {}, std::move(args), loc};
}

const Param* FlipDef::find_param(std::string_view param) const {
  for (const Param& p : params) {
    if (p.name == param) return &p;
  }
  return nullptr;
}

const DataDecl* Program::find_data(std::string_view name) const {
  for (const DataDecl& d : data) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const ExternDecl* Program::find_extern(std::string_view name) const {
  for (const ExternDecl& e : externs) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const FlipDef* Program::find_flip(std::string_view name) const {
  for (const FlipDef& f : flips) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::pair<const DataDecl*, const CtorDecl*> Program::find_ctor(
    std::string_view ctor) const {
  for (const DataDecl& d : data) {
    for (const CtorDecl& c : d.ctors) {
      if (c.name == ctor) return {&d, &c};
    }
  }
  return {nullptr, nullptr};
}

void Program::merge(const Program& other) {
  for (const DataDecl& d : other.data) {
    if (find_data(d.name) != nullptr) {
      throw ParseError(d.loc, "duplicate data type '" + d.name + "'");
    }
    for (const CtorDecl& c : d.ctors) {
      if (find_ctor(c.name).first != nullptr) {
        throw ParseError(c.loc, "duplicate constructor '" + c.name + "'");
      }
    }
    data.push_back(d);
  }
  for (const ExternDecl& e : other.externs) {
    if (find_extern(e.name) != nullptr || find_flip(e.name) != nullptr) {
      throw ParseError(e.loc, "duplicate top-level name '" + e.name + "'");
    }
    externs.push_back(e);
  }
  for (const FlipDef& f : other.flips) {
    if (find_extern(f.name) != nullptr || find_flip(f.name) != nullptr) {
      throw ParseError(f.loc, "duplicate top-level name '" + f.name + "'");
    }
    flips.push_back(f);
  }
}

}  // namespace flipkit
