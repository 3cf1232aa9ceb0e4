// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_AST_HPP
#define FLIPKIT_AST_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flipkit {

/// Line/column of a syntax node, both 1-based. Zero means "synthesized".
struct SourceLoc {
  int line = 0;
  int col = 0;

  // Locations never participate in structural equality of the AST.
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

inline bool loc_before(const SourceLoc& a, const SourceLoc& b) {
  return a.line != b.line ? a.line < b.line : a.col < b.col;
}

bool is_reserved_word(std::string_view name);
bool is_lower_ident(std::string_view name);
bool is_upper_ident(std::string_view name);

// Builtin opaque types. Values of these types are never destructured.
inline constexpr std::string_view kMsgType = "Msg";
inline constexpr std::string_view kIntType = "Int";
bool is_builtin_type(std::string_view name);

struct TypeExpr {
  enum class Kind { Var, Named, Pair };

  Kind kind = Kind::Var;
  std::string name;            // Var, Named
  std::vector<TypeExpr> args;  // Named: type arguments; Pair: {left, right}
  SourceLoc loc;

  static TypeExpr var(std::string name, SourceLoc loc = {});
  static TypeExpr named(std::string name, std::vector<TypeExpr> args = {},
                        SourceLoc loc = {});
  static TypeExpr pair(TypeExpr left, TypeExpr right, SourceLoc loc = {});

  const TypeExpr& left() const { return args[0]; }
  const TypeExpr& right() const { return args[1]; }

  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

/// A pattern. There is deliberately no wildcard form.
struct Pattern {
  enum class Kind { Var, Ctor, Pair };

  Kind kind = Kind::Var;
  std::string name;           // Var: variable; Ctor: constructor
  std::vector<Pattern> args;  // Ctor: arguments; Pair: {left, right}
  SourceLoc loc;

  static Pattern var(std::string name, SourceLoc loc = {});
  static Pattern ctor(std::string name, std::vector<Pattern> args = {},
                      SourceLoc loc = {});
  static Pattern pair(Pattern left, Pattern right, SourceLoc loc = {});

  const Pattern& left() const { return args[0]; }
  const Pattern& right() const { return args[1]; }

  /// Variables in left-to-right order.
  std::vector<std::string> variables() const;
  void collect_variables(std::vector<const Pattern*>& out) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// The expression between `<` and `>` in a step.
struct FExpr {
  enum class Kind { Ref, App, Flip };

  Kind kind = Kind::Ref;
  std::string name;         // Ref
  std::vector<FExpr> args;  // App: {head, arg}; Flip: {inner}
  SourceLoc loc;

  static FExpr ref(std::string name, SourceLoc loc = {});
  static FExpr app(FExpr head, FExpr arg, SourceLoc loc = {});
  /// Wraps in `flip`, collapsing `flip (flip e)` to `e`.
  static FExpr flipped(FExpr inner, SourceLoc loc = {});

  const FExpr& head() const { return args[0]; }
  const FExpr& arg() const { return args[1]; }
  const FExpr& inner() const { return args[0]; }

  friend bool operator==(const FExpr&, const FExpr&) = default;
};

/// `out < fexpr > in`: `out` is built and fed forward, `in` binds the result.
struct Step {
  Pattern out;
  FExpr fexpr;
  Pattern in;
  SourceLoc loc;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Branch {
  Pattern lhs;
  std::vector<Step> steps;
  Pattern rhs;
  SourceLoc loc;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// `S <-> T`, or the indexed form `I -> S <-> T`.
struct ParamSig {
  std::optional<TypeExpr> index;
  TypeExpr domain;
  TypeExpr codomain;

  bool indexed() const { return index.has_value(); }

  friend bool operator==(const ParamSig&, const ParamSig&) = default;
};

struct Param {
  std::string name;
  ParamSig sig;
  SourceLoc loc;

  friend bool operator==(const Param&, const Param&) = default;
};

/// Provenance of a definition produced by the reverser.
struct ReversedMark {
  std::string original_name;
  bool reversed = true;

  friend bool operator==(const ReversedMark&, const ReversedMark&) = default;
};

struct FlipDef {
  std::string name;
  std::vector<Param> params;
  TypeExpr domain;
  TypeExpr codomain;
  std::vector<Branch> branches;
  SourceLoc loc;
  std::optional<ReversedMark> mark;

  const Param* find_param(std::string_view param) const;

  friend bool operator==(const FlipDef&, const FlipDef&) = default;
};

struct CtorDecl {
  std::string name;
  std::vector<TypeExpr> args;
  SourceLoc loc;

  friend bool operator==(const CtorDecl&, const CtorDecl&) = default;
};

struct DataDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<CtorDecl> ctors;
  SourceLoc loc;

  friend bool operator==(const DataDecl&, const DataDecl&) = default;
};

struct ExternDecl {
  std::string name;
  ParamSig sig;
  SourceLoc loc;

  friend bool operator==(const ExternDecl&, const ExternDecl&) = default;
};

struct Program {
  std::vector<DataDecl> data;
  std::vector<ExternDecl> externs;
  std::vector<FlipDef> flips;

  const DataDecl* find_data(std::string_view name) const;
  const ExternDecl* find_extern(std::string_view name) const;
  const FlipDef* find_flip(std::string_view name) const;
  /// The data declaration owning constructor `ctor`, and the constructor.
  std::pair<const DataDecl*, const CtorDecl*> find_ctor(
      std::string_view ctor) const;

  /// Appends every declaration of `other`; throws ParseError on a name clash.
  void merge(const Program& other);

  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace flipkit

#endif  // FLIPKIT_AST_HPP
