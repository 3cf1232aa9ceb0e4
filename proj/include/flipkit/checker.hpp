// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_CHECKER_HPP
#define FLIPKIT_CHECKER_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flipkit/ast.hpp"

namespace flipkit {

enum class CheckErrorKind {
  NonlinearUse,
  UnusedVariable,
  OutOfWindowReference,
  OverlappingPatterns,
  NonExhaustivePatterns,
  RebindBeforeConsume,
  TypeMismatch,
  UnknownName,
  ArityMismatch,
};

inline constexpr std::array<CheckErrorKind, 9> kAllCheckErrorKinds = {
    CheckErrorKind::NonlinearUse,         CheckErrorKind::UnusedVariable,
    CheckErrorKind::OutOfWindowReference, CheckErrorKind::OverlappingPatterns,
    CheckErrorKind::NonExhaustivePatterns, CheckErrorKind::RebindBeforeConsume,
    CheckErrorKind::TypeMismatch,         CheckErrorKind::UnknownName,
    CheckErrorKind::ArityMismatch,
};

std::string_view to_string(CheckErrorKind kind);

struct CheckError {
  CheckErrorKind kind;
  SourceLoc site;
  std::string detail;
};

/// `<file>:<line>:<col>: <KIND>: <detail>`
std::string format_diagnostic(std::string_view file, const CheckError& error);

/// Sorts by source position, then kind, then detail.
void sort_errors(std::vector<CheckError>& errors);

// Positions within a branch: 0 is the lhs, i in [1, n] is step i (its
// out-pattern consumes, its fexpr may reference, its in-pattern binds), and
// n + 1 is the rhs.

/// One binding instance. A name rebound after consumption yields a new
/// Binding, so names are not unique within a branch.
struct Binding {
  std::string name;
  int bind_pos = 0;
  std::optional<int> consume_pos;
  SourceLoc bind_site;
  SourceLoc consume_site;
  bool shadowed = false;  // rebound while still live (already reported)
};

struct BranchUsage {
  std::vector<Binding> bindings;
  int step_count = 0;
  /// Per position, binding indices introduced by its pattern, in pattern
  /// variable order.
  std::vector<std::vector<int>> bound_at;
  /// Per position, binding index consumed by each variable occurrence of its
  /// pattern (in order), or -1 when the occurrence is unbound or repeated.
  std::vector<std::vector<int>> consumed_at;

  /// Most recent binding of `name` bound strictly before `pos`.
  const Binding* visible_at(std::string_view name, int pos) const;
  bool binds(std::string_view name) const;
};

struct UsageTable {
  std::vector<BranchUsage> branches;
};

struct LinearityResult {
  UsageTable table;
  std::vector<CheckError> errors;
};

/// Every variable bound by a branch lhs or a step in-pattern must be consumed
/// exactly once, by a later step out-pattern or the branch rhs. References
/// inside `< ... >` are not consumption.
LinearityResult check_linearity(const FlipDef& def);

/// A step's flippable expression with every identifier resolved.
struct ResolvedFExpr {
  enum class Kind { Def, Extern, Param, Var, App, Flip };

  Kind kind = Kind::Def;
  std::string name;      // Def, Extern, Param, Var
  int param_index = -1;  // Param
  std::vector<ResolvedFExpr> args;  // App: {head, arg}; Flip: {inner}
  SourceLoc loc;
};

struct ResolutionResult {
  /// [branch][step]
  std::vector<std::vector<ResolvedFExpr>> steps;
  std::vector<CheckError> errors;
};

/// Resolves flippable names. Head identifiers resolve to a parameter, then an
/// extern, then a top-level flippable. An argument identifier that the
/// branch binds as a variable is a variable reference; otherwise it names a
/// flippable.
ResolutionResult resolve_names(const Program& program, const FlipDef& def,
                               const UsageTable& usage);

/// Every variable referenced inside `< ... >` at step i must have its binding
/// strictly before i and its consumption strictly after i.
std::vector<CheckError> check_scope_windows(
    const FlipDef& def, const UsageTable& usage,
    const ResolutionResult& resolution);

struct BranchTyping {
  /// Parallel to BranchUsage::bindings. Unsolved unknowns print as `?n`.
  std::vector<TypeExpr> binding_types;
};

struct TypingResult {
  std::vector<BranchTyping> branches;
  std::vector<CheckError> errors;
};

/// Unification-based checking of patterns and steps against the declared
/// signature. Type variables of the definition's own signature are rigid;
/// signatures of referenced flippables are instantiated afresh per use.
TypingResult check_types(const Program& program, const FlipDef& def,
                         const UsageTable& usage,
                         const ResolutionResult& resolution);

enum class Side { Input, Output };

/// The branch patterns on one side must be pairwise disjoint and jointly
/// exhaustive for the declared domain (Input) or codomain (Output) type.
std::vector<CheckError> check_partition(const Program& program,
                                        const FlipDef& def, Side side);

/// Well-formedness of data, extern and flippable signatures: every named
/// type declared with matching arity, every data type variable a parameter.
std::vector<CheckError> check_declarations(const Program& program);

struct CheckedBranch {
  BranchUsage usage;
  std::vector<ResolvedFExpr> steps;
  std::vector<TypeExpr> binding_types;
};

struct CheckedDef {
  std::string name;
  std::vector<CheckedBranch> branches;
};

/// A program that passed every check. Stands in for the inverse proofs: the
/// construction rules it enforces make backward(forward(v)) == v hold.
struct CheckedProgram {
  Program program;
  std::vector<CheckedDef> defs;  // parallel to program.flips

  const FlipDef* find_flip(std::string_view name) const {
    return program.find_flip(name);
  }
  const CheckedDef* find_checked(std::string_view name) const;
};

struct CheckResult {
  std::optional<CheckedProgram> checked;
  std::vector<CheckError> errors;  // sorted; empty iff checked is set

  bool ok() const { return checked.has_value(); }
};

CheckResult check_program(Program program);

}  // namespace flipkit

#endif  // FLIPKIT_CHECKER_HPP
