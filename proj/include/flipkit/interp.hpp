// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_INTERP_HPP
#define FLIPKIT_INTERP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "flipkit/ast.hpp"
#include "flipkit/checker.hpp"
#include "flipkit/error.hpp"
#include "flipkit/value.hpp"

namespace flipkit {

using Bindings = std::vector<std::pair<std::string, Value>>;

/// Structural match. Opaque values only ever match variable patterns.
std::optional<Bindings> match_pattern(const Pattern& pattern, const Value& value);
bool matches(const Pattern& pattern, const Value& value);

/// Linear variable frame. Every binding is consumed exactly once; a second
/// read is a RuntimeFault.
class Env {
 public:
  void bind(std::string name, Value value);
  /// Consumes the live binding of `name`.
  Value take(std::string_view name);
  /// Reads the live binding of `name` without consuming it.
  const Value& peek(std::string_view name) const;
  size_t live_count() const { return live_; }

 private:
  struct Slot {
    std::string name;
    Value value;
    bool consumed = false;
  };
  const Slot* find(std::string_view name) const;

  std::vector<Slot> slots_;
  size_t live_ = 0;
};

/// Builds the value described by `pattern`, consuming its variables.
Value build_pattern(const Pattern& pattern, Env& env);
/// Destructures `value` (which must match) into fresh bindings.
void bind_pattern(const Pattern& pattern, Value value, Env& env);

/// An argument for a flippable parameter: a bijection for `S <-> T`, a
/// family for the indexed form `I -> S <-> T`.
using FlipArg = std::variant<Bijection, BijectionFamily>;

struct EvalOptions {
  uint64_t step_budget = 10'000'000;
  /// Also verify that no later branch matches the selected one.
  bool check_disjoint_branches = true;
};

class RegistrationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluates checked programs in either direction. Bijections handed out
/// share the interpreter's immutable state and stay valid after it is gone.
class Interpreter {
 public:
  explicit Interpreter(CheckedProgram program, EvalOptions options = {});

  /// Makes a host bijection callable under the declared extern `name`.
  /// Throws RegistrationError for an undeclared name, a signature differing
  /// from the declaration, the wrong kind (family vs plain) or a repeat.
  void register_external(std::string_view name, Bijection bijection,
                         const ParamSig& signature);
  void register_external(std::string_view name, BijectionFamily family,
                         const ParamSig& signature);
  void register_external(std::string_view name, FlipArg arg,
                         std::string_view signature);

  Value eval_forward(std::string_view def, Value input,
                     std::vector<FlipArg> args = {}) const;
  Value eval_backward(std::string_view def, Value input,
                      std::vector<FlipArg> args = {}) const;
  /// The definition applied to `args` as a host bijection.
  Bijection bijection(std::string_view def, std::vector<FlipArg> args = {}) const;

  const CheckedProgram& program() const;
  const EvalOptions& options() const;

  struct State;

 private:
  void ensure_unique_state();

  std::shared_ptr<State> state_;
};

struct Interpreter::State {
  CheckedProgram program;
  EvalOptions options;
  std::map<std::string, FlipArg, std::less<>> externs;
  std::map<std::string, std::pair<const FlipDef*, const CheckedDef*>,
           std::less<>>
      defs;
};

inline const CheckedProgram& Interpreter::program() const {
  return state_->program;
}
inline const EvalOptions& Interpreter::options() const {
  return state_->options;
}

}  // namespace flipkit

#endif  // FLIPKIT_INTERP_HPP
