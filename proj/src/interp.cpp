// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/interp.hpp"

#include "flipkit/parser.hpp"
#include "flipkit/render.hpp"

namespace flipkit {

bool matches(const Pattern& pattern, const Value& value) {
  switch (pattern.kind) {
    case Pattern::Kind::Var:
      return true;
    case Pattern::Kind::Pair:
      return value.kind() == Value::Kind::Pair &&
             matches(pattern.left(), value.left()) &&
             matches(pattern.right(), value.right());
    case Pattern::Kind::Ctor:
      if (value.kind() != Value::Kind::Ctor ||
          value.ctor_name() != pattern.name ||
          value.args().size() != pattern.args.size()) {
        return false;
      }
      for (size_t i = 0; i < pattern.args.size(); ++i) {
        if (!matches(pattern.args[i], value.args()[i])) return false;
      }
      return true;
  }
  return false;
}

namespace {

void collect_bindings(const Pattern& pattern, const Value& value,
                      Bindings& out) {
  if (pattern.kind == Pattern::Kind::Var) {
    out.emplace_back(pattern.name, value);
    return;
  }
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    collect_bindings(pattern.args[i], value.args()[i], out);
  }
}

}  // namespace

std::optional<Bindings> match_pattern(const Pattern& pattern,
                                      const Value& value) {
  if (!matches(pattern, value)) return std::nullopt;
  Bindings out;
  collect_bindings(pattern, value, out);
  return out;
}

void Env::bind(std::string name, Value value) {
  if (const Slot* live = find(name); live != nullptr) {
    throw RuntimeFault("'" + name + "' rebound while still live");
  }
  slots_.push_back(Slot{std::move(name), std::move(value), false});
  ++live_;
}

const Env::Slot* Env::find(std::string_view name) const {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    if (it->name == name && !it->consumed) return &*it;
  }
  return nullptr;
}

Value Env::take(std::string_view name) {
  auto* slot = const_cast<Slot*>(find(name));
  if (slot == nullptr) {
    throw RuntimeFault("read of absent or already consumed binding '" +
                       std::string(name) + "'");
  }
  slot->consumed = true;
  --live_;
  return std::move(slot->value);
}

const Value& Env::peek(std::string_view name) const {
  const Slot* slot = find(name);
  if (slot == nullptr) {
    throw RuntimeFault("reference to absent or already consumed binding '" +
                       std::string(name) + "'");
  }
  return slot->value;
}

Value build_pattern(const Pattern& pattern, Env& env) {
  switch (pattern.kind) {
    case Pattern::Kind::Var:
      return env.take(pattern.name);
    case Pattern::Kind::Pair: {
      Value left = build_pattern(pattern.left(), env);
      return Value::pair(std::move(left), build_pattern(pattern.right(), env));
    }
    case Pattern::Kind::Ctor: {
      std::vector<Value> args;
      args.reserve(pattern.args.size());
      for (const Pattern& a : pattern.args) args.push_back(build_pattern(a, env));
      return Value::ctor(pattern.name, std::move(args));
    }
  }
  return {};
}

void bind_pattern(const Pattern& pattern, Value value, Env& env) {
  if (pattern.kind == Pattern::Kind::Var) {
    env.bind(pattern.name, std::move(value));
    return;
  }
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    bind_pattern(pattern.args[i], std::move(value.args()[i]), env);
  }
}

namespace {

using State = Interpreter::State;

struct Budget {
  uint64_t remaining;

  void tick() {
    if (remaining == 0) throw RuntimeFault("step budget exhausted");
    --remaining;
  }
};

enum class Direction { Forward, Backward };

Bijection def_bijection(std::shared_ptr<const State> state,
                        std::string_view def, std::vector<FlipArg> args,
                        std::shared_ptr<Budget> budget);

/// A flippable expression evaluated as far as its arguments allow.
struct Callable {
  std::optional<Bijection> bijection;
  BijectionFamily family;
  const FlipDef* def = nullptr;
  std::vector<FlipArg> args;
};

class Evaluator {
 public:
  Evaluator(std::shared_ptr<const State> state, const std::vector<FlipArg>& params,
            std::shared_ptr<Budget> budget)
      : state_(std::move(state)), params_(params), budget_(std::move(budget)) {}

  Value run(const FlipDef& def, const CheckedDef& checked, Value input,
            Direction dir) {
    budget_->tick();
    const bool fwd = dir == Direction::Forward;
    auto entry = [&](const Branch& b) -> const Pattern& {
      return fwd ? b.lhs : b.rhs;
    };
    size_t chosen = def.branches.size();
    for (size_t i = 0; i < def.branches.size(); ++i) {
      if (matches(entry(def.branches[i]), input)) {
        chosen = i;
        break;
      }
    }
    if (chosen == def.branches.size()) {
      throw RuntimeFault("no branch of '" + def.name + "' matches " +
                         render(input) + (fwd ? " (forward)" : " (backward)"));
    }
    if (state_->options.check_disjoint_branches) {
      for (size_t i = chosen + 1; i < def.branches.size(); ++i) {
        if (matches(entry(def.branches[i]), input)) {
          throw RuntimeFault("branches " + std::to_string(chosen + 1) +
                             " and " + std::to_string(i + 1) + " of '" +
                             def.name + "' both match " + render(input));
        }
      }
    }

    const Branch& branch = def.branches[chosen];
    const CheckedBranch& info = checked.branches[chosen];
    Env env;
    bind_pattern(entry(branch), std::move(input), env);
    const size_t n = branch.steps.size();
    for (size_t k = 0; k < n; ++k) {
      const size_t s = fwd ? k : n - 1 - k;
      const Step& step = branch.steps[s];
      budget_->tick();
      Bijection f = saturate(resolve(info.steps[s], env), def.name);
      Value fed = build_pattern(fwd ? step.out : step.in, env);
      Value got = fwd ? f.forward(std::move(fed)) : f.backward(std::move(fed));
      const Pattern& target = fwd ? step.in : step.out;
      if (!matches(target, got)) {
        throw RuntimeFault("step " + std::to_string(s + 1) + " of '" +
                           def.name + "' produced " + render(got) +
                           ", which does not match " + render(target));
      }
      bind_pattern(target, std::move(got), env);
    }
    Value out = build_pattern(fwd ? branch.rhs : branch.lhs, env);
    if (env.live_count() != 0) {
      throw RuntimeFault("branch " + std::to_string(chosen + 1) + " of '" +
                         def.name + "' ended with live bindings");
    }
    return out;
  }

 private:
  Callable resolve(const ResolvedFExpr& e, const Env& env) {
    switch (e.kind) {
      case ResolvedFExpr::Kind::Def: {
        auto it = state_->defs.find(e.name);
        Callable c;
        c.def = it->second.first;
        return c;
      }
      case ResolvedFExpr::Kind::Extern: {
        auto it = state_->externs.find(e.name);
        if (it == state_->externs.end()) {
          throw RuntimeFault("extern '" + e.name + "' is not registered");
        }
        return from_arg(it->second);
      }
      case ResolvedFExpr::Kind::Param:
        return from_arg(params_.at(static_cast<size_t>(e.param_index)));
      case ResolvedFExpr::Kind::Var:
        throw RuntimeFault("variable '" + e.name + "' used as a flippable");
      case ResolvedFExpr::Kind::Flip: {
        Bijection inner = saturate(resolve(e.args[0], env), "flip");
        Callable c;
        c.bijection = inner.flipped();
        return c;
      }
      case ResolvedFExpr::Kind::App: {
        Callable head = resolve(e.args[0], env);
        const ResolvedFExpr& arg = e.args[1];
        if (head.family) {
          Callable c;
          c.bijection = head.family(env.peek(arg.name));
          return c;
        }
        if (head.def == nullptr) {
          throw RuntimeFault("too many arguments in flippable application");
        }
        Callable a = resolve(arg, env);
        if (a.family) {
          head.args.emplace_back(std::move(a.family));
        } else {
          head.args.emplace_back(saturate(std::move(a), "argument"));
        }
        return head;
      }
    }
    throw RuntimeFault("unresolvable flippable expression");
  }

  static Callable from_arg(const FlipArg& arg) {
    Callable c;
    if (const auto* b = std::get_if<Bijection>(&arg)) {
      c.bijection = *b;
    } else {
      c.family = std::get<BijectionFamily>(arg);
    }
    return c;
  }

  Bijection saturate(Callable c, std::string_view where) {
    if (c.bijection) return std::move(*c.bijection);
    if (c.def != nullptr && c.args.size() == c.def->params.size()) {
      return def_bijection(state_, c.def->name, std::move(c.args), budget_);
    }
    throw RuntimeFault("partially applied flippable in " + std::string(where));
  }

  std::shared_ptr<const State> state_;
  const std::vector<FlipArg>& params_;
  std::shared_ptr<Budget> budget_;
};

Value run_def(const std::shared_ptr<const State>& state, std::string_view name,
              const std::vector<FlipArg>& args, Value input, Direction dir,
              std::shared_ptr<Budget> budget) {
  auto it = state->defs.find(name);
  if (it == state->defs.end()) {
    throw RuntimeFault("unknown flippable '" + std::string(name) + "'");
  }
  const auto [def, checked] = it->second;
  if (args.size() != def->params.size()) {
    throw RuntimeFault("'" + def->name + "' takes " +
                       std::to_string(def->params.size()) +
                       " flippable argument(s), given " +
                       std::to_string(args.size()));
  }
  if (!budget) budget = std::make_shared<Budget>(Budget{state->options.step_budget});
  Evaluator eval(state, args, std::move(budget));
  return eval.run(*def, *checked, std::move(input), dir);
}

Bijection def_bijection(std::shared_ptr<const State> state,
                        std::string_view def, std::vector<FlipArg> args,
                        std::shared_ptr<Budget> budget) {
  auto shared_args = std::make_shared<const std::vector<FlipArg>>(std::move(args));
  std::string name(def);
  return Bijection(
      [state, name, shared_args, budget](Value v) {
        return run_def(state, name, *shared_args, std::move(v),
                       Direction::Forward, budget);
      },
      [state, name, shared_args, budget](Value v) {
        return run_def(state, name, *shared_args, std::move(v),
                       Direction::Backward, budget);
      });
}

}  // namespace

Interpreter::Interpreter(CheckedProgram program, EvalOptions options)
    : state_(std::make_shared<State>()) {
  state_->program = std::move(program);
  state_->options = options;
  const auto& flips = state_->program.program.flips;
  for (size_t i = 0; i < flips.size(); ++i) {
    state_->defs.emplace(flips[i].name,
                         std::make_pair(&flips[i], &state_->program.defs[i]));
  }
}

void Interpreter::ensure_unique_state() {
  // Bijections handed out earlier keep the old state alive and unchanged.
  if (state_.use_count() > 1) {
    auto copy = std::make_shared<State>();
    copy->program = state_->program;
    copy->options = state_->options;
    copy->externs = state_->externs;
    const auto& flips = copy->program.program.flips;
    for (size_t i = 0; i < flips.size(); ++i) {
      copy->defs.emplace(flips[i].name,
                         std::make_pair(&flips[i], &copy->program.defs[i]));
    }
    state_ = std::move(copy);
  }
}

void Interpreter::register_external(std::string_view name, FlipArg arg,
                                    std::string_view signature) {
  ParamSig sig = parse_param_sig(signature);
  if (auto* b = std::get_if<Bijection>(&arg)) {
    register_external(name, std::move(*b), sig);
  } else {
    register_external(name, std::get<BijectionFamily>(std::move(arg)), sig);
  }
}

void Interpreter::register_external(std::string_view name,
                                    Bijection bijection,
                                    const ParamSig& signature) {
  const ExternDecl* decl = state_->program.program.find_extern(name);
  if (decl == nullptr) {
    throw RegistrationError("'" + std::string(name) +
                            "' is not declared extern");
  }
  if (!(decl->sig == signature)) {
    throw RegistrationError("signature mismatch for '" + std::string(name) +
                            "': declared " + render(decl->sig) + ", given " +
                            render(signature));
  }
  if (decl->sig.indexed()) {
    throw RegistrationError("'" + std::string(name) +
                            "' is declared indexed; register a family");
  }
  if (state_->externs.count(name) != 0) {
    throw RegistrationError("'" + std::string(name) + "' already registered");
  }
  ensure_unique_state();
  state_->externs.emplace(std::string(name), std::move(bijection));
}

void Interpreter::register_external(std::string_view name,
                                    BijectionFamily family,
                                    const ParamSig& signature) {
  const ExternDecl* decl = state_->program.program.find_extern(name);
  if (decl == nullptr) {
    throw RegistrationError("'" + std::string(name) +
                            "' is not declared extern");
  }
  if (!(decl->sig == signature)) {
    throw RegistrationError("signature mismatch for '" + std::string(name) +
                            "': declared " + render(decl->sig) + ", given " +
                            render(signature));
  }
  if (!decl->sig.indexed()) {
    throw RegistrationError("'" + std::string(name) +
                            "' is not indexed; register a plain bijection");
  }
  if (state_->externs.count(name) != 0) {
    throw RegistrationError("'" + std::string(name) + "' already registered");
  }
  ensure_unique_state();
  state_->externs.emplace(std::string(name), std::move(family));
}

Value Interpreter::eval_forward(std::string_view def, Value input,
                                std::vector<FlipArg> args) const {
  return run_def(state_, def, args, std::move(input), Direction::Forward,
                 nullptr);
}

Value Interpreter::eval_backward(std::string_view def, Value input,
                                 std::vector<FlipArg> args) const {
  return run_def(state_, def, args, std::move(input), Direction::Backward,
                 nullptr);
}

Bijection Interpreter::bijection(std::string_view def,
                                 std::vector<FlipArg> args) const {
  if (state_->defs.find(def) == state_->defs.end()) {
    throw RuntimeFault("unknown flippable '" + std::string(def) + "'");
  }
  return def_bijection(state_, def, std::move(args), nullptr);
}

}  // namespace flipkit
