// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/generate.hpp"

#include <stdexcept>

namespace flipkit {

ValueGenerator::ValueGenerator(const Program& program, uint64_t seed,
                               int max_depth)
    : program_(program), rng_(seed), max_depth_(max_depth) {}

Value ValueGenerator::generate(const TypeExpr& type, const Instantiation& inst) {
  return gen(type, inst, 0);
}

Value ValueGenerator::gen(const TypeExpr& type, const Instantiation& inst,
                          int depth) {
  switch (type.kind) {
    case TypeExpr::Kind::Var: {
      auto it = inst.find(type.name);
      if (it != inst.end()) return gen(it->second, {}, depth);
      return gen(TypeExpr::named(std::string(kIntType)), {}, depth);
    }
    case TypeExpr::Kind::Pair: {
      Value left = gen(type.args[0], inst, depth + 1);
      return Value::pair(std::move(left), gen(type.args[1], inst, depth + 1));
    }
    case TypeExpr::Kind::Named:
      break;
  }
  if (type.name == kIntType) {
    return Value::integer(std::uniform_int_distribution<int64_t>(-1000, 1000)(rng_));
  }
  if (type.name == kMsgType) return Value::msg(ans::random_message(rng_));

  const DataDecl* decl = program_.find_data(type.name);
  if (decl == nullptr) {
    throw std::invalid_argument("no generator for type '" + type.name + "'");
  }
  Instantiation sub;
  for (size_t i = 0; i < decl->params.size() && i < type.args.size(); ++i) {
    sub.emplace(decl->params[i], type.args[i]);
  }
  // Arguments of `type` are closed over the caller's instantiation.
  for (auto& [name, t] : sub) {
    if (t.kind == TypeExpr::Kind::Var) {
      auto it = inst.find(t.name);
      t = it != inst.end() ? it->second : TypeExpr::named(std::string(kIntType));
    }
  }
  const CtorDecl* ctor = nullptr;
  if (depth >= max_depth_) {
    for (const CtorDecl& c : decl->ctors) {
      if (ctor == nullptr || c.args.size() < ctor->args.size()) ctor = &c;
    }
  } else {
    std::uniform_int_distribution<size_t> pick(0, decl->ctors.size() - 1);
    ctor = &decl->ctors[pick(rng_)];
  }
  std::vector<Value> args;
  for (const TypeExpr& field : ctor->args) {
    args.push_back(gen(field, sub, depth + 1));
  }
  return Value::ctor(ctor->name, std::move(args));
}

}  // namespace flipkit
