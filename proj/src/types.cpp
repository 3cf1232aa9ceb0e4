// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "types.hpp"

namespace flipkit::detail {

Ty rigid(std::string name) {
  return std::make_shared<TyNode>(
      TyNode{TyNode::Kind::Rigid, std::move(name), -1, {}});
}

Ty con(std::string name, std::vector<Ty> args) {
  return std::make_shared<TyNode>(
      TyNode{TyNode::Kind::Con, std::move(name), -1, std::move(args)});
}

Ty pair_of(Ty left, Ty right) {
  return std::make_shared<TyNode>(
      TyNode{TyNode::Kind::Pair, {}, -1, {std::move(left), std::move(right)}});
}

Ty Unifier::fresh() {
  int id = static_cast<int>(solution_.size());
  solution_.push_back(nullptr);
  return std::make_shared<TyNode>(TyNode{TyNode::Kind::Meta, {}, id, {}});
}

Ty Unifier::shallow(Ty t) const {
  while (t->kind == TyNode::Kind::Meta && solution_[t->meta] != nullptr) {
    t = solution_[t->meta];
  }
  return t;
}

Ty Unifier::zonk(const Ty& t) const {
  Ty s = shallow(t);
  if (s->args.empty()) return s;
  std::vector<Ty> args;
  args.reserve(s->args.size());
  for (const Ty& a : s->args) args.push_back(zonk(a));
  return std::make_shared<TyNode>(TyNode{s->kind, s->name, s->meta, args});
}

bool Unifier::occurs(int meta, const Ty& t) const {
  Ty s = shallow(t);
  if (s->kind == TyNode::Kind::Meta) return s->meta == meta;
  for (const Ty& a : s->args) {
    if (occurs(meta, a)) return true;
  }
  return false;
}

bool Unifier::unify(const Ty& a, const Ty& b) {
  Ty x = shallow(a);
  Ty y = shallow(b);
  if (x->kind == TyNode::Kind::Meta && y->kind == TyNode::Kind::Meta &&
      x->meta == y->meta) {
    return true;
  }
  if (x->kind == TyNode::Kind::Meta) {
    if (occurs(x->meta, y)) return false;
    solution_[x->meta] = y;
    return true;
  }
  if (y->kind == TyNode::Kind::Meta) return unify(y, x);
  if (x->kind != y->kind || x->name != y->name ||
      x->args.size() != y->args.size()) {
    return false;
  }
  for (size_t i = 0; i < x->args.size(); ++i) {
    if (!unify(x->args[i], y->args[i])) return false;
  }
  return true;
}

std::string Unifier::show(const Ty& t) const {
  Ty s = shallow(t);
  switch (s->kind) {
    case TyNode::Kind::Rigid: return s->name;
    case TyNode::Kind::Meta: return "?" + std::to_string(s->meta);
    case TyNode::Kind::Pair:
      return "(" + show(s->args[0]) + " , " + show(s->args[1]) + ")";
    case TyNode::Kind::Con: {
      std::string out = s->name;
      for (const Ty& a : s->args) {
        Ty sa = shallow(a);
        bool paren = sa->kind == TyNode::Kind::Con && !sa->args.empty();
        out += " " + (paren ? "(" + show(sa) + ")" : show(sa));
      }
      return out;
    }
  }
  return {};
}

TypeExpr Unifier::to_type_expr(const Ty& t) const {
  Ty s = shallow(t);
  switch (s->kind) {
    case TyNode::Kind::Rigid: return TypeExpr::var(s->name);
    case TyNode::Kind::Meta: return TypeExpr::var("?" + std::to_string(s->meta));
    case TyNode::Kind::Pair:
      return TypeExpr::pair(to_type_expr(s->args[0]), to_type_expr(s->args[1]));
    case TyNode::Kind::Con: {
      std::vector<TypeExpr> args;
      for (const Ty& a : s->args) args.push_back(to_type_expr(a));
      return TypeExpr::named(s->name, std::move(args));
    }
  }
  return {};
}

std::vector<Ty> ctor_arg_types(const DataDecl& decl, const CtorDecl& ctor,
                               const std::vector<Ty>& type_args) {
  std::map<std::string, Ty> vars;
  for (size_t i = 0; i < decl.params.size() && i < type_args.size(); ++i) {
    vars.emplace(decl.params[i], type_args[i]);
  }
  // Unknown variables were already reported by the declaration check.
  auto make_var = [](const std::string& name) { return rigid(name); };
  std::vector<Ty> out;
  out.reserve(ctor.args.size());
  for (const TypeExpr& a : ctor.args) {
    out.push_back(from_type_expr(a, vars, make_var));
  }
  return out;
}

}  // namespace flipkit::detail
