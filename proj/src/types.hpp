// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_SRC_TYPES_HPP
#define FLIPKIT_SRC_TYPES_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "flipkit/ast.hpp"

namespace flipkit::detail {

struct TyNode;
using Ty = std::shared_ptr<const TyNode>;

/// Checker-internal type term. Rigid variables are the definition's own type
/// parameters; metas are unification unknowns.
struct TyNode {
  enum class Kind { Rigid, Meta, Con, Pair };
  Kind kind;
  std::string name;  // Rigid, Con
  int meta = -1;     // Meta
  std::vector<Ty> args;
};

Ty rigid(std::string name);
Ty con(std::string name, std::vector<Ty> args = {});
Ty pair_of(Ty left, Ty right);

class Unifier {
 public:
  Ty fresh();
  /// Follows solved metas at the root only.
  Ty shallow(Ty t) const;
  /// Fully substitutes solved metas.
  Ty zonk(const Ty& t) const;
  bool unify(const Ty& a, const Ty& b);
  std::string show(const Ty& t) const;
  TypeExpr to_type_expr(const Ty& t) const;

 private:
  bool occurs(int meta, const Ty& t) const;
  std::vector<Ty> solution_;
};

/// Converts a surface type. Type variables are looked up in `vars`; missing
/// ones are created via `make_var` and remembered.
template <typename MakeVar>
Ty from_type_expr(const TypeExpr& t, std::map<std::string, Ty>& vars,
                  MakeVar&& make_var) {
  switch (t.kind) {
    case TypeExpr::Kind::Var: {
      auto it = vars.find(t.name);
      if (it == vars.end()) it = vars.emplace(t.name, make_var(t.name)).first;
      return it->second;
    }
    case TypeExpr::Kind::Named: {
      std::vector<Ty> args;
      for (const TypeExpr& a : t.args) {
        args.push_back(from_type_expr(a, vars, make_var));
      }
      return con(t.name, std::move(args));
    }
    case TypeExpr::Kind::Pair:
      return pair_of(from_type_expr(t.left(), vars, make_var),
                     from_type_expr(t.right(), vars, make_var));
  }
  return nullptr;
}

/// Argument types of `ctor` of data type `decl` when the data type is applied
/// to `type_args`.
std::vector<Ty> ctor_arg_types(const DataDecl& decl, const CtorDecl& ctor,
                               const std::vector<Ty>& type_args);

}  // namespace flipkit::detail

#endif  // FLIPKIT_SRC_TYPES_HPP
