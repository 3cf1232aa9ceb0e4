// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

// Partition checking for one side of a flippable: branch patterns must be
// pairwise disjoint and jointly exhaustive. Exhaustiveness is a usefulness
// question (is a wildcard row useful after all branch rows?), answered with
// a witness of a value no branch matches.

#include <map>
#include <optional>

#include "flipkit/checker.hpp"
#include "flipkit/render.hpp"
#include "types.hpp"

namespace flipkit {

using detail::Ty;
using detail::TyNode;

namespace {

struct Witness {
  enum class Kind { Wild, Ctor, Pair };
  Kind kind = Kind::Wild;
  std::string name;
  std::vector<Witness> args;
};

std::string show(const Witness& w) {
  switch (w.kind) {
    case Witness::Kind::Wild:
      return "_";
    case Witness::Kind::Pair:
      return "(" + show(w.args[0]) + " , " + show(w.args[1]) + ")";
    case Witness::Kind::Ctor: {
      std::string out = "(" + w.name;
      for (const Witness& a : w.args) out += " " + show(a);
      return out + ")";
    }
  }
  return {};
}

bool overlaps(const Pattern& a, const Pattern& b) {
  if (a.kind == Pattern::Kind::Var || b.kind == Pattern::Kind::Var) return true;
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) {
    return false;
  }
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!overlaps(a.args[i], b.args[i])) return false;
  }
  return true;
}

// A row entry of nullptr is a wildcard introduced by specialization.
using Row = std::vector<const Pattern*>;

bool is_wild(const Pattern* p) {
  return p == nullptr || p->kind == Pattern::Kind::Var;
}

struct Constructor {
  bool is_pair = false;
  std::string name;
  std::vector<Ty> arg_types;
};

class CoverageChecker {
 public:
  explicit CoverageChecker(const Program& program) : program_(program) {}

  /// A vector of values (one per column) matched by no row, if any.
  std::optional<std::vector<Witness>> missing(const std::vector<Row>& rows,
                                              const std::vector<Ty>& types) {
    if (types.empty()) {
      if (rows.empty()) return std::vector<Witness>{};
      return std::nullopt;
    }
    if (rows.empty()) return std::vector<Witness>(types.size());

    std::vector<Ty> rest(types.begin() + 1, types.end());
    bool head_has_ctor = false;
    for (const Row& r : rows) head_has_ctor = head_has_ctor || !is_wild(r[0]);

    if (!head_has_ctor) {
      std::vector<Row> tails;
      for (const Row& r : rows) tails.emplace_back(r.begin() + 1, r.end());
      auto found = missing(tails, rest);
      if (found) found->insert(found->begin(), Witness{});
      return found;
    }

    for (const Constructor& c : constructors(types[0])) {
      size_t arity = c.arg_types.size();
      std::vector<Row> specialized;
      for (const Row& r : rows) {
        const Pattern* head = r[0];
        Row next;
        if (is_wild(head)) {
          next.assign(arity, nullptr);
        } else if (c.is_pair ? head->kind == Pattern::Kind::Pair
                             : head->kind == Pattern::Kind::Ctor &&
                                   head->name == c.name) {
          for (const Pattern& a : head->args) next.push_back(&a);
        } else {
          continue;
        }
        next.insert(next.end(), r.begin() + 1, r.end());
        specialized.push_back(std::move(next));
      }
      std::vector<Ty> sub_types = c.arg_types;
      sub_types.insert(sub_types.end(), rest.begin(), rest.end());
      auto found = missing(specialized, sub_types);
      if (!found) continue;
      Witness w{c.is_pair ? Witness::Kind::Pair : Witness::Kind::Ctor, c.name,
                {}};
      w.args.assign(found->begin(), found->begin() + arity);
      std::vector<Witness> out{std::move(w)};
      out.insert(out.end(), found->begin() + arity, found->end());
      return out;
    }
    return std::nullopt;
  }

 private:
  std::vector<Constructor> constructors(const Ty& t) const {
    if (t->kind == TyNode::Kind::Pair) {
      return {Constructor{true, {}, {t->args[0], t->args[1]}}};
    }
    std::vector<Constructor> out;
    if (t->kind != TyNode::Kind::Con) return out;
    const DataDecl* data = program_.find_data(t->name);
    if (data == nullptr) return out;
    for (const CtorDecl& c : data->ctors) {
      out.push_back(
          Constructor{false, c.name, detail::ctor_arg_types(*data, c, t->args)});
    }
    return out;
  }

  const Program& program_;
};

}  // namespace

std::vector<CheckError> check_partition(const Program& program,
                                        const FlipDef& def, Side side) {
  std::vector<CheckError> errors;
  const bool input = side == Side::Input;
  const char* side_name = input ? "input" : "output";
  auto side_pattern = [&](const Branch& b) -> const Pattern& {
    return input ? b.lhs : b.rhs;
  };

  for (size_t j = 1; j < def.branches.size(); ++j) {
    for (size_t i = 0; i < j; ++i) {
      const Pattern& a = side_pattern(def.branches[i]);
      const Pattern& b = side_pattern(def.branches[j]);
      if (overlaps(a, b)) {
        errors.push_back(
            {CheckErrorKind::OverlappingPatterns, b.loc,
             std::string(side_name) + " pattern " + render(b) +
                 " of branch " + std::to_string(j + 1) + " overlaps " +
                 render(a) + " of branch " + std::to_string(i + 1)});
      }
    }
  }

  std::map<std::string, Ty> vars;
  auto make_rigid = [](const std::string& name) { return detail::rigid(name); };
  Ty type = detail::from_type_expr(input ? def.domain : def.codomain, vars,
                                   make_rigid);
  std::vector<Row> rows;
  for (const Branch& b : def.branches) rows.push_back({&side_pattern(b)});
  CoverageChecker coverage(program);
  if (auto witness = coverage.missing(rows, {type})) {
    errors.push_back({CheckErrorKind::NonExhaustivePatterns, def.loc,
                      std::string(side_name) + " patterns of '" + def.name +
                          "' do not cover " + show(witness->front())});
  }
  return errors;
}

}  // namespace flipkit
