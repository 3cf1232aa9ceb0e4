// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/render.hpp"

namespace flipkit {

namespace {

std::string render_type_atom(const TypeExpr& type) {
  if (type.kind == TypeExpr::Kind::Named && !type.args.empty()) {
    return "(" + render(type) + ")";
  }
  return render(type);
}

std::string render_fexpr_atom(const FExpr& e) {
  if (e.kind == FExpr::Kind::Ref) return e.name;
  return "(" + render(e) + ")";
}

}  // namespace

std::string render(const TypeExpr& type) {
  switch (type.kind) {
    case TypeExpr::Kind::Var:
      return type.name;
    case TypeExpr::Kind::Named: {
      std::string out = type.name;
      for (const TypeExpr& arg : type.args) out += " " + render_type_atom(arg);
      return out;
    }
    case TypeExpr::Kind::Pair:
      return "(" + render(type.left()) + " , " + render(type.right()) + ")";
  }
  return {};
}

std::string render(const ParamSig& sig) {
  std::string out;
  if (sig.index) out = render(*sig.index) + " -> ";
  return out + render(sig.domain) + " <-> " + render(sig.codomain);
}

std::string render(const Pattern& pattern) {
  switch (pattern.kind) {
    case Pattern::Kind::Var:
      return pattern.name;
    case Pattern::Kind::Ctor: {
      std::string out = "(" + pattern.name;
      for (const Pattern& arg : pattern.args) out += " " + render(arg);
      return out + ")";
    }
    case Pattern::Kind::Pair:
      return "(" + render(pattern.left()) + " , " + render(pattern.right()) +
             ")";
  }
  return {};
}

std::string render(const FExpr& fexpr) {
  switch (fexpr.kind) {
    case FExpr::Kind::Ref:
      return fexpr.name;
    case FExpr::Kind::App: {
      // Application is left-associative and `flip` binds a single atom, so
      // the head never needs parentheses.
      return render(fexpr.head()) + " " + render_fexpr_atom(fexpr.arg());
    }
    case FExpr::Kind::Flip:
      return "flip " + render_fexpr_atom(fexpr.inner());
  }
  return {};
}

std::string render(const Branch& branch) {
  std::string out = render(branch.lhs) + " <-> ";
  for (const Step& step : branch.steps) {
    out += render(step.out) + " < " + render(step.fexpr) + " > " +
           render(step.in) + " <-> ";
  }
  return out + render(branch.rhs);
}

std::string render(const FlipDef& def) {
  std::string out;
  if (def.mark && def.mark->reversed) {
    out += "-- reversed from " + def.mark->original_name + "\n";
  }
  out += "flip " + def.name;
  for (const Param& p : def.params) {
    out += " (" + p.name + " : " + render(p.sig) + ")";
  }
  out += " : " + render(def.domain) + " <-> " + render(def.codomain) + " = ";
  if (def.branches.size() == 1) {
    return out + "{ " + render(def.branches.front()) + " }";
  }
  out += "{\n";
  for (size_t i = 0; i < def.branches.size(); ++i) {
    out += "    " + render(def.branches[i]);
    out += i + 1 < def.branches.size() ? ";\n" : "\n";
  }
  return out + "  }";
}

std::string render(const DataDecl& decl) {
  std::string out = "data " + decl.name;
  for (const std::string& p : decl.params) out += " " + p;
  out += " =";
  for (size_t i = 0; i < decl.ctors.size(); ++i) {
    out += i == 0 ? " " : " | ";
    out += decl.ctors[i].name;
    for (const TypeExpr& arg : decl.ctors[i].args) {
      out += " " + render_type_atom(arg);
    }
  }
  return out;
}

std::string render(const ExternDecl& decl) {
  return "extern " + decl.name + " : " + render(decl.sig);
}

std::string render(const Program& program) {
  std::string out;
  for (const DataDecl& d : program.data) out += render(d) + "\n";
  if (!program.data.empty() && !program.externs.empty()) out += "\n";
  for (const ExternDecl& e : program.externs) out += render(e) + "\n";
  for (const FlipDef& f : program.flips) {
    if (!out.empty()) out += "\n";
    out += render(f) + "\n";
  }
  return out;
}

}  // namespace flipkit
