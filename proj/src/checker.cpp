// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/checker.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "flipkit/render.hpp"
#include "types.hpp"

namespace flipkit {

using detail::Ty;
using detail::TyNode;
using detail::Unifier;

std::string_view to_string(CheckErrorKind kind) {
  switch (kind) {
    case CheckErrorKind::NonlinearUse: return "NonlinearUse";
    case CheckErrorKind::UnusedVariable: return "UnusedVariable";
    case CheckErrorKind::OutOfWindowReference: return "OutOfWindowReference";
    case CheckErrorKind::OverlappingPatterns: return "OverlappingPatterns";
    case CheckErrorKind::NonExhaustivePatterns: return "NonExhaustivePatterns";
    case CheckErrorKind::RebindBeforeConsume: return "RebindBeforeConsume";
    case CheckErrorKind::TypeMismatch: return "TypeMismatch";
    case CheckErrorKind::UnknownName: return "UnknownName";
    case CheckErrorKind::ArityMismatch: return "ArityMismatch";
  }
  return "Unknown";
}

std::string format_diagnostic(std::string_view file, const CheckError& error) {
  return std::string(file) + ":" + std::to_string(error.site.line) + ":" +
         std::to_string(error.site.col) + ": " +
         std::string(to_string(error.kind)) + ": " + error.detail;
}

void sort_errors(std::vector<CheckError>& errors) {
  std::stable_sort(errors.begin(), errors.end(),
                   [](const CheckError& a, const CheckError& b) {
                     if (a.site.line != b.site.line) {
                       return a.site.line < b.site.line;
                     }
                     if (a.site.col != b.site.col) return a.site.col < b.site.col;
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.detail < b.detail;
                   });
}

const Binding* BranchUsage::visible_at(std::string_view name, int pos) const {
  const Binding* found = nullptr;
  for (const Binding& b : bindings) {
    if (b.name == name && b.bind_pos < pos) found = &b;
  }
  return found;
}

bool BranchUsage::binds(std::string_view name) const {
  return std::any_of(bindings.begin(), bindings.end(),
                     [&](const Binding& b) { return b.name == name; });
}

const CheckedDef* CheckedProgram::find_checked(std::string_view name) const {
  for (const CheckedDef& d : defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

std::string site_text(SourceLoc loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

std::string position_text(int pos, int step_count) {
  if (pos == 0) return "the branch input";
  if (pos == step_count + 1) return "the branch output";
  return "step " + std::to_string(pos);
}

// -- linearity ---------------------------------------------------------------

class LinearityWalker {
 public:
  LinearityWalker(BranchUsage& usage, std::vector<CheckError>& errors)
      : usage_(usage), errors_(errors) {}

  void bind(const Pattern& pattern, int pos) {
    std::vector<const Pattern*> vars;
    pattern.collect_variables(vars);
    auto& introduced = usage_.bound_at[pos];
    for (const Pattern* v : vars) {
      int live = latest(v->name);
      if (live >= 0 && !usage_.bindings[live].consume_pos) {
        Binding& old = usage_.bindings[live];
        old.shadowed = true;
        errors_.push_back(
            {CheckErrorKind::RebindBeforeConsume, v->loc,
             "'" + v->name + "' is rebound at " +
                 position_text(pos, usage_.step_count) +
                 " while its binding from " + site_text(old.bind_site) +
                 " is still live"});
      }
      introduced.push_back(static_cast<int>(usage_.bindings.size()));
      usage_.bindings.push_back(Binding{v->name, pos, std::nullopt, v->loc, {},
                                        false});
    }
  }

  void consume(const Pattern& pattern, int pos) {
    std::vector<const Pattern*> vars;
    pattern.collect_variables(vars);
    auto& consumed = usage_.consumed_at[pos];
    for (const Pattern* v : vars) {
      int idx = latest(v->name);
      if (idx < 0) {
        errors_.push_back({CheckErrorKind::UnknownName, v->loc,
                           "variable '" + v->name + "' is not bound"});
        consumed.push_back(-1);
        continue;
      }
      Binding& b = usage_.bindings[idx];
      if (b.consume_pos) {
        errors_.push_back({CheckErrorKind::NonlinearUse, v->loc,
                           "'" + v->name + "' is used more than once (already "
                           "consumed at " + site_text(b.consume_site) + ")"});
        consumed.push_back(-1);
        continue;
      }
      b.consume_pos = pos;
      b.consume_site = v->loc;
      consumed.push_back(idx);
    }
  }

  void finish() {
    for (const Binding& b : usage_.bindings) {
      if (!b.consume_pos && !b.shadowed) {
        errors_.push_back({CheckErrorKind::UnusedVariable, b.bind_site,
                           "'" + b.name + "' is bound but never used"});
      }
    }
  }

 private:
  int latest(std::string_view name) const {
    for (int i = static_cast<int>(usage_.bindings.size()) - 1; i >= 0; --i) {
      if (usage_.bindings[i].name == name) return i;
    }
    return -1;
  }

  BranchUsage& usage_;
  std::vector<CheckError>& errors_;
};

// -- signatures ---------------------------------------------------------------

struct FSig;

struct SigArg {
  bool is_value = false;
  Ty index;                          // is_value
  std::shared_ptr<const FSig> flip;  // !is_value
};

/// Signature of a flippable expression: remaining arguments, then S <-> T.
struct FSig {
  std::vector<SigArg> args;
  Ty dom;
  Ty cod;
};

template <typename MakeVar>
FSig sig_from_param(const ParamSig& sig, std::map<std::string, Ty>& vars,
                    MakeVar&& make_var) {
  FSig out;
  if (sig.index) {
    out.args.push_back(
        SigArg{true, detail::from_type_expr(*sig.index, vars, make_var), {}});
  }
  out.dom = detail::from_type_expr(sig.domain, vars, make_var);
  out.cod = detail::from_type_expr(sig.codomain, vars, make_var);
  return out;
}

template <typename MakeVar>
FSig sig_from_def(const FlipDef& def, std::map<std::string, Ty>& vars,
                  MakeVar&& make_var) {
  FSig out;
  for (const Param& p : def.params) {
    out.args.push_back(SigArg{
        false, nullptr,
        std::make_shared<const FSig>(sig_from_param(p.sig, vars, make_var))});
  }
  out.dom = detail::from_type_expr(def.domain, vars, make_var);
  out.cod = detail::from_type_expr(def.codomain, vars, make_var);
  return out;
}

std::string show_sig(const Unifier& u, const FSig& sig) {
  std::string out;
  for (const SigArg& a : sig.args) {
    out += a.is_value ? u.show(a.index) : "(" + show_sig(u, *a.flip) + ")";
    out += " -> ";
  }
  return out + u.show(sig.dom) + " <-> " + u.show(sig.cod);
}

bool unify_sig(Unifier& u, const FSig& a, const FSig& b) {
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const SigArg& x = a.args[i];
    const SigArg& y = b.args[i];
    if (x.is_value != y.is_value) return false;
    if (x.is_value ? !u.unify(x.index, y.index)
                   : !unify_sig(u, *x.flip, *y.flip)) {
      return false;
    }
  }
  return u.unify(a.dom, b.dom) && u.unify(a.cod, b.cod);
}

// -- typing ---------------------------------------------------------------------

class TypeChecker {
 public:
  TypeChecker(const Program& program, const FlipDef& def,
              const UsageTable& usage, const ResolutionResult& resolution)
      : program_(program), def_(def), usage_(usage), resolution_(resolution) {
    auto make_rigid = [](const std::string& name) { return detail::rigid(name); };
    for (const Param& p : def.params) {
      param_sigs_.push_back(sig_from_param(p.sig, rigid_vars_, make_rigid));
    }
    dom_ = detail::from_type_expr(def.domain, rigid_vars_, make_rigid);
    cod_ = detail::from_type_expr(def.codomain, rigid_vars_, make_rigid);
  }

  TypingResult run() {
    TypingResult result;
    for (size_t b = 0; b < def_.branches.size(); ++b) {
      const Branch& br = def_.branches[b];
      const BranchUsage& bu = usage_.branches[b];
      types_.assign(bu.bindings.size(), nullptr);
      bu_ = &bu;

      Cursor lhs{&bu.bound_at[0]};
      pattern(br.lhs, dom_, true, lhs);
      for (size_t s = 0; s < br.steps.size(); ++s) {
        const Step& step = br.steps[s];
        int pos = static_cast<int>(s) + 1;
        std::optional<FSig> sig = infer(resolution_.steps[b][s], pos);
        Ty in_type = u_.fresh();
        Ty out_type = u_.fresh();
        if (sig) {
          if (!sig->args.empty()) {
            error(CheckErrorKind::ArityMismatch, step.fexpr.loc,
                  "'" + render(step.fexpr) + "' expects " +
                      std::to_string(sig->args.size()) +
                      " more argument(s); its signature is " +
                      show_sig(u_, *sig));
          } else {
            in_type = sig->dom;
            out_type = sig->cod;
          }
        }
        Cursor out{&bu.consumed_at[pos]};
        pattern(step.out, in_type, false, out);
        Cursor in{&bu.bound_at[pos]};
        pattern(step.in, out_type, true, in);
      }
      Cursor rhs{&bu.consumed_at[br.steps.size() + 1]};
      pattern(br.rhs, cod_, false, rhs);

      BranchTyping typing;
      for (const Ty& t : types_) {
        typing.binding_types.push_back(
            t ? u_.to_type_expr(u_.zonk(t)) : TypeExpr::var("?"));
      }
      result.branches.push_back(std::move(typing));
    }
    result.errors = std::move(errors_);
    return result;
  }

 private:
  struct Cursor {
    const std::vector<int>* ids;
    size_t next = 0;
    int take() { return next < ids->size() ? (*ids)[next++] : -1; }
  };

  void error(CheckErrorKind kind, SourceLoc loc, std::string detail) {
    errors_.push_back({kind, loc, std::move(detail)});
  }

  void mismatch(SourceLoc loc, const std::string& what, const Ty& expected,
                const Ty& found) {
    error(CheckErrorKind::TypeMismatch, loc,
          what + " has type " + u_.show(found) + " but " + u_.show(expected) +
              " is expected");
  }

  // Assigns (bind) or checks (consume) variable types; always advances the
  // cursor once per variable occurrence.
  void pattern(const Pattern& p, const Ty& expected, bool bind, Cursor& cur) {
    switch (p.kind) {
      case Pattern::Kind::Var: {
        int id = cur.take();
        if (id < 0) return;
        if (bind) {
          types_[id] = expected;
        } else if (types_[id] && !u_.unify(types_[id], expected)) {
          mismatch(p.loc, "'" + p.name + "'", expected, types_[id]);
        }
        return;
      }
      case Pattern::Kind::Pair: {
        Ty t = u_.shallow(expected);
        if (t->kind == TyNode::Kind::Meta) {
          Ty fresh = detail::pair_of(u_.fresh(), u_.fresh());
          u_.unify(t, fresh);
          t = fresh;
        }
        if (t->kind != TyNode::Kind::Pair) {
          error(CheckErrorKind::TypeMismatch, p.loc,
                "pair pattern " + render(p) + " cannot have type " +
                    u_.show(t));
          skip(p, bind, cur);
          return;
        }
        pattern(p.left(), t->args[0], bind, cur);
        pattern(p.right(), t->args[1], bind, cur);
        return;
      }
      case Pattern::Kind::Ctor: {
        auto [data, ctor] = program_.find_ctor(p.name);
        if (data == nullptr) {
          error(CheckErrorKind::UnknownName, p.loc,
                "unknown constructor '" + p.name + "'");
          skip(p, bind, cur);
          return;
        }
        if (p.args.size() != ctor->args.size()) {
          error(CheckErrorKind::ArityMismatch, p.loc,
                "constructor '" + p.name + "' takes " +
                    std::to_string(ctor->args.size()) + " argument(s), given " +
                    std::to_string(p.args.size()));
          skip(p, bind, cur);
          return;
        }
        Ty t = u_.shallow(expected);
        if (t->kind == TyNode::Kind::Meta) {
          std::vector<Ty> targs;
          for (size_t i = 0; i < data->params.size(); ++i) {
            targs.push_back(u_.fresh());
          }
          Ty fresh = detail::con(data->name, std::move(targs));
          u_.unify(t, fresh);
          t = fresh;
        }
        if (t->kind != TyNode::Kind::Con || t->name != data->name) {
          error(CheckErrorKind::TypeMismatch, p.loc,
                "constructor '" + p.name + "' of " + data->name +
                    " cannot have type " + u_.show(t));
          skip(p, bind, cur);
          return;
        }
        std::vector<Ty> arg_types = detail::ctor_arg_types(*data, *ctor, t->args);
        for (size_t i = 0; i < p.args.size(); ++i) {
          pattern(p.args[i], arg_types[i], bind, cur);
        }
        return;
      }
    }
  }

  void skip(const Pattern& p, bool bind, Cursor& cur) {
    if (p.kind == Pattern::Kind::Var) {
      int id = cur.take();
      if (bind && id >= 0) types_[id] = u_.fresh();
      return;
    }
    for (const Pattern& a : p.args) skip(a, bind, cur);
  }

  std::optional<FSig> infer(const ResolvedFExpr& e, int pos) {
    auto make_meta = [this](const std::string&) { return u_.fresh(); };
    switch (e.kind) {
      case ResolvedFExpr::Kind::Def: {
        std::map<std::string, Ty> vars;
        return sig_from_def(*program_.find_flip(e.name), vars, make_meta);
      }
      case ResolvedFExpr::Kind::Extern: {
        std::map<std::string, Ty> vars;
        return sig_from_param(program_.find_extern(e.name)->sig, vars,
                              make_meta);
      }
      case ResolvedFExpr::Kind::Param:
        return param_sigs_[e.param_index];
      case ResolvedFExpr::Kind::Var:
        error(CheckErrorKind::TypeMismatch, e.loc,
              "variable '" + e.name + "' is used where a flippable is expected");
        return std::nullopt;
      case ResolvedFExpr::Kind::Flip: {
        std::optional<FSig> inner = infer(e.args[0], pos);
        if (!inner) return std::nullopt;
        if (!inner->args.empty()) {
          error(CheckErrorKind::ArityMismatch, e.loc,
                "flip needs a fully applied flippable, but its argument "
                "expects " + std::to_string(inner->args.size()) +
                    " more argument(s)");
          return std::nullopt;
        }
        std::swap(inner->dom, inner->cod);
        return inner;
      }
      case ResolvedFExpr::Kind::App:
        return infer_app(e, pos);
    }
    return std::nullopt;
  }

  std::optional<FSig> infer_app(const ResolvedFExpr& e, int pos) {
    std::optional<FSig> head = infer(e.args[0], pos);
    if (!head) return std::nullopt;
    const ResolvedFExpr& arg = e.args[1];
    if (head->args.empty()) {
      error(CheckErrorKind::ArityMismatch, arg.loc,
            "too many arguments: the applied flippable has signature " +
                show_sig(u_, *head));
      return std::nullopt;
    }
    SigArg expected = head->args.front();
    head->args.erase(head->args.begin());
    if (expected.is_value) {
      if (arg.kind != ResolvedFExpr::Kind::Var) {
        error(CheckErrorKind::TypeMismatch, arg.loc,
              "an index variable of type " + u_.show(expected.index) +
                  " is expected here");
        return head;
      }
      const Binding* b = bu_->visible_at(arg.name, pos);
      if (b != nullptr) {
        auto id = static_cast<size_t>(b - bu_->bindings.data());
        if (types_[id] && !u_.unify(types_[id], expected.index)) {
          mismatch(arg.loc, "index '" + arg.name + "'", expected.index,
                   types_[id]);
        }
      }
      // A missing binding is reported by the scope-window check.
      return head;
    }
    if (arg.kind == ResolvedFExpr::Kind::Var) {
      error(CheckErrorKind::TypeMismatch, arg.loc,
            "variable '" + arg.name + "' is passed where a flippable of "
            "signature " + show_sig(u_, *expected.flip) + " is expected");
      return head;
    }
    std::optional<FSig> given = infer(arg, pos);
    if (given && !unify_sig(u_, *given, *expected.flip)) {
      error(CheckErrorKind::TypeMismatch, arg.loc,
            "argument has signature " + show_sig(u_, *given) + " but " +
                show_sig(u_, *expected.flip) + " is expected");
    }
    return head;
  }

  const Program& program_;
  const FlipDef& def_;
  const UsageTable& usage_;
  const ResolutionResult& resolution_;
  Unifier u_;
  std::map<std::string, Ty> rigid_vars_;
  std::vector<FSig> param_sigs_;
  Ty dom_;
  Ty cod_;
  const BranchUsage* bu_ = nullptr;
  std::vector<Ty> types_;
  std::vector<CheckError> errors_;
};

// -- name resolution ------------------------------------------------------------

class Resolver {
 public:
  Resolver(const Program& program, const FlipDef& def, const BranchUsage& usage,
           std::vector<CheckError>& errors)
      : program_(program), def_(def), usage_(usage), errors_(errors) {}

  ResolvedFExpr resolve(const FExpr& e, bool head_position) {
    ResolvedFExpr out;
    out.loc = e.loc;
    switch (e.kind) {
      case FExpr::Kind::Ref:
        if (!head_position && usage_.binds(e.name)) {
          out.kind = ResolvedFExpr::Kind::Var;
          out.name = e.name;
          return out;
        }
        return flippable(e);
      case FExpr::Kind::App:
        out.kind = ResolvedFExpr::Kind::App;
        out.args.push_back(resolve(e.head(), true));
        out.args.push_back(resolve(e.arg(), false));
        return out;
      case FExpr::Kind::Flip:
        out.kind = ResolvedFExpr::Kind::Flip;
        out.args.push_back(resolve(e.inner(), true));
        return out;
    }
    return out;
  }

 private:
  ResolvedFExpr flippable(const FExpr& e) {
    ResolvedFExpr out;
    out.loc = e.loc;
    out.name = e.name;
    for (size_t i = 0; i < def_.params.size(); ++i) {
      if (def_.params[i].name == e.name) {
        out.kind = ResolvedFExpr::Kind::Param;
        out.param_index = static_cast<int>(i);
        return out;
      }
    }
    if (program_.find_extern(e.name) != nullptr) {
      out.kind = ResolvedFExpr::Kind::Extern;
      return out;
    }
    if (program_.find_flip(e.name) != nullptr) {
      out.kind = ResolvedFExpr::Kind::Def;
      return out;
    }
    std::string detail = usage_.binds(e.name)
                             ? "'" + e.name + "' is a variable, not a flippable"
                             : "unknown flippable '" + e.name + "'";
    errors_.push_back({CheckErrorKind::UnknownName, e.loc, detail});
    // Resolve to a variable so later passes skip it without cascading.
    out.kind = ResolvedFExpr::Kind::Var;
    return out;
  }

  const Program& program_;
  const FlipDef& def_;
  const BranchUsage& usage_;
  std::vector<CheckError>& errors_;
};

void collect_var_refs(const ResolvedFExpr& e,
                      std::vector<const ResolvedFExpr*>& out) {
  if (e.kind == ResolvedFExpr::Kind::Var) {
    out.push_back(&e);
    return;
  }
  for (const ResolvedFExpr& a : e.args) collect_var_refs(a, out);
}

// -- declarations -----------------------------------------------------------------

void check_type_expr(const Program& program, const TypeExpr& t,
                     const std::vector<std::string>* allowed_vars,
                     std::vector<CheckError>& errors) {
  switch (t.kind) {
    case TypeExpr::Kind::Var:
      if (allowed_vars != nullptr &&
          std::find(allowed_vars->begin(), allowed_vars->end(), t.name) ==
              allowed_vars->end()) {
        errors.push_back({CheckErrorKind::UnknownName, t.loc,
                          "type variable '" + t.name +
                              "' is not a parameter of the data type"});
      }
      return;
    case TypeExpr::Kind::Named: {
      size_t arity = 0;
      if (!is_builtin_type(t.name)) {
        const DataDecl* d = program.find_data(t.name);
        if (d == nullptr) {
          errors.push_back({CheckErrorKind::UnknownName, t.loc,
                            "unknown type '" + t.name + "'"});
          return;
        }
        arity = d->params.size();
      }
      if (t.args.size() != arity) {
        errors.push_back({CheckErrorKind::ArityMismatch, t.loc,
                          "type '" + t.name + "' takes " +
                              std::to_string(arity) + " argument(s), given " +
                              std::to_string(t.args.size())});
      }
      for (const TypeExpr& a : t.args) {
        check_type_expr(program, a, allowed_vars, errors);
      }
      return;
    }
    case TypeExpr::Kind::Pair:
      check_type_expr(program, t.left(), allowed_vars, errors);
      check_type_expr(program, t.right(), allowed_vars, errors);
      return;
  }
}

void check_param_sig(const Program& program, const ParamSig& sig,
                     std::vector<CheckError>& errors) {
  if (sig.index) check_type_expr(program, *sig.index, nullptr, errors);
  check_type_expr(program, sig.domain, nullptr, errors);
  check_type_expr(program, sig.codomain, nullptr, errors);
}

}  // namespace

LinearityResult check_linearity(const FlipDef& def) {
  LinearityResult result;
  for (const Branch& br : def.branches) {
    BranchUsage usage;
    usage.step_count = static_cast<int>(br.steps.size());
    usage.bound_at.resize(br.steps.size() + 2);
    usage.consumed_at.resize(br.steps.size() + 2);
    LinearityWalker walker(usage, result.errors);
    walker.bind(br.lhs, 0);
    for (size_t i = 0; i < br.steps.size(); ++i) {
      int pos = static_cast<int>(i) + 1;
      walker.consume(br.steps[i].out, pos);
      walker.bind(br.steps[i].in, pos);
    }
    walker.consume(br.rhs, usage.step_count + 1);
    walker.finish();
    result.table.branches.push_back(std::move(usage));
  }
  return result;
}

ResolutionResult resolve_names(const Program& program, const FlipDef& def,
                               const UsageTable& usage) {
  ResolutionResult result;
  for (size_t b = 0; b < def.branches.size(); ++b) {
    Resolver resolver(program, def, usage.branches[b], result.errors);
    std::vector<ResolvedFExpr> steps;
    for (const Step& step : def.branches[b].steps) {
      steps.push_back(resolver.resolve(step.fexpr, true));
    }
    result.steps.push_back(std::move(steps));
  }
  return result;
}

std::vector<CheckError> check_scope_windows(
    const FlipDef& def, const UsageTable& usage,
    const ResolutionResult& resolution) {
  std::vector<CheckError> errors;
  for (size_t b = 0; b < def.branches.size(); ++b) {
    const BranchUsage& bu = usage.branches[b];
    for (size_t s = 0; s < resolution.steps[b].size(); ++s) {
      int pos = static_cast<int>(s) + 1;
      std::vector<const ResolvedFExpr*> refs;
      collect_var_refs(resolution.steps[b][s], refs);
      for (const ResolvedFExpr* ref : refs) {
        if (!bu.binds(ref->name)) continue;  // unresolved name, reported
        const Binding* binding = bu.visible_at(ref->name, pos);
        if (binding == nullptr) {
          errors.push_back({CheckErrorKind::OutOfWindowReference, ref->loc,
                            "'" + ref->name + "' is referenced at step " +
                                std::to_string(pos) +
                                " before it is bound"});
          continue;
        }
        if (!binding->consume_pos) continue;  // unused, reported
        if (*binding->consume_pos <= pos) {
          errors.push_back(
              {CheckErrorKind::OutOfWindowReference, ref->loc,
               "'" + ref->name + "' is referenced at step " +
                   std::to_string(pos) + " but consumed at " +
                   position_text(*binding->consume_pos, bu.step_count) +
                   "; references must lie strictly between binding and use"});
        }
      }
    }
  }
  return errors;
}

TypingResult check_types(const Program& program, const FlipDef& def,
                         const UsageTable& usage,
                         const ResolutionResult& resolution) {
  TypeChecker checker(program, def, usage, resolution);
  return checker.run();
}

std::vector<CheckError> check_declarations(const Program& program) {
  std::vector<CheckError> errors;
  for (const DataDecl& d : program.data) {
    if (is_builtin_type(d.name)) {
      errors.push_back({CheckErrorKind::TypeMismatch, d.loc,
                        "'" + d.name + "' is a builtin opaque type"});
    }
    for (const CtorDecl& c : d.ctors) {
      for (const TypeExpr& a : c.args) {
        check_type_expr(program, a, &d.params, errors);
      }
    }
  }
  for (const ExternDecl& e : program.externs) {
    check_param_sig(program, e.sig, errors);
  }
  for (const FlipDef& f : program.flips) {
    for (const Param& p : f.params) check_param_sig(program, p.sig, errors);
    check_type_expr(program, f.domain, nullptr, errors);
    check_type_expr(program, f.codomain, nullptr, errors);
  }
  return errors;
}

CheckResult check_program(Program program) {
  CheckResult result;
  std::vector<CheckError> errors = check_declarations(program);
  bool declarations_ok = errors.empty();
  std::vector<CheckedDef> defs;

  for (const FlipDef& def : program.flips) {
    LinearityResult lin = check_linearity(def);
    ResolutionResult res = resolve_names(program, def, lin.table);
    std::vector<CheckError> windows =
        check_scope_windows(def, lin.table, res);
    errors.insert(errors.end(), lin.errors.begin(), lin.errors.end());
    errors.insert(errors.end(), res.errors.begin(), res.errors.end());
    errors.insert(errors.end(), windows.begin(), windows.end());

    CheckedDef checked{def.name, {}};
    if (declarations_ok && res.errors.empty()) {
      TypingResult typing = check_types(program, def, lin.table, res);
      bool typed = typing.errors.empty();
      errors.insert(errors.end(), typing.errors.begin(), typing.errors.end());
      if (typed) {
        for (Side side : {Side::Input, Side::Output}) {
          std::vector<CheckError> part = check_partition(program, def, side);
          errors.insert(errors.end(), part.begin(), part.end());
        }
      }
      for (size_t b = 0; b < def.branches.size(); ++b) {
        checked.branches.push_back(
            CheckedBranch{lin.table.branches[b], res.steps[b],
                          typing.branches[b].binding_types});
      }
    }
    defs.push_back(std::move(checked));
  }

  sort_errors(errors);
  if (errors.empty()) {
    result.checked = CheckedProgram{std::move(program), std::move(defs)};
  } else {
    result.errors = std::move(errors);
  }
  return result;
}

}  // namespace flipkit
