// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/parser.hpp"

#include <set>
#include <string>

#include "lexer.hpp"

namespace flipkit {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

bool starts_atom_type(Tok kind) {
  return kind == Tok::LowerIdent || kind == Tok::UpperIdent ||
         kind == Tok::KwMsg || kind == Tok::LParen;
}

bool starts_pattern(Tok kind) {
  return kind == Tok::LowerIdent || kind == Tok::UpperIdent ||
         kind == Tok::LParen;
}

bool starts_fatom(Tok kind) {
  return kind == Tok::LowerIdent || kind == Tok::KwFlip || kind == Tok::LParen;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Program program() {
    Program prog;
    while (!ts_.at(Tok::End)) {
      Program one;
      switch (ts_.peek().kind) {
        case Tok::KwData: one.data.push_back(data_decl()); break;
        case Tok::KwExtern: one.externs.push_back(extern_decl()); break;
        case Tok::KwFlip: one.flips.push_back(flip_decl()); break;
        default: ts_.fail("'data', 'extern' or 'flip'");
      }
      prog.merge(one);
    }
    return prog;
  }

  TypeExpr type() {
    SourceLoc loc = ts_.peek().loc;
    std::vector<TypeExpr> atoms;
    bool head_bare_named = ts_.at(Tok::UpperIdent) || ts_.at(Tok::KwMsg);
    if (!starts_atom_type(ts_.peek().kind)) ts_.fail("a type");
    while (starts_atom_type(ts_.peek().kind)) atoms.push_back(atom_type());
    if (atoms.size() == 1) return std::move(atoms.front());
    if (!head_bare_named) {
      throw ParseError(loc, "only a named type can be applied to arguments");
    }
    TypeExpr head = std::move(atoms.front());
    atoms.erase(atoms.begin());
    return TypeExpr::named(head.name, std::move(atoms), loc);
  }

  ParamSig param_sig() {
    ParamSig sig;
    TypeExpr first = type();
    if (ts_.accept(Tok::Arrow)) {
      sig.index = std::move(first);
      sig.domain = type();
    } else {
      sig.domain = std::move(first);
    }
    ts_.expect(Tok::Iso, "in signature");
    sig.codomain = type();
    return sig;
  }

  Pattern pattern() {
    const Token& tok = ts_.peek();
    if (tok.kind == Tok::LowerIdent) {
      Token t = ts_.next();
      return Pattern::var(t.text, t.loc);
    }
    if (tok.kind == Tok::UpperIdent) {
      // Bare nullary constructor, accepted as shorthand for `(C)`.
      Token t = ts_.next();
      return Pattern::ctor(t.text, {}, t.loc);
    }
    if (tok.kind != Tok::LParen) ts_.fail("a pattern");
    SourceLoc loc = ts_.next().loc;
    Pattern first;
    if (ts_.at(Tok::UpperIdent)) {
      Token ctor = ts_.next();
      std::vector<Pattern> args;
      while (starts_pattern(ts_.peek().kind)) args.push_back(pattern());
      first = Pattern::ctor(ctor.text, std::move(args), loc);
      if (ts_.accept(Tok::RParen)) return first;
    } else {
      first = pattern();
    }
    ts_.expect(Tok::Comma, "in pair pattern");
    Pattern second = pattern();
    ts_.expect(Tok::RParen, "closing pair pattern");
    return Pattern::pair(std::move(first), std::move(second), loc);
  }

  // A pattern at binding position: variables may not repeat within it.
  Pattern linear_pattern() {
    SourceLoc loc = ts_.peek().loc;
    Pattern p = pattern();
    std::vector<const Pattern*> vars;
    p.collect_variables(vars);
    std::set<std::string> seen;
    for (const Pattern* v : vars) {
      if (!seen.insert(v->name).second) {
        throw ParseError(v->loc.line ? v->loc : loc,
                         "variable '" + v->name + "' repeated in pattern");
      }
    }
    return p;
  }

  FExpr fexpr() {
    if (!starts_fatom(ts_.peek().kind)) ts_.fail("a flippable expression");
    FExpr e = fatom();
    while (starts_fatom(ts_.peek().kind)) {
      SourceLoc loc = e.loc;
      e = FExpr::app(std::move(e), fatom(), loc);
    }
    return e;
  }

  void expect_end() { ts_.expect(Tok::End, ""); }

 private:
  TypeExpr atom_type() {
    Token tok = ts_.next();
    switch (tok.kind) {
      case Tok::LowerIdent: return TypeExpr::var(tok.text, tok.loc);
      case Tok::UpperIdent:
      case Tok::KwMsg: return TypeExpr::named(tok.text, {}, tok.loc);
      case Tok::LParen: {
        TypeExpr inner = type();
        if (ts_.accept(Tok::Comma)) {
          TypeExpr right = type();
          ts_.expect(Tok::RParen, "closing pair type");
          return TypeExpr::pair(std::move(inner), std::move(right), tok.loc);
        }
        ts_.expect(Tok::RParen, "closing type");
        return inner;
      }
      default:
        throw ParseError(tok.loc, "expected a type, found " + describe(tok));
    }
  }

  FExpr fatom() {
    Token tok = ts_.next();
    switch (tok.kind) {
      case Tok::LowerIdent: return FExpr::ref(tok.text, tok.loc);
      case Tok::KwFlip: {
        FExpr inner = fatom();
        // Keep `flip (flip e)` as written; simplification is the reverser's.
        std::vector<FExpr> args;
        args.push_back(std::move(inner));
        return FExpr{FExpr::Kind::Flip, {}, std::move(args), tok.loc};
      }
      case Tok::LParen: {
        FExpr inner = fexpr();
        ts_.expect(Tok::RParen, "closing flippable expression");
        return inner;
      }
      default:
        throw ParseError(tok.loc, "expected a flippable expression, found " +
                                      describe(tok));
    }
  }

  DataDecl data_decl() {
    DataDecl decl;
    decl.loc = ts_.expect(Tok::KwData, "").loc;
    decl.name = ts_.expect(Tok::UpperIdent, "naming the data type").text;
    std::set<std::string> seen;
    while (ts_.at(Tok::LowerIdent)) {
      Token p = ts_.next();
      if (!seen.insert(p.text).second) {
        throw ParseError(p.loc, "type parameter '" + p.text + "' repeated");
      }
      decl.params.push_back(p.text);
    }
    ts_.expect(Tok::Equals, "after data type header");
    do {
      CtorDecl ctor;
      Token name = ts_.expect(Tok::UpperIdent, "naming a constructor");
      ctor.name = name.text;
      ctor.loc = name.loc;
      while (starts_atom_type(ts_.peek().kind)) ctor.args.push_back(atom_type());
      decl.ctors.push_back(std::move(ctor));
    } while (ts_.accept(Tok::Bar));
    return decl;
  }

  ExternDecl extern_decl() {
    ExternDecl decl;
    decl.loc = ts_.expect(Tok::KwExtern, "").loc;
    decl.name = ts_.expect(Tok::LowerIdent, "naming the extern").text;
    ts_.expect(Tok::Colon, "after extern name");
    decl.sig = param_sig();
    return decl;
  }

  FlipDef flip_decl() {
    FlipDef def;
    def.loc = ts_.expect(Tok::KwFlip, "").loc;
    def.name = ts_.expect(Tok::LowerIdent, "naming the flippable").text;
    while (ts_.at(Tok::LParen)) {
      Param param;
      param.loc = ts_.next().loc;
      param.name = ts_.expect(Tok::LowerIdent, "naming a parameter").text;
      if (def.find_param(param.name) != nullptr) {
        throw ParseError(param.loc, "parameter '" + param.name + "' repeated");
      }
      ts_.expect(Tok::Colon, "after parameter name");
      param.sig = param_sig();
      ts_.expect(Tok::RParen, "closing parameter");
      def.params.push_back(std::move(param));
    }
    ts_.expect(Tok::Colon, "before the flippable's signature");
    def.domain = type();
    ts_.expect(Tok::Iso, "in the flippable's signature");
    def.codomain = type();
    ts_.expect(Tok::Equals, "before the flippable body");
    ts_.expect(Tok::LBrace, "opening the flippable body");
    do {
      def.branches.push_back(branch());
    } while (ts_.accept(Tok::Semi));
    ts_.expect(Tok::RBrace, "or ';' after a branch");
    return def;
  }

  Branch branch() {
    Branch br;
    br.loc = ts_.peek().loc;
    br.lhs = linear_pattern();
    ts_.expect(Tok::Iso, "after branch input pattern");
    // Consuming positions may repeat a variable; that is a linearity error
    // for the checker to report, not a syntax error.
    Pattern current = pattern();
    while (ts_.at(Tok::Less)) {
      Step step;
      step.loc = ts_.next().loc;
      step.out = std::move(current);
      step.fexpr = fexpr();
      ts_.expect(Tok::Greater, "closing '<' of a step");
      step.in = linear_pattern();
      ts_.expect(Tok::Iso, "after a step");
      br.steps.push_back(std::move(step));
      current = pattern();
    }
    br.rhs = std::move(current);
    return br;
  }

  TokenStream ts_;
};

}  // namespace

Program parse_program(std::string_view text) {
  Parser parser(text);
  return parser.program();
}

ParamSig parse_param_sig(std::string_view text) {
  Parser parser(text);
  ParamSig sig = parser.param_sig();
  parser.expect_end();
  return sig;
}

TypeExpr parse_type(std::string_view text) {
  Parser parser(text);
  TypeExpr t = parser.type();
  parser.expect_end();
  return t;
}

Pattern parse_pattern(std::string_view text) {
  Parser parser(text);
  Pattern p = parser.linear_pattern();
  parser.expect_end();
  return p;
}

FExpr parse_fexpr(std::string_view text) {
  Parser parser(text);
  FExpr e = parser.fexpr();
  parser.expect_end();
  return e;
}

}  // namespace flipkit
