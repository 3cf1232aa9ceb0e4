// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <cctype>

#include "flipkit/error.hpp"

namespace flipkit::detail {

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::LowerIdent: return "identifier";
    case Tok::UpperIdent: return "constructor or type name";
    case Tok::Integer: return "integer";
    case Tok::KwData: return "'data'";
    case Tok::KwFlip: return "'flip'";
    case Tok::KwExtern: return "'extern'";
    case Tok::KwMsg: return "'Msg'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Bar: return "'|'";
    case Tok::Iso: return "'<->'";
    case Tok::Arrow: return "'->'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case Tok::LowerIdent:
    case Tok::UpperIdent:
    case Tok::Integer:
      return "'" + tok.text + "'";
    default:
      return describe(tok.kind);
  }
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, size_t len) {
    out.push_back(Token{kind, std::string(text.substr(i, len)), {line, col}});
    advance(len);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (text.substr(i, 2) == "--") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      push(Tok::Iso, 3);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      push(Tok::Arrow, 2);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      size_t len = 1;
      while (i + len < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i + len]))) {
        ++len;
      }
      push(Tok::Integer, len);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t len = 1;
      while (i + len < text.size() && ident_char(text[i + len])) ++len;
      std::string_view word = text.substr(i, len);
      Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::UpperIdent
                                                             : Tok::LowerIdent;
      if (word == "data") kind = Tok::KwData;
      if (word == "flip") kind = Tok::KwFlip;
      if (word == "extern") kind = Tok::KwExtern;
      if (word == "Msg") kind = Tok::KwMsg;
      push(kind, len);
      continue;
    }
    if (c == '_') {
      throw ParseError({line, col},
                       "wildcard '_' is not allowed: every pattern variable "
                       "must be named and used");
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case ':': kind = Tok::Colon; break;
      case '=': kind = Tok::Equals; break;
      case '|': kind = Tok::Bar; break;
      case '<': kind = Tok::Less; break;
      case '>': kind = Tok::Greater; break;
      default:
        throw ParseError({line, col},
                         std::string("unexpected character '") + c + "'");
    }
    push(kind, 1);
  }
  out.push_back(Token{Tok::End, "", {line, col}});
  return out;
}

Token TokenStream::expect(Tok kind, std::string_view context) {
  if (!at(kind)) {
    fail(describe(kind) + (context.empty() ? "" : " " + std::string(context)));
  }
  return next();
}

void TokenStream::fail(std::string_view expected) const {
  throw ParseError(peek().loc, "expected " + std::string(expected) +
                                   ", found " + describe(peek()));
}

}  // namespace flipkit::detail
