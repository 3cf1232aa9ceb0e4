// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_SRC_LEXER_HPP
#define FLIPKIT_SRC_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "flipkit/ast.hpp"

namespace flipkit::detail {

enum class Tok {
  LowerIdent,
  UpperIdent,
  Integer,
  KwData,
  KwFlip,
  KwExtern,
  KwMsg,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Equals,
  Bar,
  Iso,    // <->
  Arrow,  // ->
  Less,
  Greater,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

std::string describe(Tok kind);
std::string describe(const Token& tok);

/// Splits `text` into tokens; `--` starts a line comment. Throws ParseError.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with expectation helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  Token next() {
    Token tok = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }
  Token expect(Tok kind, std::string_view context);
  [[noreturn]] void fail(std::string_view expected) const;

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace flipkit::detail

#endif  // FLIPKIT_SRC_LEXER_HPP
