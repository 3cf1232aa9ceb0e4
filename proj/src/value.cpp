// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/value.hpp"

#include <charconv>

#include "flipkit/error.hpp"
#include "lexer.hpp"

namespace flipkit {

using detail::Tok;
using detail::TokenStream;

Value Value::ctor(std::string name, std::vector<Value> args) {
  Value v;
  v.kind_ = Kind::Ctor;
  v.name_ = std::move(name);
  v.args_ = std::move(args);
  return v;
}

Value Value::pair(Value left, Value right) {
  Value v;
  v.kind_ = Kind::Pair;
  v.args_.reserve(2);
  v.args_.push_back(std::move(left));
  v.args_.push_back(std::move(right));
  return v;
}

Value Value::msg(ans::Message m) {
  Value v;
  v.kind_ = Kind::Msg;
  v.msg_ = std::move(m);
  return v;
}

Value Value::integer(int64_t i) {
  Value v;
  v.kind_ = Kind::Int;
  v.int_ = i;
  return v;
}

std::string render(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int:
      return std::to_string(v.int_value());
    case Value::Kind::Pair:
      return "(" + render(v.left()) + " , " + render(v.right()) + ")";
    case Value::Kind::Ctor: {
      if (v.args().empty()) return v.ctor_name();
      std::string out = "(" + v.ctor_name();
      for (const Value& a : v.args()) out += " " + render(a);
      return out + ")";
    }
    case Value::Kind::Msg: {
      std::string out = "msg[" + std::to_string(v.message().head);
      const auto& tail = v.message().tail;
      for (size_t i = 0; i < tail.size(); ++i) {
        out += (i == 0 ? "; " : ", ") + std::to_string(tail[i]);
      }
      return out + "]";
    }
  }
  return {};
}

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Value parse() {
    Value v;
    if (ts_.at(Tok::UpperIdent)) {
      // bare constructor application at top level
      std::string name = ts_.next().text;
      std::vector<Value> args;
      while (starts_value()) args.push_back(value());
      v = Value::ctor(name, std::move(args));
    } else {
      v = value();
    }
    ts_.expect(Tok::End, "after value");
    return v;
  }

 private:
  template <typename T>
  T number(const detail::Token& tok) {
    T out{};
    auto [ptr, ec] = std::from_chars(tok.text.data(),
                                     tok.text.data() + tok.text.size(), out);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
      throw ParseError(tok.loc, "integer literal '" + tok.text +
                                    "' out of range");
    }
    return out;
  }

  Value value() {
    detail::Token tok = ts_.peek();
    switch (tok.kind) {
      case Tok::Integer:
        ts_.next();
        return Value::integer(number<int64_t>(tok));
      case Tok::UpperIdent:
        ts_.next();
        return Value::ctor(tok.text);
      case Tok::LowerIdent:
        if (tok.text == "msg") return message();
        break;
      case Tok::LParen: {
        ts_.next();
        if (ts_.at(Tok::UpperIdent)) {
          std::string name = ts_.next().text;
          std::vector<Value> args;
          while (starts_value()) args.push_back(value());
          Value c = Value::ctor(name, std::move(args));
          if (ts_.accept(Tok::RParen)) return c;
          ts_.expect(Tok::Comma, "in pair value");
          Value right = value();
          ts_.expect(Tok::RParen, "closing pair value");
          return Value::pair(std::move(c), std::move(right));
        }
        Value left = value();
        ts_.expect(Tok::Comma, "in pair value");
        Value right = value();
        ts_.expect(Tok::RParen, "closing pair value");
        return Value::pair(std::move(left), std::move(right));
      }
      default:
        break;
    }
    ts_.fail("a value");
  }

  bool starts_value() const {
    const auto& t = ts_.peek();
    return t.kind == Tok::Integer || t.kind == Tok::UpperIdent ||
           t.kind == Tok::LParen ||
           (t.kind == Tok::LowerIdent && t.text == "msg");
  }

  Value message() {
    ts_.next();
    ts_.expect(Tok::LBracket, "after 'msg'");
    ans::Message m;
    m.head = number<uint64_t>(ts_.expect(Tok::Integer, "for the message head"));
    if (ts_.accept(Tok::Semi)) {
      do {
        m.tail.push_back(
            number<uint32_t>(ts_.expect(Tok::Integer, "for a tail word")));
      } while (ts_.accept(Tok::Comma));
    }
    detail::Token close = ts_.expect(Tok::RBracket, "closing message");
    if (!m.valid()) {
      throw ParseError(close.loc,
                       "message head must be at least 2^32 when the tail is "
                       "nonempty");
    }
    return Value::msg(std::move(m));
  }

  TokenStream ts_;
};

}  // namespace

Value parse_value(std::string_view text) { return ValueParser(text).parse(); }

Bijection Bijection::then(const Bijection& next) const {
  Bijection first = *this;
  return Bijection(
      [first, next](Value v) { return next.forward(first.forward(std::move(v))); },
      [first, next](Value v) {
        return first.backward(next.backward(std::move(v)));
      });
}

}  // namespace flipkit
