// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_VALUE_HPP
#define FLIPKIT_VALUE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "flipkit/ans.hpp"

namespace flipkit {

/// Runtime data: constructor applications, pairs, and opaque host values.
/// Values are plain trees; moving is cheap and the interpreter moves them
/// through linear bindings rather than copying.
class Value {
 public:
  enum class Kind { Ctor, Pair, Msg, Int };

  Value() = default;

  static Value ctor(std::string name, std::vector<Value> args = {});
  static Value pair(Value left, Value right);
  static Value msg(ans::Message m);
  static Value integer(int64_t v);

  Kind kind() const { return kind_; }
  bool is_opaque() const { return kind_ == Kind::Msg || kind_ == Kind::Int; }

  const std::string& ctor_name() const { return name_; }
  const std::vector<Value>& args() const { return args_; }
  std::vector<Value>& args() { return args_; }
  const Value& left() const { return args_[0]; }
  const Value& right() const { return args_[1]; }
  Value& left() { return args_[0]; }
  Value& right() { return args_[1]; }

  const ans::Message& message() const { return msg_; }
  ans::Message& message() { return msg_; }
  int64_t int_value() const { return int_; }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Kind kind_ = Kind::Ctor;
  std::string name_;
  std::vector<Value> args_;
  ans::Message msg_;
  int64_t int_ = 0;
};

/// Value literal syntax: integers, `(C v ...)` or bare `C`, `(v , w)`, and
/// `msg[head]` / `msg[head; w0, w1, ...]` with tail words bottom first.
std::string render(const Value& v);
/// Throws ParseError.
Value parse_value(std::string_view text);

/// A pair of total procedures, the runtime image of A <-> B.
/// backward(forward(a)) == a and forward(backward(b)) == b are obligations on
/// whoever builds one.
class Bijection {
 public:
  using Fn = std::function<Value(Value)>;

  Bijection() = default;
  Bijection(Fn forward, Fn backward)
      : forward_(std::make_shared<const Fn>(std::move(forward))),
        backward_(std::make_shared<const Fn>(std::move(backward))) {}

  Value forward(Value v) const { return (*forward_)(std::move(v)); }
  Value backward(Value v) const { return (*backward_)(std::move(v)); }

  Bijection flipped() const {
    Bijection out;
    out.forward_ = backward_;
    out.backward_ = forward_;
    return out;
  }

  /// Runs `this` then `next` forward; `next` then `this` backward.
  Bijection then(const Bijection& next) const;

  explicit operator bool() const { return forward_ != nullptr; }

 private:
  std::shared_ptr<const Fn> forward_;
  std::shared_ptr<const Fn> backward_;
};

/// A family of bijections indexed by a value, the image of I -> S <-> T.
using BijectionFamily = std::function<Bijection(const Value& index)>;

}  // namespace flipkit

#endif  // FLIPKIT_VALUE_HPP
