// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/encoder.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

#include "flipkit/error.hpp"

namespace flipkit::ans {

SymbolDescriptor SymbolDescriptor::constructors(std::vector<std::string> names) {
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) {
    throw std::invalid_argument("symbol descriptor is not bijective");
  }
  if (names.empty()) throw std::invalid_argument("empty symbol descriptor");
  SymbolDescriptor d;
  d.names_ = std::move(names);
  return d;
}

SymbolDescriptor SymbolDescriptor::integers(size_t n) {
  if (n == 0) throw std::invalid_argument("empty symbol descriptor");
  SymbolDescriptor d;
  d.int_count_ = n;
  return d;
}

size_t SymbolDescriptor::size() const {
  return names_.empty() ? int_count_ : names_.size();
}

size_t SymbolDescriptor::index_of(const Value& v) const {
  if (names_.empty()) {
    if (v.kind() == Value::Kind::Int && v.int_value() >= 0 &&
        static_cast<uint64_t>(v.int_value()) < int_count_) {
      return static_cast<size_t>(v.int_value());
    }
  } else if (v.kind() == Value::Kind::Ctor && v.args().empty()) {
    auto it = std::find(names_.begin(), names_.end(), v.ctor_name());
    if (it != names_.end()) return static_cast<size_t>(it - names_.begin());
  }
  throw RuntimeFault("symbol " + render(v) + " outside the encoder's domain");
}

Value SymbolDescriptor::value_of(size_t index) const {
  if (names_.empty()) return Value::integer(static_cast<int64_t>(index));
  return Value::ctor(names_.at(index));
}

namespace {

Message& message_of(Value& v) {
  if (v.kind() != Value::Kind::Msg) {
    throw RuntimeFault("expected a message, got " + render(v));
  }
  return v.message();
}

Value& pair_part(Value& v, bool left) {
  if (v.kind() != Value::Kind::Pair) {
    throw RuntimeFault("expected a pair, got " + render(v));
  }
  return left ? v.left() : v.right();
}

}  // namespace

Bijection make_encoder(CategoricalTable table, SymbolDescriptor symbols) {
  if (table.size() != symbols.size()) {
    throw std::invalid_argument("descriptor has " +
                                std::to_string(symbols.size()) +
                                " symbols, table has " +
                                std::to_string(table.size()));
  }
  auto t = std::make_shared<const CategoricalTable>(std::move(table));
  auto d = std::make_shared<const SymbolDescriptor>(std::move(symbols));
  return Bijection(
      [t, d](Value v) {
        size_t s = d->index_of(pair_part(v, false));
        Value out = std::move(pair_part(v, true));
        Message& m = message_of(out);
        if (!m.valid()) throw RuntimeFault("invalid message");
        push_symbol(m, s, *t);
        return out;
      },
      [t, d](Value v) {
        Message& m = message_of(v);
        if (!m.valid()) throw RuntimeFault("invalid message");
        size_t s = pop_symbol(m, *t);
        return Value::pair(std::move(v), d->value_of(s));
      });
}

Value make_list(std::vector<Value> items) {
  Value out = Value::ctor("Nil");
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    std::vector<Value> args;
    args.push_back(std::move(*it));
    args.push_back(std::move(out));
    out = Value::ctor("Cons", std::move(args));
  }
  return out;
}

std::vector<Value> list_items(Value list) {
  std::vector<Value> out;
  while (true) {
    if (list.kind() == Value::Kind::Ctor && list.ctor_name() == "Nil" &&
        list.args().empty()) {
      return out;
    }
    if (list.kind() != Value::Kind::Ctor || list.ctor_name() != "Cons" ||
        list.args().size() != 2) {
      throw RuntimeFault("expected a list, got " + render(list));
    }
    out.push_back(std::move(list.args()[0]));
    Value rest = std::move(list.args()[1]);
    list = std::move(rest);
  }
}

Bijection encode_list(Bijection encoder, size_t n) {
  return Bijection(
      [encoder, n](Value v) {
        std::vector<Value> items = list_items(std::move(pair_part(v, false)));
        if (items.size() != n) {
          throw RuntimeFault("list has " + std::to_string(items.size()) +
                             " items, expected " + std::to_string(n));
        }
        Value m = std::move(pair_part(v, true));
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
          m = encoder.forward(Value::pair(std::move(m), std::move(*it)));
        }
        return m;
      },
      [encoder, n](Value m) {
        std::vector<Value> items;
        items.reserve(n);
        for (size_t i = 0; i < n; ++i) {
          Value p = encoder.backward(std::move(m));
          m = std::move(p.left());
          items.push_back(std::move(p.right()));
        }
        return Value::pair(std::move(m), make_list(std::move(items)));
      });
}

}  // namespace flipkit::ans
