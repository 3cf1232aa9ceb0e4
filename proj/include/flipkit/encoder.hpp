// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_ENCODER_HPP
#define FLIPKIT_ENCODER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "flipkit/ans.hpp"
#include "flipkit/value.hpp"

namespace flipkit::ans {

/// Maps DSL values of a symbol type onto table indices 0..n-1.
class SymbolDescriptor {
 public:
  /// Nullary constructors, index i naming symbol i. Throws
  /// std::invalid_argument on a repeated name.
  static SymbolDescriptor constructors(std::vector<std::string> names);
  /// Int values 0..n-1.
  static SymbolDescriptor integers(size_t n);

  size_t size() const;
  /// Throws RuntimeFault for a value outside the domain.
  size_t index_of(const Value& v) const;
  Value value_of(size_t index) const;

 private:
  std::vector<std::string> names_;  // empty for Int symbols
  size_t int_count_ = 0;
};

/// The Encoder `(Msg , X) <-> Msg`: forward pushes, backward pops.
/// Throws std::invalid_argument when the descriptor and table sizes differ.
Bijection make_encoder(CategoricalTable table, SymbolDescriptor symbols);

/// `Cons x rest` / `Nil` lists.
Value make_list(std::vector<Value> items);
std::vector<Value> list_items(Value list);

/// `(Msg , List X) <-> Msg` for lists of exactly n items. Items are pushed
/// back to front so popping yields them front to back.
Bijection encode_list(Bijection encoder, size_t n);

}  // namespace flipkit::ans

#endif  // FLIPKIT_ENCODER_HPP
