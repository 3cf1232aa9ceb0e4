// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_GENERATE_HPP
#define FLIPKIT_GENERATE_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "flipkit/ast.hpp"
#include "flipkit/value.hpp"

namespace flipkit {

/// Random well-typed values, for property tests. Recursion through data
/// declarations stops at `max_depth`, after which the constructor with the
/// fewest fields is taken. Unmapped type variables become Int.
class ValueGenerator {
 public:
  using Instantiation = std::map<std::string, TypeExpr, std::less<>>;

  ValueGenerator(const Program& program, uint64_t seed, int max_depth = 6);

  Value generate(const TypeExpr& type, const Instantiation& inst = {});

  std::mt19937_64& rng() { return rng_; }

 private:
  Value gen(const TypeExpr& type, const Instantiation& inst, int depth);

  const Program& program_;
  std::mt19937_64 rng_;
  int max_depth_;
};

}  // namespace flipkit

#endif  // FLIPKIT_GENERATE_HPP
