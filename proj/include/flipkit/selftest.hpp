// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_SELFTEST_HPP
#define FLIPKIT_SELFTEST_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "flipkit/ast.hpp"
#include "flipkit/bbans.hpp"
#include "flipkit/interp.hpp"
#include "flipkit/value.hpp"

namespace flipkit::selftest {

struct Outcome {
  bool passed = true;
  size_t cases = 0;
  std::string counterexample;  // value literal of the first failing input
  std::string detail;
};

using Gen = std::function<Value(std::mt19937_64&)>;

/// A definition applied to concrete arguments, with generators for both
/// sides of its signature.
struct Subject {
  std::string label;
  std::string def;
  std::vector<FlipArg> args;
  Gen domain;
  Gen codomain;
};

/// Generator for `type` over the data declarations of `program`.
Gen type_gen(const Program& program, const TypeExpr& type);

/// One subject per stdlib definition, parameterized ones instantiated with
/// stdlib or host arguments.
std::vector<Subject> stdlib_subjects(const Interpreter& stdlib);

Outcome check_prfa(const Bijection& b, const Gen& gen, size_t cases,
                   uint64_t seed);
Outcome check_prfb(const Bijection& b, const Gen& gen, size_t cases,
                   uint64_t seed);
/// a.forward(v) == b.forward(v) on generated v.
Outcome check_equal(const Bijection& a, const Bijection& b, const Gen& gen,
                    size_t cases, uint64_t seed);

/// reverse(reverse(d)) == d structurally for every definition.
Outcome check_reverse_involution(const Program& program);
/// forward of the reversed definition agrees with backward of the original.
Outcome check_reverse_agreement(const Interpreter& interp, const Subject& s,
                                size_t cases, uint64_t seed);

/// r = 2, freqs [1, 3], heads in [2^32, 2^32 + 4096), empty tail.
Outcome check_ans_exhaustive();

/// The multiset of n symbols with counts n * freq / 2^r (remainders to the
/// most frequent symbols), shuffled.
std::vector<uint32_t> exact_composition(const ans::CategoricalTable& table,
                                        size_t n, uint64_t seed);

struct RateReport {
  double measured = 0;  // bits per symbol
  double lower = 0;
  double upper = 0;
  bool passed() const { return measured >= lower && measured <= upper; }
};
/// freqs [2048, 1024, 512, 512], r = 12.
RateReport dyadic_rate(size_t n, uint64_t seed);
/// Net bits-back rate on n marginal samples against negative_elbo +- 0.05.
RateReport bbans_rate(const bbans::LatentModel& model, size_t n,
                      uint64_t seed);
/// Host and interpreted codecs give identical messages.
Outcome check_host_dsl_agreement(const bbans::LatentModel& model,
                                 size_t trials, uint64_t seed);

struct Options {
  uint64_t seed = 1;
  size_t cases = 1000;
  EvalOptions eval;
  /// Definitions whose backward direction replaces the stdlib's.
  std::optional<Program> mutant;
};

struct Row {
  std::string name;
  Outcome outcome;
  double seconds = 0;
};

std::vector<Row> run_selftest(const Options& options);
void print_table(std::ostream& out, const std::vector<Row>& rows);

}  // namespace flipkit::selftest

#endif  // FLIPKIT_SELFTEST_HPP
