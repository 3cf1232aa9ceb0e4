// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "flipkit/ans.hpp"
#include "flipkit/encoder.hpp"
#include "flipkit/error.hpp"
#include "flipkit/selftest.hpp"

namespace flipkit::ans {
namespace {

constexpr uint64_t k32 = uint64_t{1} << 32;

TEST(Message, Init) {
  EXPECT_EQ(msg_init().head, k32);
  EXPECT_TRUE(msg_init().tail.empty());
  EXPECT_EQ(msg_bits(msg_init()), 33u);
}

TEST(Table, Validation) {
  EXPECT_THROW(CategoricalTable({0, 4}, 2), std::invalid_argument);
  EXPECT_THROW(CategoricalTable({1, 2}, 2), std::invalid_argument);
  EXPECT_THROW(CategoricalTable({}, 2), std::invalid_argument);
  EXPECT_THROW(CategoricalTable(std::vector<uint32_t>(2, 1u << 16), 17), std::invalid_argument);
  CategoricalTable t({1, 3}, 2);
  EXPECT_EQ(t.cdf(0), 0u);
  EXPECT_EQ(t.cdf(1), 1u);
  EXPECT_EQ(t.lookup(0), 0u);
  EXPECT_EQ(t.lookup(3), 1u);
  EXPECT_DOUBLE_EQ(CategoricalTable({2048, 1024, 512, 512}, 12).entropy_bits(), 1.75);
}

TEST(Rans, HandComputed) {
  const CategoricalTable t({1, 3}, 2);
  EXPECT_EQ(rans_encode(msg_init(), 0, t).head, uint64_t{1} << 34);
  EXPECT_EQ(rans_encode(msg_init(), 1, t).head, 5726623062u);
  auto [m, s] = rans_decode(msg_init(), t);
  EXPECT_EQ(s, 0u);
  EXPECT_EQ(m.head, uint64_t{1} << 30);
  // Bits-back stealing from a fresh message is undone exactly.
  EXPECT_EQ(rans_encode(m, s, t), msg_init());
  EXPECT_THROW(rans_encode(msg_init(), 2, t), std::out_of_range);
}

TEST(Rans, Exhaustive) {
  auto o = selftest::check_ans_exhaustive();
  EXPECT_TRUE(o.passed) << o.counterexample << " " << o.detail;
  EXPECT_EQ(o.cases, 3u * 4096u);
}

TEST(Rans, RandomStates) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::vector<uint32_t> freqs;
    const int r = std::uniform_int_distribution<int>(4, 16)(rng);
    const size_t n = std::uniform_int_distribution<size_t>(1, 8)(rng);
    uint32_t left = 1u << r;
    for (size_t s = 0; s + 1 < n && left > 1; ++s) {
      uint32_t f = std::uniform_int_distribution<uint32_t>(1, left - 1)(rng);
      freqs.push_back(f);
      left -= f;
    }
    freqs.push_back(left);
    const CategoricalTable t(freqs, r);
    const Message m = random_message(rng);
    const size_t s = std::uniform_int_distribution<size_t>(0, t.size() - 1)(rng);
    Message e = rans_encode(m, s, t);
    ASSERT_TRUE(e.valid());
    EXPECT_EQ(rans_decode(e, t), std::make_pair(m, s));
    auto [d, s2] = rans_decode(m, t);
    ASSERT_TRUE(d.valid());
    EXPECT_EQ(rans_encode(d, s2, t), m);
  }
}

TEST(Rans, HalvingTableCostsOneBit) {
  const CategoricalTable t({2048, 2048}, 12);
  std::mt19937_64 rng(2);
  Message m = msg_init();
  for (uint64_t n = 1; n <= 10000; ++n) {
    push_symbol(m, rng() & 1, t);
    ASSERT_EQ(msg_bits(m) - 33, n);
  }
}

TEST(Rans, FirstWordPush) {
  const CategoricalTable t({1, 3}, 2);
  Message m = msg_init();
  while (m.tail.empty()) push_symbol(m, 0, t);
  EXPECT_GE(msg_bits(m), 65u);
  EXPECT_LE(msg_bits(m), 96u);
}

TEST(Rans, MonotoneBits) {
  std::mt19937_64 rng(3);
  const CategoricalTable t({100, 3000, 996}, 12);
  for (int i = 0; i < 5000; ++i) {
    Message m = random_message(rng);
    const uint64_t before = msg_bits(m);
    push_symbol(m, rng() % 3, t);
    EXPECT_GE(msg_bits(m), before);
  }
}

TEST(Rans, DyadicRate) {
  auto r = selftest::dyadic_rate(100000, 9);
  EXPECT_GE(r.measured, 1.75);
  EXPECT_LE(r.measured, 1.75 + 0.001 + 64.0 / 100000);
}

TEST(Rans, ExactComposition) {
  const CategoricalTable t({2048, 1024, 512, 512}, 12);
  auto xs = selftest::exact_composition(t, 100000, 1);
  std::vector<size_t> counts(4);
  for (uint32_t x : xs) ++counts[x];
  EXPECT_EQ(counts, (std::vector<size_t>{50000, 25000, 12500, 12500}));
}

TEST(Format, RoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    Message m = random_message(rng, 20);
    EXPECT_EQ(deserialize(serialize(m)), m);
  }
  const std::vector<uint8_t> bytes = serialize(Message{k32 + 5, {7, 8}});
  const std::vector<uint8_t> expected = {'F', 'L', 'P', 'M', 1, 0, 0, 0, 1, 0, 0, 0, 5,
                                         0,   0,   0,   2,   0, 0, 0, 7, 0, 0, 0, 8};
  EXPECT_EQ(bytes, expected);
}

TEST(Format, Errors) {
  std::vector<uint8_t> bytes = serialize(Message{k32 + 5, {7, 8}});
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), FormatError);
  bad = bytes;
  bad[4] = 2;
  EXPECT_THROW(deserialize(bad), FormatError);
  bad = bytes;
  bad.pop_back();
  EXPECT_THROW(deserialize(bad), FormatError);
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(deserialize(bad), FormatError);
  // Head below 2^32 with a tail.
  bad = serialize(Message{5, {}});
  bad[16] = 1;
  bad.insert(bad.end(), {0, 0, 0, 1});
  EXPECT_THROW(deserialize(bad), FormatError);
}

Value bit(const char* b) { return Value::ctor(b); }

TEST(Encoder, BitIsOneBit) {
  const Bijection e = make_encoder(CategoricalTable({2048, 2048}, 12),
                                   SymbolDescriptor::constructors({"O", "I"}));
  Value m = Value::msg(msg_init());
  std::mt19937_64 rng(5);
  const size_t n = 10000;
  for (size_t i = 0; i < n; ++i) {
    m = e.forward(Value::pair(std::move(m), bit(rng() & 1 ? "I" : "O")));
  }
  const double rate = static_cast<double>(msg_bits(m.message()) - 33) / n;
  EXPECT_GE(rate, 1.0);
  EXPECT_LE(rate, 1.0 + 64.0 / n);
  Value one = e.forward(Value::pair(Value::msg(msg_init()), bit("I")));
  EXPECT_EQ(e.backward(one), Value::pair(Value::msg(msg_init()), bit("I")));
}

TEST(Encoder, Errors) {
  EXPECT_THROW(SymbolDescriptor::constructors({"A", "A"}), std::invalid_argument);
  EXPECT_THROW(make_encoder(CategoricalTable({1, 3}, 2), SymbolDescriptor::integers(3)),
               std::invalid_argument);
  const Bijection e = make_encoder(CategoricalTable({1, 3}, 2), SymbolDescriptor::integers(2));
  EXPECT_THROW(e.forward(Value::pair(Value::msg(msg_init()), Value::integer(2))), RuntimeFault);
  EXPECT_THROW(e.forward(Value::pair(Value::integer(0), Value::integer(1))), RuntimeFault);
}

TEST(EncodeList, Laws) {
  const Bijection e = make_encoder(CategoricalTable({1000, 3096}, 12),
                                   SymbolDescriptor::integers(2));
  const Value m0 = Value::msg(msg_init());
  // n = 0 is the identity on messages.
  Value empty = encode_list(e, 0).forward(Value::pair(m0, make_list({})));
  EXPECT_EQ(empty, m0);
  // n = 1 is e.
  EXPECT_EQ(encode_list(e, 1).forward(Value::pair(m0, make_list({Value::integer(1)}))),
            e.forward(Value::pair(m0, Value::integer(1))));
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Value> items;
    for (int i = 0; i < 100; ++i) items.push_back(Value::integer(static_cast<int64_t>(rng() & 1)));
    const Bijection l = encode_list(e, 100);
    Value in = Value::pair(Value::msg(random_message(rng)), make_list(items));
    EXPECT_EQ(l.backward(l.forward(in)), in);
  }
  // Decoding yields the front first.
  Value two = encode_list(e, 2).forward(
      Value::pair(m0, make_list({Value::integer(1), Value::integer(0)})));
  EXPECT_EQ(e.backward(two).right(), Value::integer(1));
  EXPECT_THROW(encode_list(e, 3).forward(Value::pair(m0, make_list({Value::integer(1)}))),
               RuntimeFault);
}

}  // namespace
}  // namespace flipkit::ans
