// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "flipkit/container.hpp"
#include "flipkit/error.hpp"

namespace flipkit {
namespace {

using bbans::demo_model;

TEST(Container, RoundTrip) {
  const auto m = demo_model();
  const auto xs = bbans::sample_marginal(m, 5000, 11);
  const Container c = compress(m, xs);
  EXPECT_EQ(c.symbol_count, xs.size());
  EXPECT_EQ(c.model_hash, bbans::model_hash(m));
  const auto bytes = write_container(c);
  EXPECT_EQ(read_container(bytes), c);
  EXPECT_EQ(decompress(m, read_container(bytes)), xs);
}

TEST(Container, EmptyAndSingle) {
  const auto m = demo_model();
  const Container e = compress(m, std::vector<uint32_t>{});
  EXPECT_EQ(e.symbol_count, 0u);
  EXPECT_EQ(e.message, ans::msg_init());
  EXPECT_TRUE(decompress(m, e).empty());
  const std::vector<uint32_t> one{5};
  EXPECT_EQ(decompress(m, compress(m, one)), one);
}

TEST(Container, Deterministic) {
  const auto m = demo_model();
  const auto xs = bbans::sample_marginal(m, 2000, 12);
  EXPECT_EQ(write_container(compress(m, xs)), write_container(compress(m, xs)));
}

TEST(Container, RoutesAgree) {
  const auto m = demo_model();
  const auto xs = bbans::sample_marginal(m, 2000, 13);
  const Container a = compress(m, xs, CodecRoute::Interpreted);
  const Container b = compress(m, xs, CodecRoute::Host);
  EXPECT_EQ(a, b);
  EXPECT_EQ(decompress(m, a, CodecRoute::Host), xs);
}

TEST(Container, WrongModel) {
  const auto m = demo_model();
  const auto other = bbans::make_model(12, {2048, 2048}, {{3072, 1024}, {1024, 3072}},
                                       {{3072, 1024}, {1024, 3072}});
  const Container c = compress(m, std::vector<uint32_t>{1, 0});
  EXPECT_THROW(decompress(other, c), ModelMismatch);
}

TEST(Container, SymbolOutOfRange) {
  EXPECT_THROW(compress(demo_model(), std::vector<uint32_t>{8}), RuntimeFault);
}

TEST(Container, Corruption) {
  const auto m = demo_model();
  const auto bytes = write_container(compress(m, std::vector<uint32_t>{1, 2, 3, 4}));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(read_container(bad), ans::FormatError);
  bad = bytes;
  bad[4] = 2;
  EXPECT_THROW(read_container(bad), ans::FormatError);
  for (size_t n = 0; n < bytes.size(); ++n) {
    EXPECT_THROW(read_container(std::span(bytes).first(n)), ans::FormatError) << n;
  }
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(read_container(bad), ans::FormatError);
  Container c = read_container(bytes);
  c.symbol_count += 1;
  EXPECT_ANY_THROW(decompress(m, c));
  c = read_container(bytes);
  c.symbol_count -= 1;
  EXPECT_THROW(decompress(m, c), ans::FormatError);
}

}  // namespace
}  // namespace flipkit
