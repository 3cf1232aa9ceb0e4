// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "flipkit/bbans.hpp"
#include "flipkit/error.hpp"
#include "flipkit/selftest.hpp"
#include "support.hpp"

namespace flipkit::bbans {
namespace {

Value obs(uint32_t x) { return Value::ctor("X" + std::to_string(x)); }

uint64_t bits(const Value& m) { return ans::msg_bits(m.message()); }

Value encode_all(const Bijection& codec, const std::vector<uint32_t>& xs) {
  Value m = Value::msg(ans::msg_init());
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    m = codec.forward(Value::pair(std::move(m), obs(*it)));
  }
  return m;
}

TEST(Model, ShippedDemo) {
  LatentModel m = load_model(testing::source_path("models/demo.json"));
  EXPECT_EQ(m.latent_count(), 4u);
  EXPECT_EQ(m.observed_count(), 8u);
  EXPECT_EQ(m.precision, 12);
  EXPECT_EQ(model_to_json(m), model_to_json(demo_model()));
  EXPECT_EQ(model_hash(m), model_hash(demo_model()));
  EXPECT_EQ(model_to_json(parse_model(model_to_json(m))), model_to_json(m));
}

TEST(Model, Validation) {
  const std::string ok =
      R"({"precision": 2, "prior": [4], "likelihood": [[1, 3]], "posterior": [[4], [4]]})";
  EXPECT_NO_THROW(parse_model(ok));
  EXPECT_THROW(parse_model(R"({"precision": 2, "prior": [4], "likelihood": [[0, 4]],
                               "posterior": [[4], [4]]})"),
               ModelError);
  EXPECT_THROW(parse_model(R"({"precision": 2, "prior": [4], "likelihood": [[1, 2]],
                               "posterior": [[4], [4]]})"),
               ModelError);
  EXPECT_THROW(parse_model(R"({"precision": 2, "prior": [4], "likelihood": [[1, 3]]})"),
               ModelError);
  EXPECT_THROW(parse_model(R"({"precision": 2, "prior": [4], "likelihood": [[1, 3]],
                               "posterior": [[4]]})"),
               ModelError);
  EXPECT_THROW(parse_model("{"), ModelError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), ModelError);
  std::vector<std::vector<uint32_t>> post(257, std::vector<uint32_t>{4});
  EXPECT_THROW(make_model(2, {4}, {std::vector<uint32_t>(257, 0)}, post), ModelError);
  std::vector<uint32_t> wide(257, 1);
  wide[0] = 65536 - 256;
  EXPECT_THROW(make_model(16, wide, {}, {}), ModelError);
}

TEST(Model, ExactPosterior) {
  // Oracle: per-symbol cost 2, 2, 3, 3, 4, 4, 4, 4 bits; marginal dyadic.
  const LatentModel m = demo_model();
  const std::vector<double> oracle = {2, 2, 3, 3, 4, 4, 4, 4};
  for (uint32_t x = 0; x < 8; ++x) {
    std::vector<uint32_t> one{x};
    EXPECT_NEAR(negative_elbo(m, one), oracle[x], 1e-12);
    EXPECT_NEAR(marginal_cross_entropy(m, one), oracle[x], 1e-12);
  }
  const auto xs = sample_marginal(m, 10000, 1);
  std::vector<size_t> counts(8);
  for (uint32_t x : xs) ++counts[x];
  double reference = 0;
  for (uint32_t x = 0; x < 8; ++x) reference += counts[x] * oracle[x];
  reference /= 10000;
  EXPECT_NEAR(negative_elbo(m, xs), reference, 1e-12);
  EXPECT_NEAR(negative_elbo(m, xs), marginal_cross_entropy(m, xs), 1e-9);
  const std::vector<double> p = marginal(m);
  double h = 0;
  for (double q : p) h -= q * std::log2(q);
  EXPECT_DOUBLE_EQ(h, 2.75);
}

TEST(Model, SamplerFollowsMarginal) {
  const LatentModel m = demo_model();
  const auto xs = sample_marginal(m, 200000, 2);
  std::vector<double> freq(8);
  for (uint32_t x : xs) freq[x] += 1.0 / xs.size();
  const auto p = marginal(m);
  for (size_t x = 0; x < 8; ++x) EXPECT_NEAR(freq[x], p[x], 0.005);
}

TEST(BbAns, SingleLatentCollapses) {
  const LatentModel m = make_model(12, {4096}, {{1000, 2000, 1096}}, {{4096}, {4096}, {4096}});
  std::vector<uint32_t> xs = sample_marginal(m, 2000, 3);
  const Bijection plain = ans::make_encoder(m.likelihood[0], model_coders(m).observed);
  EXPECT_EQ(encode_all(host_codec(m), xs), encode_all(plain, xs));
  double direct = 0;
  for (uint32_t x : xs) direct -= std::log2(m.likelihood[0].probability(x));
  EXPECT_NEAR(negative_elbo(m, xs), direct / xs.size(), 1e-12);
}

TEST(BbAns, TwoByTwoApproachesEntropy) {
  const LatentModel m = make_model(12, {2048, 2048}, {{3072, 1024}, {1024, 3072}},
                                   {{3072, 1024}, {1024, 3072}});
  const auto xs = sample_marginal(m, 10000, 4);
  const Value out = encode_all(host_codec(m), xs);
  const double rate = (bits(out) - 33.0) / xs.size();
  EXPECT_NEAR(rate, 1.0, 0.05);
}

TEST(BbAns, RoundTripIncludingNearInitial) {
  const LatentModel m = demo_model();
  const Bijection c = host_codec(m);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3000; ++i) {
    ans::Message msg = i % 3 == 0 ? ans::Message{1 + (rng() >> 33), {}} : ans::random_message(rng);
    Value in = Value::pair(Value::msg(msg), obs(static_cast<uint32_t>(rng() % 8)));
    ASSERT_EQ(c.backward(c.forward(in)), in);
    Value w = Value::msg(msg);
    ASSERT_EQ(c.forward(c.backward(w)), w);
  }
}

TEST(BbAns, Chaining) {
  const LatentModel m = demo_model();
  const Bijection c = dsl_codec(m);
  const auto xs = sample_marginal(m, 2000, 6);
  Value msg = encode_all(c, xs);
  for (uint32_t x : xs) {
    Value p = c.backward(std::move(msg));
    ASSERT_EQ(p.right(), obs(x));
    msg = std::move(p.left());
  }
  EXPECT_EQ(msg.message(), ans::msg_init());
  EXPECT_EQ(bits(msg), 33u);
}

TEST(BbAns, Rate) {
  auto r = selftest::bbans_rate(demo_model(), 100000, 7);
  EXPECT_TRUE(r.passed()) << r.measured << " not in [" << r.lower << ", " << r.upper << "]";
}

TEST(BbAns, HostAgreesWithInterpreted) {
  auto o = selftest::check_host_dsl_agreement(demo_model(), 1000, 8);
  EXPECT_TRUE(o.passed) << o.counterexample << " " << o.detail;
}

TEST(BbAns, SymbolDomainMismatch) {
  const Bijection c = host_codec(demo_model());
  EXPECT_THROW(c.forward(Value::pair(Value::msg(ans::msg_init()), obs(8))), RuntimeFault);
  EXPECT_THROW(c.forward(Value::pair(Value::msg(ans::msg_init()), Value::integer(1))),
               RuntimeFault);
}

TEST(BbAns, PreludeChecks) {
  const std::string prelude = model_prelude(demo_model());
  EXPECT_NE(prelude.find("data Obs = X0 | X1"), std::string::npos);
  EXPECT_NO_THROW(model_interpreter(demo_model()));
}

}  // namespace
}  // namespace flipkit::bbans
