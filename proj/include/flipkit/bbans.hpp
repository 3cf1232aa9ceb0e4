// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_BBANS_HPP
#define FLIPKIT_BBANS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flipkit/ans.hpp"
#include "flipkit/encoder.hpp"
#include "flipkit/interp.hpp"
#include "flipkit/value.hpp"

namespace flipkit::bbans {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Discrete latent model: prior over K latents, a likelihood table over V
/// observations per latent, and an approximate posterior per observation.
/// All tables share one precision.
struct LatentModel {
  int precision = 0;
  ans::CategoricalTable prior;
  std::vector<ans::CategoricalTable> likelihood;  // K tables over V
  std::vector<ans::CategoricalTable> posterior;   // V tables over K

  size_t latent_count() const { return prior.size(); }
  size_t observed_count() const { return posterior.size(); }
};

/// Validates shapes, sums and ranges (K, V in [1, 256]). Throws ModelError.
LatentModel make_model(int precision, std::vector<uint32_t> prior,
                       std::vector<std::vector<uint32_t>> likelihood,
                       std::vector<std::vector<uint32_t>> posterior);
/// JSON text with fields precision, prior, likelihood, posterior.
LatentModel parse_model(std::string_view text);
/// Throws ModelError, including for an unreadable file.
LatentModel load_model(const std::string& path);
/// Canonical JSON; parse_model(model_to_json(m)) rebuilds m.
std::string model_to_json(const LatentModel& model);
/// FNV-1a of the canonical JSON.
uint64_t model_hash(const LatentModel& model);

/// K=4, V=8, r=12, with the exact quantized posterior.
LatentModel demo_model();

/// Marginal P(x) from the quantized prior and likelihood.
std::vector<double> marginal(const LatentModel& model);
/// Mean over xs of E_Q[-log2 P(z) - log2 P(x|z) + log2 Q(z|x)], in bits.
double negative_elbo(const LatentModel& model, std::span<const uint32_t> xs);
/// Mean of -log2 P(x) over xs.
double marginal_cross_entropy(const LatentModel& model,
                              std::span<const uint32_t> xs);
/// i.i.d. draws from the marginal, latent first.
std::vector<uint32_t> sample_marginal(const LatentModel& model, size_t n,
                                      uint64_t seed);

/// Encoder for data x: decode z with flip (qzx x), encode x with pxz z,
/// encode z with pz.
Bijection bb_ans(Bijection pz, BijectionFamily pxz, BijectionFamily qzx);

struct ModelCoders {
  ans::SymbolDescriptor latent;    // Z0 .. Z{K-1}
  ans::SymbolDescriptor observed;  // X0 .. X{V-1}
  Bijection prior;
  BijectionFamily likelihood;
  BijectionFamily posterior;
};
ModelCoders model_coders(const LatentModel& model);

/// bb_ans over model_coders(model), composed in the host.
Bijection host_codec(const LatentModel& model);

/// Data declarations, extern declarations and a `modelCodec` definition
/// applying the stdlib bbAns to the model's encoders.
std::string model_prelude(const LatentModel& model);
/// Stdlib plus model_prelude, checked, with the model's encoders registered.
Interpreter model_interpreter(const LatentModel& model, EvalOptions options = {});
/// The interpreted `modelCodec`.
Bijection dsl_codec(const LatentModel& model, EvalOptions options = {});

}  // namespace flipkit::bbans

#endif  // FLIPKIT_BBANS_HPP
