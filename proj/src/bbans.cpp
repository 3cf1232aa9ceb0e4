// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/bbans.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "flipkit/checker.hpp"
#include "flipkit/parser.hpp"
#include "flipkit/stdlib.hpp"

namespace flipkit::bbans {

using ans::CategoricalTable;
using json = nlohmann::json;

namespace {

constexpr size_t kMaxSymbols = 256;

CategoricalTable table(std::vector<uint32_t> freqs, int precision,
                       const std::string& what) {
  try {
    return CategoricalTable(std::move(freqs), precision);
  } catch (const std::invalid_argument& e) {
    throw ModelError(what + ": " + e.what());
  }
}

std::vector<std::string> names(char prefix, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<uint32_t> as_vector(std::span<const uint32_t> s) {
  return {s.begin(), s.end()};
}

}  // namespace

LatentModel make_model(int precision, std::vector<uint32_t> prior,
                       std::vector<std::vector<uint32_t>> likelihood,
                       std::vector<std::vector<uint32_t>> posterior) {
  const size_t k = prior.size();
  const size_t v = posterior.size();
  if (k < 1 || k > kMaxSymbols) {
    throw ModelError("latent count " + std::to_string(k) +
                     " outside [1, 256]");
  }
  if (v < 1 || v > kMaxSymbols) {
    throw ModelError("observed count " + std::to_string(v) +
                     " outside [1, 256]");
  }
  if (likelihood.size() != k) {
    throw ModelError("likelihood has " + std::to_string(likelihood.size()) +
                     " rows, expected " + std::to_string(k));
  }
  LatentModel m{precision, table(std::move(prior), precision, "prior"), {}, {}};
  for (size_t i = 0; i < k; ++i) {
    if (likelihood[i].size() != v) {
      throw ModelError("likelihood row " + std::to_string(i) + " has " +
                       std::to_string(likelihood[i].size()) +
                       " entries, expected " + std::to_string(v));
    }
    m.likelihood.push_back(table(std::move(likelihood[i]), precision,
                                 "likelihood row " + std::to_string(i)));
  }
  for (size_t j = 0; j < v; ++j) {
    if (posterior[j].size() != k) {
      throw ModelError("posterior row " + std::to_string(j) + " has " +
                       std::to_string(posterior[j].size()) +
                       " entries, expected " + std::to_string(k));
    }
    m.posterior.push_back(table(std::move(posterior[j]), precision,
                                "posterior row " + std::to_string(j)));
  }
  return m;
}

LatentModel parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    return make_model(
        j.at("precision").get<int>(), j.at("prior").get<std::vector<uint32_t>>(),
        j.at("likelihood").get<std::vector<std::vector<uint32_t>>>(),
        j.at("posterior").get<std::vector<std::vector<uint32_t>>>());
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  }
}

LatentModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const LatentModel& model) {
  json j;
  j["precision"] = model.precision;
  j["prior"] = as_vector(model.prior.freqs());
  json lik = json::array();
  for (const auto& t : model.likelihood) lik.push_back(as_vector(t.freqs()));
  json post = json::array();
  for (const auto& t : model.posterior) post.push_back(as_vector(t.freqs()));
  j["likelihood"] = lik;
  j["posterior"] = post;
  return j.dump();
}

uint64_t model_hash(const LatentModel& model) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : model_to_json(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LatentModel demo_model() {
  return make_model(
      12, {1024, 1024, 1024, 1024},
      {{2560, 512, 256, 256, 128, 128, 128, 128},
       {512, 2560, 256, 256, 128, 128, 128, 128},
       {512, 512, 1280, 256, 512, 64, 512, 448},
       {512, 512, 256, 1280, 256, 704, 256, 320}},
      {{2560, 512, 512, 512},
       {512, 2560, 512, 512},
       {512, 512, 2560, 512},
       {512, 512, 512, 2560},
       {512, 512, 2048, 1024},
       {512, 512, 256, 2816},
       {512, 512, 2048, 1024},
       {512, 512, 1792, 1280}});
}

std::vector<double> marginal(const LatentModel& model) {
  std::vector<double> p(model.observed_count(), 0.0);
  for (size_t k = 0; k < model.latent_count(); ++k) {
    for (size_t x = 0; x < p.size(); ++x) {
      p[x] += model.prior.probability(k) * model.likelihood[k].probability(x);
    }
  }
  return p;
}

double negative_elbo(const LatentModel& model, std::span<const uint32_t> xs) {
  const size_t v = model.observed_count();
  // Per-symbol cost, then weighted by counts.
  std::vector<double> cost(v, 0.0);
  for (size_t x = 0; x < v; ++x) {
    for (size_t k = 0; k < model.latent_count(); ++k) {
      const double q = model.posterior[x].probability(k);
      cost[x] += q * (-std::log2(model.prior.probability(k)) -
                      std::log2(model.likelihood[k].probability(x)) +
                      std::log2(q));
    }
  }
  if (xs.empty()) return 0.0;
  double total = 0;
  for (uint32_t x : xs) total += cost.at(x);
  return total / static_cast<double>(xs.size());
}

double marginal_cross_entropy(const LatentModel& model,
                              std::span<const uint32_t> xs) {
  if (xs.empty()) return 0.0;
  const std::vector<double> p = marginal(model);
  double total = 0;
  for (uint32_t x : xs) total -= std::log2(p.at(x));
  return total / static_cast<double>(xs.size());
}

std::vector<uint32_t> sample_marginal(const LatentModel& model, size_t n,
                                      uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> slot(
      0, (uint32_t{1} << model.precision) - 1);
  std::vector<uint32_t> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    size_t z = model.prior.lookup(slot(rng));
    out.push_back(static_cast<uint32_t>(model.likelihood[z].lookup(slot(rng))));
  }
  return out;
}

Bijection bb_ans(Bijection pz, BijectionFamily pxz, BijectionFamily qzx) {
  return Bijection(
      [pz, pxz, qzx](Value v) {
        Value x = std::move(v.right());
        Value c = std::move(v.left());
        Value cz = qzx(x).backward(std::move(c));
        Value z = std::move(cz.right());
        Value c2 = pxz(z).forward(Value::pair(std::move(cz.left()), std::move(x)));
        return pz.forward(Value::pair(std::move(c2), std::move(z)));
      },
      [pz, pxz, qzx](Value c) {
        Value cz = pz.backward(std::move(c));
        Value z = std::move(cz.right());
        Value cx = pxz(z).backward(std::move(cz.left()));
        Value x = std::move(cx.right());
        Value c1 = qzx(x).forward(Value::pair(std::move(cx.left()), std::move(z)));
        return Value::pair(std::move(c1), std::move(x));
      });
}

ModelCoders model_coders(const LatentModel& model) {
  auto latent = ans::SymbolDescriptor::constructors(names('Z', model.latent_count()));
  auto observed =
      ans::SymbolDescriptor::constructors(names('X', model.observed_count()));
  std::vector<Bijection> lik, post;
  for (const auto& t : model.likelihood) lik.push_back(ans::make_encoder(t, observed));
  for (const auto& t : model.posterior) post.push_back(ans::make_encoder(t, latent));
  auto by_latent = [latent, lik](const Value& z) { return lik[latent.index_of(z)]; };
  auto by_observed = [observed, post](const Value& x) {
    return post[observed.index_of(x)];
  };
  return ModelCoders{latent, observed, ans::make_encoder(model.prior, latent),
                     by_latent, by_observed};
}

Bijection host_codec(const LatentModel& model) {
  ModelCoders c = model_coders(model);
  return bb_ans(c.prior, c.likelihood, c.posterior);
}

namespace {

constexpr std::string_view kPriorSig = "(Msg , Latent) <-> Msg";
constexpr std::string_view kLikelihoodSig = "Latent -> (Msg , Obs) <-> Msg";
constexpr std::string_view kPosteriorSig = "Obs -> (Msg , Latent) <-> Msg";

std::string ctor_list(const std::vector<std::string>& ctors) {
  std::string out;
  for (size_t i = 0; i < ctors.size(); ++i) {
    out += (i == 0 ? "" : " | ") + ctors[i];
  }
  return out;
}

}  // namespace

std::string model_prelude(const LatentModel& model) {
  std::string out;
  out += "data Latent = " + ctor_list(names('Z', model.latent_count())) + "\n";
  out += "data Obs = " + ctor_list(names('X', model.observed_count())) + "\n\n";
  out += "extern priorEnc : " + std::string(kPriorSig) + "\n";
  out += "extern likelihoodEnc : " + std::string(kLikelihoodSig) + "\n";
  out += "extern posteriorEnc : " + std::string(kPosteriorSig) + "\n\n";
  out +=
      "flip modelCodec : (Msg , Obs) <-> Msg = {\n"
      "    p <-> p < bbAns priorEnc likelihoodEnc posteriorEnc > c <-> c\n"
      "  }\n";
  return out;
}

Interpreter model_interpreter(const LatentModel& model, EvalOptions options) {
  CheckResult checked = check_program(with_stdlib(parse_program(model_prelude(model))));
  if (!checked.ok()) {
    std::string msg = "model prelude fails to check:";
    for (const auto& e : checked.errors) msg += "\n  " + format_diagnostic("model", e);
    throw std::logic_error(msg);
  }
  Interpreter interp(std::move(*checked.checked), options);
  ModelCoders c = model_coders(model);
  interp.register_external("priorEnc", c.prior, kPriorSig);
  interp.register_external("likelihoodEnc", c.likelihood, kLikelihoodSig);
  interp.register_external("posteriorEnc", c.posterior, kPosteriorSig);
  return interp;
}

Bijection dsl_codec(const LatentModel& model, EvalOptions options) {
  return model_interpreter(model, options).bijection("modelCodec");
}

}  // namespace flipkit::bbans
