// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/container.hpp"

#include <string>

#include "flipkit/error.hpp"

namespace flipkit {

namespace {

constexpr uint8_t kVersion = 1;

void put_be(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_be(std::span<const uint8_t> bytes, size_t& offset) {
  if (bytes.size() < offset + 8) throw ans::FormatError("truncated container");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[offset++];
  return v;
}

Bijection codec(const bbans::LatentModel& model, CodecRoute route) {
  return route == CodecRoute::Host ? bbans::host_codec(model)
                                   : bbans::dsl_codec(model);
}

}  // namespace

std::vector<uint8_t> write_container(const Container& c) {
  std::vector<uint8_t> out = {'F', 'L', 'P', 'C', kVersion};
  put_be(out, c.model_hash);
  put_be(out, c.symbol_count);
  std::vector<uint8_t> msg = ans::serialize(c.message);
  out.insert(out.end(), msg.begin(), msg.end());
  return out;
}

Container read_container(std::span<const uint8_t> bytes) {
  if (bytes.size() < 5 || bytes[0] != 'F' || bytes[1] != 'L' ||
      bytes[2] != 'P' || bytes[3] != 'C') {
    throw ans::FormatError("bad container magic");
  }
  if (bytes[4] != kVersion) {
    throw ans::FormatError("unsupported container version " +
                           std::to_string(bytes[4]));
  }
  size_t offset = 5;
  Container c;
  c.model_hash = get_be(bytes, offset);
  c.symbol_count = get_be(bytes, offset);
  c.message = ans::deserialize(bytes, offset);
  if (offset != bytes.size()) throw ans::FormatError("trailing bytes after container");
  return c;
}

Container compress(const bbans::LatentModel& model,
                   std::span<const uint32_t> symbols, CodecRoute route) {
  const Bijection enc = codec(model, route);
  const auto observed = bbans::model_coders(model).observed;
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= model.observed_count()) {
      throw RuntimeFault("symbol " + std::to_string(symbols[i]) +
                         " at position " + std::to_string(i) +
                         " outside [0, " +
                         std::to_string(model.observed_count()) + ")");
    }
  }
  Value m = Value::msg(ans::msg_init());
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
    m = enc.forward(Value::pair(std::move(m), observed.value_of(*it)));
  }
  return Container{bbans::model_hash(model), symbols.size(),
                   std::move(m.message())};
}

std::vector<uint32_t> decompress(const bbans::LatentModel& model,
                                 const Container& c, CodecRoute route) {
  if (c.model_hash != bbans::model_hash(model)) {
    throw ModelMismatch("container was written with a different model");
  }
  const Bijection enc = codec(model, route);
  const auto observed = bbans::model_coders(model).observed;
  std::vector<uint32_t> out;
  out.reserve(c.symbol_count);
  Value m = Value::msg(c.message);
  for (uint64_t i = 0; i < c.symbol_count; ++i) {
    Value p = enc.backward(std::move(m));
    out.push_back(static_cast<uint32_t>(observed.index_of(p.right())));
    m = std::move(p.left());
  }
  if (!(m.message() == ans::msg_init())) {
    throw ans::FormatError("message does not unwind to the initial state");
  }
  return out;
}

}  // namespace flipkit
