// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_CONTAINER_HPP
#define FLIPKIT_CONTAINER_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "flipkit/ans.hpp"
#include "flipkit/bbans.hpp"

namespace flipkit {

/// "FLPC", version 1, model hash (8 bytes), symbol count (8 bytes
/// big-endian), then the serialized message.
struct Container {
  uint64_t model_hash = 0;
  uint64_t symbol_count = 0;
  ans::Message message;

  friend bool operator==(const Container&, const Container&) = default;
};

std::vector<uint8_t> write_container(const Container& c);
/// Throws ans::FormatError on bad magic, version, truncation or trailing
/// bytes.
Container read_container(std::span<const uint8_t> bytes);

class ModelMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CodecRoute { Interpreted, Host };

/// Codes `symbols` (each < V) with the bits-back codec of `model`.
/// Throws RuntimeFault for an out-of-range symbol.
Container compress(const bbans::LatentModel& model,
                   std::span<const uint32_t> symbols,
                   CodecRoute route = CodecRoute::Interpreted);
/// Throws ModelMismatch on a hash mismatch, ans::FormatError if the message
/// does not unwind to the initial message.
std::vector<uint32_t> decompress(const bbans::LatentModel& model,
                                 const Container& c,
                                 CodecRoute route = CodecRoute::Interpreted);

}  // namespace flipkit

#endif  // FLIPKIT_CONTAINER_HPP
