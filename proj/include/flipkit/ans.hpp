// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FLIPKIT_ANS_HPP
#define FLIPKIT_ANS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flipkit::ans {

/// Streaming rANS state: a 64-bit head over a stack of 32-bit words.
/// Valid when the tail is empty or head >= 2^32.
struct Message {
  uint64_t head = uint64_t{1} << 32;
  std::vector<uint32_t> tail;  // back() is the most recently pushed word

  bool valid() const { return tail.empty() || head >= (uint64_t{1} << 32); }

  friend bool operator==(const Message&, const Message&) = default;
};

/// head = 2^32 with an empty tail.
Message msg_init();

/// 32 * |tail| + bit width of head.
uint64_t msg_bits(const Message& m);

inline constexpr int kMaxPrecision = 16;

/// Quantized distribution: positive frequencies summing to 2^precision.
class CategoricalTable {
 public:
  /// Throws std::invalid_argument on a zero frequency, a bad precision, a
  /// wrong total, or an empty table.
  CategoricalTable(std::vector<uint32_t> freqs, int precision);

  int precision() const { return precision_; }
  size_t size() const { return freqs_.size(); }
  uint32_t freq(size_t symbol) const { return freqs_[symbol]; }
  uint32_t cdf(size_t symbol) const { return cdf_[symbol]; }
  std::span<const uint32_t> freqs() const { return freqs_; }

  /// The symbol s with cdf(s) <= slot < cdf(s) + freq(s).
  size_t lookup(uint32_t slot) const;

  double probability(size_t symbol) const;
  /// Shannon entropy in bits.
  double entropy_bits() const;

  friend bool operator==(const CategoricalTable&,
                         const CategoricalTable&) = default;

 private:
  std::vector<uint32_t> freqs_;
  std::vector<uint32_t> cdf_;
  int precision_;
};

/// Pushes `symbol` onto `m`. Throws std::out_of_range for a bad symbol.
void push_symbol(Message& m, size_t symbol, const CategoricalTable& table);
/// Pops a symbol; the exact inverse of push_symbol on valid messages.
size_t pop_symbol(Message& m, const CategoricalTable& table);

Message rans_encode(Message m, size_t symbol, const CategoricalTable& table);
std::pair<Message, size_t> rans_decode(Message m,
                                       const CategoricalTable& table);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serialized form: "FLPM", version byte 1, head (8 bytes big-endian), tail
/// length (4 bytes big-endian), then tail words big-endian, bottom first.
std::vector<uint8_t> serialize(const Message& m);
/// Reads a message starting at `offset` and advances it. Throws FormatError.
Message deserialize(std::span<const uint8_t> bytes, size_t& offset);
Message deserialize(std::span<const uint8_t> bytes);

/// A random valid message with up to `max_words` tail words.
Message random_message(std::mt19937_64& rng, size_t max_words = 8);

}  // namespace flipkit::ans

#endif  // FLIPKIT_ANS_HPP
