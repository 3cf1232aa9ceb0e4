// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/ans.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

namespace flipkit::ans {

namespace {

constexpr uint64_t kWordBits = 32;
constexpr uint64_t kLowerBound = uint64_t{1} << kWordBits;
constexpr uint8_t kMessageVersion = 1;

void put_be(std::vector<uint8_t>& out, uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) {
    out.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
}

uint64_t get_be(std::span<const uint8_t> bytes, size_t& offset, int n) {
  if (bytes.size() < offset + static_cast<size_t>(n)) {
    throw FormatError("truncated message");
  }
  uint64_t v = 0;
  for (int i = 0; i < n; ++i) v = (v << 8) | bytes[offset++];
  return v;
}

}  // namespace

Message msg_init() { return Message{}; }

uint64_t msg_bits(const Message& m) {
  return kWordBits * m.tail.size() + std::bit_width(m.head);
}

CategoricalTable::CategoricalTable(std::vector<uint32_t> freqs, int precision)
    : freqs_(std::move(freqs)), precision_(precision) {
  if (precision_ < 1 || precision_ > kMaxPrecision) {
    throw std::invalid_argument("precision must be in [1, 16], got " +
                                std::to_string(precision_));
  }
  if (freqs_.empty()) throw std::invalid_argument("empty frequency table");
  uint64_t total = 0;
  cdf_.reserve(freqs_.size());
  for (size_t i = 0; i < freqs_.size(); ++i) {
    if (freqs_[i] == 0) {
      throw std::invalid_argument("frequency of symbol " + std::to_string(i) +
                                  " is zero");
    }
    cdf_.push_back(static_cast<uint32_t>(total));
    total += freqs_[i];
  }
  if (total != (uint64_t{1} << precision_)) {
    throw std::invalid_argument("frequencies sum to " + std::to_string(total) +
                                ", expected 2^" + std::to_string(precision_));
  }
}

size_t CategoricalTable::lookup(uint32_t slot) const {
  // Linear scan; tables here are small.
  for (size_t s = 0; s + 1 < freqs_.size(); ++s) {
    if (slot < cdf_[s] + freqs_[s]) return s;
  }
  return freqs_.size() - 1;
}

double CategoricalTable::probability(size_t symbol) const {
  return std::ldexp(static_cast<double>(freqs_[symbol]), -precision_);
}

double CategoricalTable::entropy_bits() const {
  double h = 0;
  for (size_t s = 0; s < freqs_.size(); ++s) {
    double p = probability(s);
    h -= p * std::log2(p);
  }
  return h;
}

void push_symbol(Message& m, size_t symbol, const CategoricalTable& table) {
  if (symbol >= table.size()) {
    throw std::out_of_range("symbol " + std::to_string(symbol) +
                            " outside table of size " +
                            std::to_string(table.size()));
  }
  assert(m.valid());
  const int r = table.precision();
  const uint64_t f = table.freq(symbol);
  // head >= f * 2^(64 - r), written without overflowing when f == 2^r.
  while ((m.head >> (64 - r)) >= f) {
    m.tail.push_back(static_cast<uint32_t>(m.head));
    m.head >>= kWordBits;
  }
  m.head = ((m.head / f) << r) + (m.head % f) + table.cdf(symbol);
  assert(m.valid());
}

size_t pop_symbol(Message& m, const CategoricalTable& table) {
  assert(m.valid());
  const int r = table.precision();
  const uint64_t mask = (uint64_t{1} << r) - 1;
  const auto slot = static_cast<uint32_t>(m.head & mask);
  const size_t symbol = table.lookup(slot);
  m.head = table.freq(symbol) * (m.head >> r) + slot - table.cdf(symbol);
  while (m.head < kLowerBound && !m.tail.empty()) {
    m.head = (m.head << kWordBits) | m.tail.back();
    m.tail.pop_back();
  }
  assert(m.valid());
  return symbol;
}

Message rans_encode(Message m, size_t symbol, const CategoricalTable& table) {
  push_symbol(m, symbol, table);
  return m;
}

std::pair<Message, size_t> rans_decode(Message m,
                                       const CategoricalTable& table) {
  size_t symbol = pop_symbol(m, table);
  return {std::move(m), symbol};
}

std::vector<uint8_t> serialize(const Message& m) {
  std::vector<uint8_t> out = {'F', 'L', 'P', 'M', kMessageVersion};
  out.reserve(out.size() + 12 + 4 * m.tail.size());
  put_be(out, m.head, 8);
  put_be(out, m.tail.size(), 4);
  for (uint32_t w : m.tail) put_be(out, w, 4);
  return out;
}

Message deserialize(std::span<const uint8_t> bytes, size_t& offset) {
  if (bytes.size() < offset + 5 || bytes[offset] != 'F' ||
      bytes[offset + 1] != 'L' || bytes[offset + 2] != 'P' ||
      bytes[offset + 3] != 'M') {
    throw FormatError("bad message magic");
  }
  if (bytes[offset + 4] != kMessageVersion) {
    throw FormatError("unsupported message version " +
                      std::to_string(bytes[offset + 4]));
  }
  offset += 5;
  Message m;
  m.head = get_be(bytes, offset, 8);
  uint64_t len = get_be(bytes, offset, 4);
  if (bytes.size() - offset < 4 * len) throw FormatError("truncated message");
  m.tail.reserve(len);
  for (uint64_t i = 0; i < len; ++i) {
    m.tail.push_back(static_cast<uint32_t>(get_be(bytes, offset, 4)));
  }
  if (!m.valid()) throw FormatError("message head below 2^32 with nonempty tail");
  return m;
}

Message deserialize(std::span<const uint8_t> bytes) {
  size_t offset = 0;
  Message m = deserialize(bytes, offset);
  if (offset != bytes.size()) throw FormatError("trailing bytes after message");
  return m;
}

Message random_message(std::mt19937_64& rng, size_t max_words) {
  Message m;
  std::uniform_int_distribution<size_t> len(0, max_words);
  m.tail.resize(len(rng));
  for (uint32_t& w : m.tail) w = static_cast<uint32_t>(rng());
  std::uniform_int_distribution<uint64_t> head(
      m.tail.empty() ? 1 : kLowerBound, ~uint64_t{0});
  m.head = head(rng);
  return m;
}

}  // namespace flipkit::ans
