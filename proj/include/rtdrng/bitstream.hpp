#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtd {

/// Packed, exactly-sized bit sequence.
///
/// Bit 0 is the most significant bit of byte 0. Pad bits in the final byte are
/// always zero, so two streams with equal bits compare equal byte-for-byte.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::size_t len, bool value = false);

  /// Adopts packed storage; throws DomainError if `bytes` cannot hold `len` bits.
  static BitStream from_bytes(std::vector<std::uint8_t> bytes, std::size_t len);
  /// Builds from one byte per bit (any nonzero byte is a one).
  static BitStream from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool operator[](std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U; }
  void set(std::size_t i, bool value);
  void push_back(bool bit);
  void append(const BitStream& other);
  void reserve(std::size_t bits) { bytes_.reserve((bits + 7) / 8); }

  /// Copy of bits [pos, pos + count); throws DomainError when out of range.
  BitStream slice(std::size_t pos, std::size_t count) const;

  /// 64 bits starting at `pos`, first bit in the most significant position,
  /// zero-filled past the end of the stream.
  std::uint64_t word_at(std::size_t pos) const;

  std::size_t count_ones() const;

  /// One byte (0 or 1) per bit.
  std::vector<std::uint8_t> to_bits() const;

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t len_ = 0;
};

BitStream operator^(const BitStream& a, const BitStream& b);

}  // namespace rtd
