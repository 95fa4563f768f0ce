#include "rtdrng/bitstream.hpp"

#include <bit>
#include <string>

#include "rtdrng/errors.hpp"

namespace rtd {

BitStream::BitStream(std::size_t len, bool value)
    : bytes_((len + 7) / 8, value ? 0xFF : 0x00), len_(len) {
  if (value && (len_ & 7) != 0) {
    bytes_.back() = static_cast<std::uint8_t>(0xFF << (8 - (len_ & 7)));
  }
}

BitStream BitStream::from_bytes(std::vector<std::uint8_t> bytes, std::size_t len) {
  if (bytes.size() != (len + 7) / 8) {
    throw DomainError("packed payload of " + std::to_string(bytes.size()) +
                      " bytes does not match bit count " + std::to_string(len));
  }
  BitStream out;
  out.bytes_ = std::move(bytes);
  out.len_ = len;
  if ((len & 7) != 0) {
    out.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - (len & 7)));
  }
  return out;
}

BitStream BitStream::from_bits(std::span<const std::uint8_t> bits) {
  BitStream out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b != 0);
  return out;
}

void BitStream::set(std::size_t i, bool value) {
  const auto mask = static_cast<std::uint8_t>(0x80U >> (i & 7));
  if (value) {
    bytes_[i >> 3] |= mask;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void BitStream::push_back(bool bit) {
  if ((len_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (len_ & 7));
  ++len_;
}

void BitStream::append(const BitStream& other) {
  if ((len_ & 7) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    len_ += other.len_;
    return;
  }
  reserve(len_ + other.len_);
  for (std::size_t i = 0; i < other.len_; ++i) push_back(other[i]);
}

BitStream BitStream::slice(std::size_t pos, std::size_t count) const {
  if (pos > len_ || count > len_ - pos) {
    throw DomainError("slice [" + std::to_string(pos) + ", +" + std::to_string(count) +
                      ") exceeds stream of " + std::to_string(len_) + " bits");
  }
  if ((pos & 7) == 0) {
    const auto first = bytes_.begin() + static_cast<std::ptrdiff_t>(pos / 8);
    return from_bytes(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>((count + 7) / 8)),
                      count);
  }
  BitStream out;
  out.bytes_.assign((count + 7) / 8, 0);
  out.len_ = count;
  std::size_t i = 0;
  for (; i + 64 <= count; i += 64) {
    const std::uint64_t w = word_at(pos + i);
    for (int b = 0; b < 8; ++b) {
      out.bytes_[i / 8 + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(w >> (56 - 8 * b));
    }
  }
  for (; i < count; ++i) out.set(i, (*this)[pos + i]);
  return out;
}

std::uint64_t BitStream::word_at(std::size_t pos) const {
  if (pos >= len_) return 0;
  const std::size_t byte = pos >> 3;
  const unsigned shift = pos & 7;
  // Gather 9 bytes so the shifted window is always complete.
  std::uint64_t hi = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    hi <<= 8;
    if (byte + k < bytes_.size()) hi |= bytes_[byte + k];
  }
  std::uint64_t w = hi << shift;
  if (shift != 0 && byte + 8 < bytes_.size()) w |= bytes_[byte + 8] >> (8 - shift);
  const std::size_t avail = len_ - pos;
  if (avail < 64) w &= ~std::uint64_t{0} << (64 - avail);
  return w;
}

std::size_t BitStream::count_ones() const {
  std::size_t n = 0;
  for (auto b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::vector<std::uint8_t> BitStream::to_bits() const {
  std::vector<std::uint8_t> out(len_);
  for (std::size_t i = 0; i < len_; ++i) out[i] = (*this)[i] ? 1 : 0;
  return out;
}

BitStream operator^(const BitStream& a, const BitStream& b) {
  if (a.size() != b.size()) throw DomainError("xor of streams with different lengths");
  std::vector<std::uint8_t> bytes(a.bytes().size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(a.bytes()[i] ^ b.bytes()[i]);
  }
  return BitStream::from_bytes(std::move(bytes), a.size());
}

}  // namespace rtd
