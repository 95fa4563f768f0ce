#include "rtdrng/extractor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rtdrng/errors.hpp"

namespace rtd {

void ExtractorConfig::validate() const {
  if (!(l > 0 && l < n)) throw ConfigError("extractor.l: need 0 < l < n");
  if (seed.size() != n + l - 1) {
    throw ConfigError("extractor.seed: length " + std::to_string(seed.size()) + " bits, expected n + l - 1 = " +
                      std::to_string(n + l - 1));
  }
}

double min_entropy_estimate(const BitStream& bits) {
  if (bits.size() < 1000) throw DomainError("min_entropy_estimate: need at least 1000 bits");
  const auto ones = static_cast<double>(bits.count_ones());
  const auto total = static_cast<double>(bits.size());
  const double p_max = std::max(ones, total - ones) / total;
  return std::max(0.0, -std::log2(p_max));
}

std::size_t choose_block_params(double h_min, std::size_t n, unsigned epsilon_exponent) {
  if (!(h_min > 0.0 && h_min <= 1.0)) throw InsufficientEntropy();
  if (n == 0) throw DomainError("choose_block_params: n must be >= 1");
  const double l = std::floor(static_cast<double>(n) * h_min - 2.0 * epsilon_exponent);
  if (l <= 0.0) throw InsufficientEntropy();
  return static_cast<std::size_t>(l);
}

BitStream seeded_hash_block(const BitStream& seed, const BitStream& block, std::size_t l) {
  const std::size_t n = block.size();
  if (n == 0 || l == 0 || seed.size() != n + l - 1) {
    throw DomainError("seeded_hash_block: seed must have n + l - 1 bits");
  }
  BitStream out;
  ConvolutionHash(seed, n, l).hash_into(block, 0, out);
  return out;
}

ConvolutionHash::ConvolutionHash(const BitStream& seed, std::size_t n, std::size_t l)
    : n_(n), l_(l), words_((n + 63) / 64) {
  if (n == 0 || l == 0 || seed.size() != n + l - 1) {
    throw DomainError("ConvolutionHash: seed must have n + l - 1 bits");
  }
  windows_.resize(l_ * words_);
  for (std::size_t j = 0; j < l_; ++j) {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = seed.word_at(j + 64 * w);
      const std::size_t remaining = n_ - 64 * w;
      if (remaining < 64) word &= ~std::uint64_t{0} << (64 - remaining);
      windows_[j * words_ + w] = word;
    }
  }
}

void ConvolutionHash::hash_into(const BitStream& input, std::size_t pos, BitStream& out) const {
  if (pos > input.size() || input.size() - pos < n_) {
    throw DomainError("ConvolutionHash: block exceeds input");
  }
  std::vector<std::uint64_t> block(words_);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = input.word_at(pos + 64 * w);
    const std::size_t remaining = n_ - 64 * w;
    if (remaining < 64) word &= ~std::uint64_t{0} << (64 - remaining);
    block[w] = word;
  }
  for (std::size_t j = 0; j < l_; ++j) {
    const std::uint64_t* row = &windows_[j * words_];
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_; ++w) acc ^= row[w] & block[w];
    out.push_back((std::popcount(acc) & 1) != 0);
  }
}

BitStream extract(const BitStream& bits, const ExtractorConfig& cfg) {
  cfg.validate();
  if (bits.size() < cfg.n) throw DomainError("extract: input shorter than one block");
  const ConvolutionHash hash(cfg.seed, cfg.n, cfg.l);
  const std::size_t blocks = bits.size() / cfg.n;
  BitStream out;
  out.reserve(blocks * cfg.l);
  for (std::size_t b = 0; b < blocks; ++b) hash.hash_into(bits, b * cfg.n, out);
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

BitStream derive_seed(const BitStream& raw, std::size_t n, std::size_t l) {
  const std::size_t take = std::min(raw.size(), 10 * (n + l));
  std::uint64_t state = fingerprint(raw.slice(0, take));
  BitStream seed;
  const std::size_t len = n + l - 1;
  seed.reserve(len);
  while (seed.size() < len) {
    const std::uint64_t w = splitmix64(state);
    for (int b = 63; b >= 0 && seed.size() < len; --b) seed.push_back(((w >> b) & 1U) != 0);
  }
  return seed;
}

std::uint64_t fingerprint(const BitStream& bits) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  const auto len = static_cast<std::uint64_t>(bits.size());
  for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(len >> (8 * i)));
  for (auto b : bits.bytes()) mix(b);
  return h;
}

}  // namespace rtd
