#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rtdrng/bitstream.hpp"

namespace rtd {

/// Block-wise hashing parameters: n input bits -> l output bits per block,
/// one seed of n + l - 1 bits shared by all blocks, security 2^-epsilon_exponent.
struct ExtractorConfig {
  std::size_t n = 1000;
  std::size_t l = 330;
  BitStream seed;
  unsigned epsilon_exponent = 32;

  void validate() const;
};

/// -log2 of the larger empirical symbol frequency. Needs at least 1000 bits.
double min_entropy_estimate(const BitStream& bits);

/// Leftover-hash output length floor(n * h_min - 2k); throws
/// InsufficientEntropy when that is not positive.
std::size_t choose_block_params(double h_min, std::size_t n, unsigned epsilon_exponent);

/// Seeded binary convolution over GF(2): out[j] = XOR_i seed[j + i] & block[i].
BitStream seeded_hash_block(const BitStream& seed, const BitStream& block, std::size_t l);

/// Word-parallel form of seeded_hash_block for one fixed seed. Each output bit
/// is the parity of (seed window j) AND block, with the n-bit seed windows
/// packed once up front.
class ConvolutionHash {
 public:
  ConvolutionHash(const BitStream& seed, std::size_t n, std::size_t l);

  std::size_t input_bits() const { return n_; }
  std::size_t output_bits() const { return l_; }

  /// Hashes bits [pos, pos + n) of `input` and appends l bits to `out`.
  void hash_into(const BitStream& input, std::size_t pos, BitStream& out) const;

 private:
  std::size_t n_;
  std::size_t l_;
  std::size_t words_;
  std::vector<std::uint64_t> windows_;  // l rows of `words_` words
};

/// Hashes floor(len / n) full blocks and concatenates the outputs; a trailing
/// partial block is discarded.
BitStream extract(const BitStream& bits, const ExtractorConfig& cfg);

/// Seed of n + l - 1 bits expanded from a digest of the first 10 (n + l) bits
/// of `raw` (fewer if the stream is shorter).
BitStream derive_seed(const BitStream& raw, std::size_t n, std::size_t l);

/// FNV-1a 64 over the bit count and packed payload. Identification only.
std::uint64_t fingerprint(const BitStream& bits);

}  // namespace rtd
