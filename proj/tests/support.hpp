#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "rtdrng/bitstream.hpp"

namespace rtd::testing {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Same stream as tests/oracles/sp800_22_reference.py.
inline BitStream splitmix_bits(std::uint64_t seed, std::size_t n) {
  BitStream out;
  out.reserve(n);
  std::uint64_t x = seed;
  while (out.size() < n) {
    const std::uint64_t z = splitmix64(x);
    for (int i = 63; i >= 0 && out.size() < n; --i) out.push_back(((z >> i) & 1U) != 0);
  }
  return out;
}

inline BitStream bits_from_string(const std::string& s) {
  BitStream out;
  for (char c : s) {
    if (c == '0' || c == '1') out.push_back(c == '1');
  }
  return out;
}

inline BitStream bernoulli_bits(std::uint64_t seed, std::size_t n, double p) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BitStream out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(u(gen) < p);
  return out;
}

inline std::filesystem::path data_dir() { return RTDRNG_TEST_DATA_DIR; }

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rtdrng_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace rtd::testing
