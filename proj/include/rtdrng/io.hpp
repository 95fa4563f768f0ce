#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtdrng/bitstream.hpp"

namespace rtd {

/// Bitstream file: magic "RTDBITS1", bit count as 8-byte little-endian,
/// then the packed payload (first bit = MSB of the first byte, zero padded).
std::vector<std::uint8_t> encode_bitstream(const BitStream& bits);
BitStream decode_bitstream(const std::vector<std::uint8_t>& file);

void write_bitstream(const std::filesystem::path& path, const BitStream& bits);
BitStream read_bitstream(const std::filesystem::path& path);

/// Ordered key=value sidecar, one pair per line.
class Metadata {
 public:
  void set(std::string key, std::string value);
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string to_string() const;
  static Metadata parse(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Sidecar path for an output file: "<file>.meta".
std::filesystem::path sidecar_path(const std::filesystem::path& file);

void write_metadata(const std::filesystem::path& file, const Metadata& meta);
Metadata read_metadata(const std::filesystem::path& file);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

std::string hex64(std::uint64_t v);
/// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace rtd
