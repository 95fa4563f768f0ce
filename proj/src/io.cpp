#include "rtdrng/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rtdrng/errors.hpp"

namespace rtd {

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'T', 'D', 'B', 'I', 'T', 'S', '1'};
constexpr std::size_t kHeaderSize = 16;

}  // namespace

std::vector<std::uint8_t> encode_bitstream(const BitStream& bits) {
  std::vector<std::uint8_t> out(kHeaderSize + bits.bytes().size());
  std::memcpy(out.data(), kMagic.data(), kMagic.size());
  const auto len = static_cast<std::uint64_t>(bits.size());
  for (std::size_t i = 0; i < 8; ++i) out[8 + i] = static_cast<std::uint8_t>(len >> (8 * i));
  std::copy(bits.bytes().begin(), bits.bytes().end(), out.begin() + kHeaderSize);
  return out;
}

BitStream decode_bitstream(const std::vector<std::uint8_t>& file) {
  if (file.size() < kHeaderSize || std::memcmp(file.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IoError("not an RTDBITS1 file (bad magic)");
  }
  std::uint64_t len = 0;
  for (int i = 7; i >= 0; --i) len = (len << 8) | file[8 + static_cast<std::size_t>(i)];
  const std::size_t payload = file.size() - kHeaderSize;
  if (payload != (len + 7) / 8) {
    throw IoError("RTDBITS1 payload of " + std::to_string(payload) + " bytes does not match bit count " +
                  std::to_string(len));
  }
  std::vector<std::uint8_t> bytes(file.begin() + kHeaderSize, file.end());
  if ((len & 7) != 0 && (bytes.back() & (0xFF >> (len & 7))) != 0) {
    throw IoError("RTDBITS1 pad bits are not zero");
  }
  return BitStream::from_bytes(std::move(bytes), static_cast<std::size_t>(len));
}

void write_bitstream(const std::filesystem::path& path, const BitStream& bits) {
  const auto data = encode_bitstream(bits);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!os) throw IoError("write failed: " + path.string());
}

BitStream read_bitstream(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_bitstream(data);
}

void Metadata::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Metadata::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Metadata::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

Metadata Metadata::parse(const std::string& text) {
  Metadata meta;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("malformed metadata line: " + line);
    meta.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return meta;
}

std::filesystem::path sidecar_path(const std::filesystem::path& file) {
  auto p = file;
  p += ".meta";
  return p;
}

void write_metadata(const std::filesystem::path& file, const Metadata& meta) {
  write_text(sidecar_path(file), meta.to_string());
}

Metadata read_metadata(const std::filesystem::path& file) { return Metadata::parse(read_text(sidecar_path(file))); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace rtd
