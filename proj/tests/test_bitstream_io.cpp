#include <gtest/gtest.h>

#include <fstream>

#include "rtdrng/bitstream.hpp"
#include "rtdrng/errors.hpp"
#include "rtdrng/io.hpp"
#include "support.hpp"

using namespace rtd;
using rtd::testing::bits_from_string;
using rtd::testing::splitmix_bits;

TEST(BitStream, PackingIsMsbFirst) {
  const auto b = bits_from_string("10000000 1");
  ASSERT_EQ(b.bytes().size(), 2U);
  EXPECT_EQ(b.bytes()[0], 0x80);
  EXPECT_EQ(b.bytes()[1], 0x80);
  EXPECT_EQ(b.size(), 9U);
}

TEST(BitStream, SetPushAndCount) {
  BitStream b(10, false);
  b.set(3, true);
  b.set(9, true);
  b.push_back(true);
  EXPECT_EQ(b.size(), 11U);
  EXPECT_EQ(b.count_ones(), 3U);
  b.set(3, false);
  EXPECT_FALSE(b[3]);
  EXPECT_EQ(b.count_ones(), 2U);
}

TEST(BitStream, FromBytesMasksPadAndChecksSize) {
  const auto b = BitStream::from_bytes({0xFF, 0xFF}, 12);
  EXPECT_EQ(b.bytes()[1], 0xF0);
  EXPECT_EQ(b.count_ones(), 12U);
  EXPECT_THROW(BitStream::from_bytes({0xFF}, 12), DomainError);
}

TEST(BitStream, SliceAppendWord) {
  const auto s = splitmix_bits(1, 1000);
  for (std::size_t pos : {0UL, 3UL, 8UL, 513UL}) {
    const auto part = s.slice(pos, 100);
    for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(part[i], s[pos + i]);
  }
  auto a = s.slice(0, 333);
  a.append(s.slice(333, 667));
  EXPECT_EQ(a, s);

  const std::uint64_t w = s.word_at(5);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(((w >> (63 - i)) & 1U) != 0, s[5 + i]);
  const std::uint64_t tail = s.word_at(990);
  EXPECT_EQ(tail & ((1ULL << 54) - 1), 0U);  // zero fill past the end
  EXPECT_THROW(s.slice(990, 20), DomainError);
}

TEST(BitStream, XorAndBits) {
  const auto a = bits_from_string("1100");
  const auto b = bits_from_string("1010");
  EXPECT_EQ(a ^ b, bits_from_string("0110"));
  EXPECT_THROW(a ^ bits_from_string("1"), DomainError);
  const auto v = a.to_bits();
  EXPECT_EQ(BitStream::from_bits(v), a);
}

TEST(BitstreamFile, EightBitsIsHeaderPlusOneByte) {
  const auto enc = encode_bitstream(bits_from_string("10110001"));
  ASSERT_EQ(enc.size(), 17U);
  EXPECT_EQ(std::string(enc.begin(), enc.begin() + 8), "RTDBITS1");
  EXPECT_EQ(enc[8], 8);
  for (int i = 9; i < 16; ++i) EXPECT_EQ(enc[i], 0);
  EXPECT_EQ(enc[16], 0xB1);
}

TEST(BitstreamFile, RoundTripAnyLength) {
  const auto dir = rtd::testing::scratch_dir("io");
  for (std::size_t n : {0UL, 1UL, 7UL, 8UL, 9UL, 1000UL, 12345UL}) {
    const auto bits = splitmix_bits(n, n);
    EXPECT_EQ(decode_bitstream(encode_bitstream(bits)), bits);
    write_bitstream(dir / "x.bits", bits);
    EXPECT_EQ(read_bitstream(dir / "x.bits"), bits);
  }
}

TEST(BitstreamFile, RejectsCorruptFiles) {
  auto enc = encode_bitstream(bits_from_string("101"));
  auto bad_magic = enc;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_bitstream(bad_magic), IoError);
  auto short_payload = enc;
  short_payload.pop_back();
  EXPECT_THROW(decode_bitstream(short_payload), IoError);
  auto dirty_pad = enc;
  dirty_pad.back() |= 0x01;
  EXPECT_THROW(decode_bitstream(dirty_pad), IoError);
  EXPECT_THROW(read_bitstream("/nonexistent/dir/x.bits"), IoError);
}

TEST(Metadata, RoundTripAndSidecar) {
  Metadata m;
  m.set("seed", "42");
  m.set("config", "{\"a\": 1}");
  m.set("seed", "43");
  EXPECT_EQ(m.get("seed"), "43");
  EXPECT_EQ(m.entries().size(), 2U);
  const auto parsed = Metadata::parse(m.to_string());
  EXPECT_EQ(parsed.entries(), m.entries());
  EXPECT_THROW(Metadata::parse("no equals sign\n"), IoError);

  const auto dir = rtd::testing::scratch_dir("meta");
  write_metadata(dir / "out.bits", m);
  EXPECT_TRUE(std::filesystem::exists(dir / "out.bits.meta"));
  EXPECT_EQ(read_metadata(dir / "out.bits").entries(), m.entries());
  EXPECT_EQ(sidecar_path("a/b.tsv"), std::filesystem::path("a/b.tsv.meta"));
}

TEST(Format, Helpers) {
  EXPECT_EQ(hex64(0xABCULL), "0000000000000abc");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.515), "1.515");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
