#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtd::nist {

/// Linear complexity over GF(2): length of the shortest LFSR generating `bits`
/// (one byte per bit).
std::size_t berlekamp_massey(std::span<const std::uint8_t> bits);

/// Rows of a 32x32 bit matrix; bit 31 of row r is column 0.
using BitMatrix32 = std::array<std::uint32_t, 32>;

/// Rank over GF(2) by forward elimination.
int gf2_rank(BitMatrix32 rows);

/// All aperiodic m-bit templates (no proper border, so no two occurrences can
/// overlap), ascending. First template bit is the most significant.
std::vector<std::uint32_t> aperiodic_templates(unsigned m);

/// |DFT| of the +/-1 mapped sequence at frequencies 0 .. n/2 - 1.
std::vector<double> spectral_moduli(std::span<const std::uint8_t> bits);

}  // namespace rtd::nist
