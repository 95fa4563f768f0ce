#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rtdrng/bitstream.hpp"

namespace rtd::nist {

enum class TestId {
  Frequency,
  BlockFrequency,
  CumulativeSums,
  Runs,
  LongestRun,
  Rank,
  FFT,
  NonOverlappingTemplate,
  OverlappingTemplate,
  Universal,
  ApproximateEntropy,
  RandomExcursions,
  RandomExcursionsVariant,
  Serial,
  LinearComplexity,
};

inline constexpr std::array<TestId, 15> kAllTests = {
    TestId::Frequency,          TestId::BlockFrequency,          TestId::CumulativeSums,
    TestId::Runs,               TestId::LongestRun,              TestId::Rank,
    TestId::FFT,                TestId::NonOverlappingTemplate,  TestId::OverlappingTemplate,
    TestId::Universal,          TestId::ApproximateEntropy,      TestId::RandomExcursions,
    TestId::RandomExcursionsVariant, TestId::Serial,             TestId::LinearComplexity,
};

std::string_view test_name(TestId id);
std::optional<TestId> test_from_name(std::string_view name);

/// Battery configuration. The defaults are the reference run settings for
/// sequences of 10^6 bits.
struct TestParams {
  std::size_t n = 1'000'000;
  double alpha = 0.05;

  std::size_t block_frequency_m = 128;
  std::size_t longest_run_m = 10000;
  std::size_t longest_run_n = 100;
  unsigned nonoverlapping_m = 9;
  std::size_t nonoverlapping_block = 125000;
  std::size_t nonoverlapping_blocks = 8;
  unsigned overlapping_m = 9;
  std::size_t overlapping_block = 1032;
  std::size_t overlapping_blocks = 968;
  unsigned universal_l = 7;
  std::size_t universal_q = 1280;
  std::size_t universal_k = 141577;
  unsigned approx_entropy_m = 10;
  unsigned serial_m = 16;
  std::size_t linear_complexity_m = 500;
  std::size_t linear_complexity_n = 2000;

  /// Same block lengths, with block counts and the Universal (L, Q, K) and
  /// LongestRun M re-derived for sequences of `n` bits. Identity at 10^6.
  static TestParams for_length(std::size_t n);

  /// Throws ConfigError naming the first inconsistent field.
  void validate() const;
};

/// P-values of one test on one sequence. `applicable` is false for the
/// excursion tests when the walk has too few cycles; pvalues is then empty.
struct TestResult {
  TestId test;
  std::vector<double> pvalues;
  bool applicable = true;
};

/// Number of P-values (report rows) a test emits under `params`.
std::size_t statistic_count(TestId id, const TestParams& params);

TestResult run_test(TestId id, const TestParams& params, const BitStream& bits);
TestResult run_test(TestId id, const TestParams& params, std::span<const std::uint8_t> eps);

/// All 15 tests in kAllTests order.
std::vector<TestResult> run_battery(const TestParams& params, const BitStream& bits);

// Individual statistics. `eps` holds one byte (0 or 1) per bit; params are the
// test's own block settings.
double frequency(std::span<const std::uint8_t> eps);
double block_frequency(std::span<const std::uint8_t> eps, std::size_t m);
double cumulative_sums(std::span<const std::uint8_t> eps, bool backward);
double runs(std::span<const std::uint8_t> eps);
double longest_run(std::span<const std::uint8_t> eps, std::size_t m);
double rank(std::span<const std::uint8_t> eps);
double spectral(std::span<const std::uint8_t> eps);
std::vector<double> non_overlapping_template(std::span<const std::uint8_t> eps, unsigned m,
                                             std::size_t block, std::size_t blocks);
double overlapping_template(std::span<const std::uint8_t> eps, unsigned m, std::size_t block,
                            std::size_t blocks);
double universal(std::span<const std::uint8_t> eps, unsigned l, std::size_t q, std::size_t k);
double approximate_entropy(std::span<const std::uint8_t> eps, unsigned m);
std::optional<std::array<double, 8>> random_excursions(std::span<const std::uint8_t> eps);
std::optional<std::array<double, 18>> random_excursions_variant(std::span<const std::uint8_t> eps);
std::array<double, 2> serial(std::span<const std::uint8_t> eps, unsigned m);
double linear_complexity(std::span<const std::uint8_t> eps, std::size_t m, std::size_t blocks);

/// Class probabilities for the overlapping-template counts 0..4 and >= 5.
std::array<double, 6> overlapping_class_probabilities(unsigned m, std::size_t block);

}  // namespace rtd::nist
